#include "CLI11.hpp"
#include "rigidlab/antoine.hpp"
#include "rigidlab/example_a1.hpp"
#include "rigidlab/json_io.hpp"
#include "rigidlab/rigidity.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>

using namespace rigidlab;
using nlohmann::json;

namespace {

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("RIGIDLAB_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw ParameterError("RIGIDLAB_SEED is not an integer");
  }
  return cli_seed;
}

json certificate_json(const SeparationCertificate& cert) {
  json j;
  j["separation"] = separation_name(cert.tag);
  j["gap"] = cert.gap;
  if (cert.pair_a >= 0) j["pair"] = {cert.pair_a, cert.pair_b};
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

int cmd_bowen(const std::string& system_path, double tol,
              const std::string& out_path, std::uint64_t seed) {
  CIFS sys = parse_system(load_json_file(system_path), system_path);
  BowenResult b = bowen_parameter(sys, tol);
  json rep;
  rep["delta"] = b.delta;
  rep["pressure_residual"] = b.pressure_residual;
  rep["words_length"] = b.words_length;
  rep["exact_ratios"] = b.exact;
  rep["certificate"] = certificate_json(sys.certificate());
  if (sys.certificate().tag == Separation::FAIL)
    rep["warning"] =
        "separation FAIL: delta is the pressure root, not a dimension";
  std::string canonical = "bowen|" + system_path + "|" + std::to_string(tol);
  write_report(rep, out_path, seed, canonical);
  return 0;
}

int cmd_limitset(const std::string& system_path, int n, int depth,
                 double delta, std::uint64_t seed, const std::string& prefix) {
  CIFS sys = parse_system(load_json_file(system_path), system_path);
  if (delta < 0) delta = bowen_parameter(sys).delta;
  WeightedCloud cloud = sample_limit_set(sys, n, depth, delta, seed);
  write_cloud_csv(cloud, prefix + ".csv");
  write_cloud_ply(cloud, prefix + ".ply");
  return 0;
}

int cmd_rigidity(const std::string& cloud_path, int k, double sphere_tol,
                 const std::string& out_path, std::uint64_t seed) {
  WeightedCloud cloud = read_cloud_csv(cloud_path);
  RigidityThresholds th;
  th.sphere_tol = sphere_tol;
  RigidityReport r = dichotomy_report(cloud, k, th);
  json rep;
  rep["k"] = r.k;
  rep["dim_estimate"] = r.dim_estimate;
  rep["dim_stderr"] = r.dim_stderr;
  rep["sphere_residual"] =
      std::isfinite(r.sphere_residual) ? r.sphere_residual : -1.0;
  rep["sphere_tol"] = r.sphere_tol;
  rep["verdict"] = r.verdict;
  rep["scales"] = r.scales;
  std::string canonical =
      "rigidity|" + cloud_path + "|" + std::to_string(k) + "|" +
      std::to_string(sphere_tol);
  write_report(rep, out_path, seed, canonical);
  return 0;
}

int cmd_example_a1(double alpha, int K, std::uint64_t seed,
                   const std::string& out_path) {
  ExampleA1 ex = make_example_a1(alpha, K);
  json rep;
  rep["alpha"] = alpha;
  rep["K"] = K;
  rep["ambient_dim"] = ex.D;

  double mass_sup = ex.mass_distribution_sup(10000, 4e-3, 0.5, seed);
  double mass_bound = std::sqrt(2.0) / alpha * 1.05;
  rep["mass_distribution"] = {{"sup_ratio", mass_sup},
                              {"bound", mass_bound},
                              {"pass", mass_sup <= mass_bound}};

  std::vector<double> r2_contents;
  double r2_max = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    double c = ex.r2_projected_content(3, 5e-5, mix_seed(seed, 100 + trial));
    r2_contents.push_back(c);
    r2_max = std::max(r2_max, c);
  }
  rep["r2_projection"] = {{"contents", r2_contents},
                          {"max", r2_max},
                          {"bound", 0.1},
                          {"pass", r2_max <= 0.1}};

  double axis = ex.r1_axis_projected_content(1e-3);
  rep["r1_axis_projection"] = {{"content", axis},
                               {"pass", std::abs(axis - 1.0) <= 0.02}};

  double worst_gap = 0.0;
  std::vector<double> gaps;
  for (int trial = 0; trial < 10; ++trial) {
    double phi = (trial + 0.5) / 10.0 * (M_PI / 3.0);
    auto chk = ex.pseudorect_check(phi, 1e-3, mix_seed(seed, 200 + trial));
    gaps.push_back(chk.rel_gap);
    worst_gap = std::max(worst_gap, chk.rel_gap);
  }
  rep["pseudorect"] = {{"rel_gaps", gaps},
                       {"max", worst_gap},
                       {"bound", 0.10},
                       {"pass", worst_gap <= 0.10}};

  rep["bowen_r1"] = bowen_parameter(ex.cifs_r1).delta;
  rep["separation_r1"] = certificate_json(ex.cifs_r1.certificate());
  std::string canonical = "example-a1|" + std::to_string(alpha) + "|" +
                          std::to_string(K);
  write_report(rep, out_path, seed, canonical);
  return 0;
}

int cmd_antoine(int n, double rho, double R, double r,
                const std::string& out_path) {
  CIFS sys = make_antoine(n, rho, R, r);
  json j;
  j["maps"] = json::array();
  for (int a = 0; a < sys.alphabet_size(); ++a) {
    const auto* mc = dynamic_cast<const MobiusContraction*>(&sys.map(a));
    // reconstruct the similarity data from the Lorentz matrix
    const Matrix& m = mc->map().lorentz();
    double scale = 1.0 / m(0, 0);
    Matrix rot = m.bottomRightCorner(3, 3);
    Vector trans = m.block(2, 0, 3, 1) * scale;
    json spec;
    spec["type"] = "similarity";
    spec["scale"] = scale;
    spec["rotation"] = json::array();
    for (int i = 0; i < 3; ++i)
      spec["rotation"].push_back({rot(i, 0), rot(i, 1), rot(i, 2)});
    spec["translation"] = {trans(0), trans(1), trans(2)};
    j["maps"].push_back(spec);
  }
  j["seed_region"] = {{"type", "ball"},
                      {"center", {0.0, 0.0, 0.0}},
                      {"radius", R + r}};
  j["moran_dimension"] = sys.metadata("moran_dimension", 0.0);
  j["separation"] = separation_name(sys.certificate().tag);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParameterError("cannot open " + out_path);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_schottky(const std::string& group_path, int maxlen, double s,
                 std::uint64_t seed, const std::string& prefix) {
  SchottkyGroup g = parse_group(load_json_file(group_path));
  auto orbit = enumerate_orbit(g, maxlen);
  // orbit dump
  std::FILE* f = std::fopen((prefix + "_orbit.csv").c_str(), "wb");
  if (!f) throw ParameterError("cannot open orbit csv");
  std::fprintf(f, "word,displacement");
  for (int j = 0; j < g.dim(); ++j) std::fprintf(f, ",x%d", j);
  std::fprintf(f, "\n");
  for (const auto& e : orbit) {
    std::string w;
    for (size_t i = 0; i < e.word.size(); ++i) {
      if (i) w += '-';
      w += std::to_string(e.word[i]);
    }
    std::fprintf(f, "%s,%.17g", w.c_str(), e.displacement);
    for (int j = 0; j < g.dim(); ++j)
      std::fprintf(f, ",%.17g", e.image.base(j));
    std::fprintf(f, "\n");
  }
  std::fclose(f);

  auto est = exponent_from_orbit(orbit, maxlen);
  json rep;
  rep["delta_hat"] = est.delta_hat;
  rep["fit_residual"] = est.fit_residual;
  rep["shells_used"] = est.shells_used;
  rep["inconclusive"] = est.inconclusive;
  rep["shell_centers"] = est.shell_centers;
  rep["shell_counts"] = est.shell_counts;
  rep["orbit_size"] = orbit.size();
  if (s >= 0) rep["partial_sum"] = poincare_series_partial(orbit, s);
  std::string canonical = "schottky|" + group_path + "|" +
                          std::to_string(maxlen) + "|" + std::to_string(s);
  write_report(rep, prefix + "_exponent.json", seed, canonical);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for conformal IFS and Schottky groups"};
  app.require_subcommand(1);
  std::uint64_t seed = 20240801;
  int threads = 1;
  app.add_option("--seed", seed, "RNG seed (env RIGIDLAB_SEED overrides)");
  app.add_option("--threads", threads, "worker cap (outputs do not depend on it)");

  std::string system_path, cloud_path, group_path, out_path, prefix;
  double tol = 1e-12, delta = -1.0, sphere_tol = -1.0, s_param = -1.0;
  double alpha = 2.0, rho = 0.1, torus_R = 1.0, torus_r = 0.28;
  int n = 10000, depth = 20, k = 1, K = 12, links = 20, maxlen = 8;

  auto* bowen = app.add_subcommand("bowen", "Bowen parameter of a system");
  bowen->add_option("system", system_path)->required();
  bowen->add_option("--tol", tol);
  bowen->add_option("-o,--out", out_path = "bowen.json");

  auto* limitset = app.add_subcommand("limitset", "sample the attractor");
  limitset->add_option("system", system_path)->required();
  limitset->add_option("--n", n);
  limitset->add_option("--depth", depth);
  limitset->add_option("--delta", delta);
  limitset->add_option("-o,--out", prefix = "cloud");

  auto* rigidity = app.add_subcommand("rigidity", "dichotomy verdict");
  rigidity->add_option("cloud", cloud_path)->required();
  rigidity->add_option("--k", k);
  rigidity->add_option("--sphere-tol", sphere_tol);
  rigidity->add_option("-o,--out", out_path = "report.json");

  auto* a1 = app.add_subcommand("example-a1", "sequence-space bench");
  a1->add_option("--alpha", alpha);
  a1->add_option("--K", K);
  a1->add_option("-o,--out", out_path = "bench-report.json");

  auto* antoine = app.add_subcommand("antoine", "emit the necklace system");
  antoine->add_option("--n", links);
  antoine->add_option("--rho", rho);
  antoine->add_option("--R", torus_R);
  antoine->add_option("--r", torus_r);
  antoine->add_option("-o,--out", out_path = "antoine.json");

  auto* schottky = app.add_subcommand("schottky", "orbit + exponent estimate");
  schottky->add_option("group", group_path)->required();
  schottky->add_option("--maxlen", maxlen);
  schottky->add_option("--s", s_param);
  schottky->add_option("-o,--out", prefix = "schottky");

  // let --seed / --threads appear after the subcommand name too
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::uint64_t sd = effective_seed(seed);
    if (bowen->parsed())
      return cmd_bowen(system_path, tol, out_path, sd);
    if (limitset->parsed())
      return cmd_limitset(system_path, n, depth, delta, sd, prefix);
    if (rigidity->parsed())
      return cmd_rigidity(cloud_path, k, sphere_tol, out_path, sd);
    if (a1->parsed()) return cmd_example_a1(alpha, K, sd, out_path);
    if (antoine->parsed())
      return cmd_antoine(links, rho, torus_R, torus_r, out_path);
    if (schottky->parsed())
      return cmd_schottky(group_path, maxlen, s_param, sd, prefix);
  } catch (const ParameterError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

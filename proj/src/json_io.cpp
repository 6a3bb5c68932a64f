#include "rigidlab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace rigidlab {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is a 1-based offset into the text
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParameterError(path + ":" + std::to_string(line) + ":" +
                         std::to_string(col) + ": " + e.what());
  }
}

static Vector parse_vector(const json& a) {
  if (!a.is_array()) throw ParameterError("expected a JSON array of numbers");
  Vector v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v(i) = a[i].get<double>();
  return v;
}

static Matrix parse_matrix(const json& a) {
  if (!a.is_array() || a.empty())
    throw ParameterError("expected a JSON array of rows");
  Matrix m(a.size(), a[0].size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a[0].size())
      throw ParameterError("ragged rotation matrix");
    for (size_t j = 0; j < a[i].size(); ++j) m(i, j) = a[i][j].get<double>();
  }
  return m;
}

MobiusMap parse_map(const json& spec) {
  std::string type = spec.value("type", "");
  if (type == "similarity") {
    Vector b = parse_vector(spec.at("translation"));
    double scale = spec.value("scale", 1.0);
    Matrix rot = spec.contains("rotation")
                     ? parse_matrix(spec["rotation"])
                     : Matrix(Matrix::Identity(b.size(), b.size()));
    return MobiusMap::similarity(scale, rot, b);
  }
  if (type == "sphere_inversion") {
    return MobiusMap::sphere_inversion(Point(parse_vector(spec.at("center"))),
                                       spec.at("radius").get<double>());
  }
  if (type == "word") {
    const auto& factors = spec.at("factors");
    if (!factors.is_array() || factors.empty())
      throw ParameterError("word needs a nonempty factor list");
    MobiusMap m = parse_map(factors[0]);
    for (size_t i = 1; i < factors.size(); ++i)
      m = m.compose(parse_map(factors[i]));
    return m;
  }
  throw ParameterError("unknown map type '" + type + "'");
}

Region parse_region(const json& spec) {
  std::string type = spec.value("type", "");
  if (type == "ball")
    return Region::ball(parse_vector(spec.at("center")),
                        spec.at("radius").get<double>());
  if (type == "box")
    return Region::box(parse_vector(spec.at("min")),
                       parse_vector(spec.at("max")));
  throw ParameterError("unknown region type '" + type + "'");
}

CIFS parse_system(const json& spec, const std::string& id) {
  if (!spec.contains("maps") || !spec["maps"].is_array() ||
      spec["maps"].empty())
    throw ParameterError("system needs a nonempty 'maps' list");
  std::vector<ContractionPtr> maps;
  for (const auto& m : spec["maps"])
    maps.push_back(std::make_shared<MobiusContraction>(parse_map(m)));
  if (!spec.contains("seed_region"))
    throw ParameterError("system needs a 'seed_region'");
  return CIFS(std::move(maps), parse_region(spec["seed_region"]), id);
}

SchottkyGroup parse_group(const json& spec) {
  if (!spec.contains("generators") || !spec["generators"].is_array() ||
      spec["generators"].empty())
    throw ParameterError("group needs a nonempty 'generators' list");
  std::vector<MobiusMap> gens;
  for (const auto& g : spec["generators"]) gens.push_back(parse_map(g));
  const auto& regions = spec.contains("regions") ? spec["regions"] : json::array();
  if (regions.empty()) {
    if (gens.size() != 1)
      throw ParameterError("groups without regions must have one generator");
    return SchottkyGroup::elementary(gens[0]);
  }
  if (regions.size() != 2 * gens.size())
    throw ParameterError(
        "need two regions per generator (generator's own, then its "
        "inverse's)");
  std::vector<MobiusMap> letters;
  std::vector<OrientedSphere> spheres;
  for (size_t i = 0; i < gens.size(); ++i) {
    letters.push_back(gens[i]);
    letters.push_back(gens[i].inverse());
    for (int j = 0; j < 2; ++j) {
      const auto& r = regions[2 * i + j];
      spheres.push_back(OrientedSphere::ball(parse_vector(r.at("center")),
                                             r.at("radius").get<double>()));
    }
  }
  return SchottkyGroup(std::move(letters), std::move(spheres));
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) h = (h ^ c) * 1099511628211ULL;
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

void write_report(json report, const std::string& path, std::uint64_t seed,
                  const std::string& config_canonical) {
  report["tool_version"] = kToolVersion;
  report["seed"] = seed;
  report["config_hash"] = config_hash(config_canonical);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot open " + path + " for writing");
  out << report.dump(2) << "\n";
}

}  // namespace rigidlab

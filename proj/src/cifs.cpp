#include "rigidlab/cifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace rigidlab {

std::string separation_name(Separation s) {
  switch (s) {
    case Separation::SSC: return "SSC";
    case Separation::OSC: return "OSC";
    case Separation::FAIL: return "FAIL";
    default: return "UNCERTIFIED";
  }
}

CIFS::CIFS(std::vector<ContractionPtr> maps, Region seed, std::string id)
    : maps_(std::move(maps)), seed_(std::move(seed)), id_(std::move(id)) {
  validate();
  cert_ = check_separation(*this);
}

CIFS::CIFS(std::vector<ContractionPtr> maps, Region seed, std::string id,
           SeparationCertificate cert)
    : maps_(std::move(maps)),
      seed_(std::move(seed)),
      id_(std::move(id)),
      cert_(std::move(cert)) {
  validate();
}

void CIFS::validate() {
  if (maps_.empty()) throw ParameterError("IFS needs at least one map");
  for (const auto& m : maps_)
    if (m->dim() != seed_.dim())
      throw ParameterError("IFS map/seed dimension mismatch");
  double r = sup_ratio();
  if (!(r < 1.0))
    throw ParameterError("IFS is not uniformly contracting (sup ratio " +
                         std::to_string(r) + ")");
}

bool CIFS::all_exact_ratios() const {
  for (const auto& m : maps_)
    if (!m->exact_ratio()) return false;
  return true;
}

double CIFS::sup_ratio() const {
  double r = 0.0;
  for (const auto& m : maps_) r = std::max(r, m->sup_derivative(seed_));
  return r;
}

double CIFS::moran_dimension() const {
  return bowen_parameter(*this).delta;
}

void CIFS::set_metadata(std::string key, double value) {
  meta_.emplace_back(std::move(key), value);
}

double CIFS::metadata(const std::string& key, double fallback) const {
  for (const auto& kv : meta_)
    if (kv.first == key) return kv.second;
  return fallback;
}

SeparationCertificate check_separation(const CIFS& c) {
  SeparationCertificate cert;
  const int m = c.alphabet_size();
  Region bb = c.seed().bounding_ball();
  std::vector<Vector> centers(m);
  std::vector<double> radii(m);
  for (int a = 0; a < m; ++a) {
    if (!c.map(a).image_ball(bb.center, bb.radius, &centers[a], &radii[a])) {
      cert.tag = Separation::UNCERTIFIED;
      cert.note = "map " + std::to_string(a) +
                  " has no exact ball image; separation not certified";
      return cert;
    }
  }
  const double tol = 1e-12 * bb.radius;
  double min_gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      double gap = (centers[a] - centers[b]).norm() - radii[a] - radii[b];
      if (gap < min_gap) {
        min_gap = gap;
        cert.pair_a = a;
        cert.pair_b = b;
      }
    }
  cert.gap = m > 1 ? min_gap : 0.0;
  if (m == 1) {
    cert.tag = Separation::SSC;
    cert.note = "single branch";
  } else if (min_gap > tol) {
    cert.tag = Separation::SSC;
  } else if (min_gap >= -tol) {
    cert.tag = Separation::OSC;
    cert.note = "image regions touch";
  } else {
    cert.tag = Separation::FAIL;
    cert.note = "image regions overlap";
  }
  return cert;
}

namespace {

// sum of ||u_w'||^delta over words of length n, by prefix recursion on the
// composed Lorentz matrices
double word_sum_mobius(const CIFS& c, double delta, int n) {
  Region bb = c.seed().bounding_ball();
  const int m = c.alphabet_size();
  double total = 0.0;
  struct Frame { Matrix mat; int depth; };
  std::vector<Frame> todo;
  for (int a = m - 1; a >= 0; --a) {
    const auto* mc = dynamic_cast<const MobiusContraction*>(&c.map(a));
    if (!mc)
      throw ParameterError("finite-word pressure needs Mobius-backed maps");
    todo.push_back({mc->map().lorentz(), 1});
  }
  while (!todo.empty()) {
    Frame f = std::move(todo.back());
    todo.pop_back();
    if (f.depth == n) {
      double sup = mobius_sup_derivative_ball(f.mat, bb.center, bb.radius);
      total += std::pow(sup, delta);
      continue;
    }
    for (int a = m - 1; a >= 0; --a) {
      const auto* mc = dynamic_cast<const MobiusContraction*>(&c.map(a));
      todo.push_back({f.mat * mc->map().lorentz(), f.depth + 1});
    }
  }
  return total;
}

}  // namespace

double pressure(const CIFS& c, double delta, int n, std::int64_t word_budget) {
  if (delta < 0) throw ParameterError("pressure needs delta >= 0");
  if (n < 1) throw ParameterError("pressure needs n >= 1");
  if (c.all_exact_ratios()) {
    double s = 0.0;
    for (int a = 0; a < c.alphabet_size(); ++a)
      s += std::pow(c.map(a).ratio(), delta);
    return std::log(s);
  }
  double words = std::pow(static_cast<double>(c.alphabet_size()), n);
  if (words * n > static_cast<double>(word_budget))
    throw ResourceError(
        "pressure word budget exceeded; reduce n or the alphabet");
  return std::log(word_sum_mobius(c, delta, n)) / n;
}

BowenResult bowen_parameter(const CIFS& c, double tol) {
  if (!(tol > 0)) throw ParameterError("bowen tolerance must be positive");
  BowenResult out;
  out.exact = c.all_exact_ratios();
  int n = 1;
  if (!out.exact) {
    // deepest word level within budget
    n = 1;
    while (std::pow(c.alphabet_size(), n + 1) * (n + 1) <= 2'000'000 && n < 8)
      ++n;
  }
  out.words_length = n;
  auto P = [&](double delta) { return pressure(c, delta, n); };
  double p0 = P(0.0);
  if (p0 <= tol) {  // single branch (or empty pressure at zero)
    out.delta = 0.0;
    out.pressure_residual = p0;
    return out;
  }
  double hi = 1.0;
  while (P(hi) > 0) {
    hi *= 2.0;
    if (hi > 1e6)
      throw BracketError("no sign change for the pressure up to delta=1e6");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > tol * 0.5; ++it) {
    double mid = 0.5 * (lo + hi);
    (P(mid) > 0 ? lo : hi) = mid;
  }
  out.delta = 0.5 * (lo + hi);
  out.pressure_residual = P(out.delta);
  return out;
}

Vector code_point(const CIFS& c, const SymbolicWord& w,
                  const Vector& basepoint) {
  if (!c.seed().contains(basepoint))
    throw ParameterError("coding basepoint must lie in the seed region");
  Vector x = basepoint;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it < 0 || *it >= c.alphabet_size())
      throw ParameterError("word letter out of range");
    x = c.map(*it).apply(x);
  }
  return x;
}

double cylinder_weight(const CIFS& c, const SymbolicWord& w, double delta) {
  double weight = 1.0;
  for (int a : w) {
    if (a < 0 || a >= c.alphabet_size())
      throw ParameterError("word letter out of range");
    double r = c.map(a).exact_ratio() ? c.map(a).ratio()
                                      : c.map(a).sup_derivative(c.seed());
    weight *= std::pow(r, delta);
  }
  return weight;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

WeightedCloud sample_limit_set(const CIFS& c, int n_points, int depth,
                               double delta, std::uint64_t rng_seed) {
  if (c.certificate().tag == Separation::FAIL)
    throw ParameterError(
        "refusing to sample: separation certificate is FAIL, weights would "
        "not represent a conformal measure");
  if (n_points <= 0 || depth <= 0)
    throw ParameterError("sample_limit_set needs positive n and depth");
  const int m = c.alphabet_size();
  std::vector<double> cum(m);
  double s = 0.0;
  for (int a = 0; a < m; ++a) {
    double r = c.map(a).exact_ratio() ? c.map(a).ratio()
                                      : c.map(a).sup_derivative(c.seed());
    s += std::pow(r, delta);
    cum[a] = s;
  }
  for (int a = 0; a < m; ++a) cum[a] /= s;

  WeightedCloud cloud;
  cloud.pts = Matrix(n_points, c.dim());
  cloud.weights = Vector::Constant(n_points, 1.0 / n_points);
  cloud.meta.system_id = c.id();
  cloud.meta.depth = depth;
  cloud.meta.seed = rng_seed;
  cloud.meta.total_mass = 1.0;
  cloud.meta.resolution =
      c.seed().diam() * std::pow(c.sup_ratio(), depth);

  const Vector base = c.seed().midpoint();
  const int chunk = 1024;  // substream per chunk: batching cannot change output
  SymbolicWord w(depth);
  for (int lo = 0; lo < n_points; lo += chunk) {
    std::mt19937_64 rng(mix_seed(rng_seed, lo / chunk));
    const int hi = std::min(lo + chunk, n_points);
    for (int i = lo; i < hi; ++i) {
      for (int j = 0; j < depth; ++j) {
        double u = double(rng() >> 11) * 0x1.0p-53;
        int a = int(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
        if (a >= m) a = m - 1;
        w[j] = a;
      }
      cloud.pts.row(i) = code_point(c, w, base).transpose();
    }
  }
  return cloud;
}

}  // namespace rigidlab

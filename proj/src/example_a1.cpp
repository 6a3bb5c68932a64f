#include "rigidlab/example_a1.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace rigidlab {

namespace {
int level_index(int k, int i) { return (1 << k) - 1 + i; }

double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng), u2 = uniform01(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}
}  // namespace

ShiftSimilarity::ShiftSimilarity(int a, bool with_e0, int K, double alpha)
    : a_(a), with_e0_(with_e0), K_(K), alpha_(alpha) {
  if (a != 0 && a != 1) throw ParameterError("branch must be 0 or 1");
  if (K < 2) throw ParameterError("truncation level must be >= 2");
}

int ShiftSimilarity::dim() const { return (1 << (K_ + 1)) - 1; }

Vector ShiftSimilarity::apply(const Vector& x) const {
  Vector y = Vector::Zero(dim());
  y(0) = 0.5 * x(0) + (with_e0_ ? 0.5 * a_ : 0.0);
  // shift levels 1..K-1 down by one; level K is beyond the truncation
  for (int k = 1; k < K_; ++k) {
    int src = level_index(k, 0), dst = level_index(k + 1, a_ << k);
    for (int i = 0; i < (1 << k); ++i) y(dst + i) += 0.5 * x(src + i);
  }
  y(level_index(1, a_)) += 0.5 * alpha_;
  return y;
}

ExampleA1 make_example_a1(double alpha, int K) {
  if (!(alpha > std::sqrt(2.0)))
    throw ParameterError("example A.1 needs alpha > sqrt(2)");
  if (K < 2 || K > 20) throw ParameterError("truncation level K out of range");
  const int D = (1 << (K + 1)) - 1;
  Region seed =
      Region::ball(Vector::Zero(D), std::sqrt(1.0 + alpha * alpha) + 0.1);

  // separation witness: branch a paints coordinate (1,a) with alpha/2 and
  // leaves (1,1-a) at zero, so the two branch images are alpha/sqrt(2) apart
  SeparationCertificate cert;
  cert.tag = Separation::SSC;
  cert.gap = alpha / std::sqrt(2.0);
  cert.pair_a = 0;
  cert.pair_b = 1;
  cert.note = "level-1 coordinate witness";

  std::vector<ContractionPtr> m1{
      std::make_shared<ShiftSimilarity>(0, true, K, alpha),
      std::make_shared<ShiftSimilarity>(1, true, K, alpha)};
  std::vector<ContractionPtr> m2{
      std::make_shared<ShiftSimilarity>(0, false, K, alpha),
      std::make_shared<ShiftSimilarity>(1, false, K, alpha)};
  CIFS c1(std::move(m1), seed, "a1-r1", cert);
  CIFS c2(std::move(m2), seed, "a1-r2", cert);
  c1.set_metadata("truncation_tail", alpha * std::pow(2.0, -K));
  c2.set_metadata("truncation_tail", alpha * std::pow(2.0, -K));
  return ExampleA1{alpha, K, D, std::move(c1), std::move(c2)};
}

SparseVec ExampleA1::curve_point(double t) const {
  SparseVec p;
  p.reserve(K + 1);
  p.emplace_back(0, t);
  for (int k = 1; k <= K; ++k) {
    int cell = std::min(int(std::ldexp(t, k)), (1 << k) - 1);
    p.emplace_back(level_index(k, cell), alpha * std::ldexp(1.0, -k));
  }
  return p;
}

// first dyadic level (<= K) at which s and t live in different cells
static int first_disagreement(double s, double t, int K) {
  int a = std::min(int(std::ldexp(s, K)), (1 << K) - 1);
  int b = std::min(int(std::ldexp(t, K)), (1 << K) - 1);
  int x = a ^ b;
  if (x == 0) return K + 1;
  int h = 31 - __builtin_clz(unsigned(x));
  return K - h;
}

double ExampleA1::curve_dist(double s, double t) const {
  double d2 = (t - s) * (t - s);
  int k1 = first_disagreement(s, t, K);
  if (k1 <= K)
    d2 += (8.0 / 3.0) * alpha * alpha *
          (std::pow(4.0, -k1) - std::pow(4.0, -(K + 1)));
  return std::sqrt(d2);
}

double ExampleA1::mass_distribution_sup(int n_queries, double rmin,
                                        double rmax,
                                        std::uint64_t seed) const {
  const int M = 1 << 16;
  std::mt19937_64 rng(mix_seed(seed, 0));
  const double tail = (8.0 / 3.0) * alpha * alpha * std::pow(4.0, -(K + 1));
  double sup = 0.0;
  for (int q = 0; q < n_queries; ++q) {
    double s = uniform01(rng);
    double r = rmin * std::pow(rmax / rmin, uniform01(rng));
    double r2 = r * r;
    int lo = std::max(0, int(std::ceil((s - r) * M - 0.5)));
    int hi = std::min(M - 1, int(std::floor((s + r) * M + 0.5)));
    int count = 0;
    int sa = std::min(int(std::ldexp(s, K)), (1 << K) - 1);
    for (int i = lo; i <= hi; ++i) {
      double t = (i + 0.5) / M;
      double d2 = (t - s) * (t - s);
      int b = i >> (16 - K);
      int x = sa ^ b;
      if (x != 0) {
        int k1 = K - (31 - __builtin_clz(unsigned(x)));
        d2 += (8.0 / 3.0) * alpha * alpha * std::pow(4.0, -k1) - tail;
      }
      if (d2 <= r2) ++count;
    }
    sup = std::max(sup, (double(count) / M) / r);
  }
  return sup;
}

namespace {
struct Cell3 {
  long long a, b, c;
  bool operator<(const Cell3& o) const {
    return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
  }
};
}  // namespace

double ExampleA1::r2_projected_content(int m, double delta,
                                       std::uint64_t seed) const {
  if (m < 1 || m > 3) throw ParameterError("projection dimension must be 1..3");
  std::mt19937_64 rng(mix_seed(seed, 1));
  // orthonormal m-frame from Gaussian columns
  std::vector<Vector> cols(m, Vector::Zero(D));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < D; ++i) cols[j](i) = gaussian(rng);
    for (int l = 0; l < j; ++l) cols[j] -= cols[l].dot(cols[j]) * cols[l];
    cols[j].normalize();
  }
  std::set<Cell3> cells;
  const int n = 1 << K;
  for (int p = 0; p < n; ++p) {
    double y[3] = {0, 0, 0};
    for (int k = 1; k <= K; ++k) {
      int idx = level_index(k, p >> (K - k));
      double v = alpha * std::ldexp(1.0, -k);
      for (int j = 0; j < m; ++j) y[j] += v * cols[j](idx);
    }
    Cell3 c{0, 0, 0};
    c.a = (long long)std::floor(y[0] / delta);
    if (m > 1) c.b = (long long)std::floor(y[1] / delta);
    if (m > 2) c.c = (long long)std::floor(y[2] / delta);
    cells.insert(c);
  }
  return double(cells.size()) * delta;
}

double ExampleA1::r1_axis_projected_content(double delta) const {
  const int M = 1 << 16;
  std::set<long long> cells;
  for (int i = 0; i < M; ++i)
    cells.insert((long long)std::floor(((i + 0.5) / M) / delta));
  return double(cells.size()) * delta;
}

ExampleA1::PseudorectCheck ExampleA1::pseudorect_check(
    double phi, double delta, std::uint64_t seed) const {
  std::mt19937_64 rng(mix_seed(seed, 2));
  Vector w(D);
  for (int i = 0; i < D; ++i) w(i) = gaussian(rng);
  w(0) = 0.0;
  w.normalize();
  const double cph = std::cos(phi), sph = std::sin(phi);
  const int M = 1 << 16;
  // occupied cells with one representative parameter each; collisions are
  // same-cell pairs that are far apart along the curve
  std::map<long long, std::pair<double, bool>> rep;  // cell -> (t, flagged)
  const double inj_tol = 150.0 * delta;
  for (int i = 0; i < M; ++i) {
    double t = (i + 0.5) / M;
    double proj = cph * t;
    for (int k = 1; k <= K; ++k) {
      int cell = std::min(int(std::ldexp(t, k)), (1 << k) - 1);
      proj += sph * alpha * std::ldexp(1.0, -k) * w(level_index(k, cell));
    }
    long long cell = (long long)std::floor(proj / delta);
    auto it = rep.find(cell);
    if (it == rep.end())
      rep.emplace(cell, std::make_pair(t, false));
    // separation is measured along the coding parameter: the truncated curve
    // jumps at dyadic boundaries, so parameters just across a boundary are
    // far in the curve metric while the projection only backtracks locally.
    // a genuine fold revisits a cell from a distant stretch of parameters.
    else if (std::abs(it->second.first - t) > inj_tol)
      it->second.second = true;
  }
  int collisions = 0;
  for (const auto& kv : rep)
    if (kv.second.second) ++collisions;
  // a genuine fold shows up across a positive fraction of cells
  if (collisions > 0.10 * double(rep.size()))
    throw DegeneracyError(
        "projection not injective at this scale: " +
        std::to_string(collisions) + " colliding cells of " +
        std::to_string(rep.size()));
  PseudorectCheck out;
  out.phi = phi;
  out.lhs = double(rep.size()) * delta;
  out.rhs = cph;  // metric determinant of the line pair, times unit mass
  out.rel_gap = std::abs(out.lhs - out.rhs) / std::max(out.rhs, 1e-12);
  return out;
}

}  // namespace rigidlab

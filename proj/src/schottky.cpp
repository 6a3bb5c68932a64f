#include "rigidlab/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rigidlab {

SchottkyGroup::SchottkyGroup(std::vector<MobiusMap> letter_maps,
                             std::vector<OrientedSphere> regions)
    : letters_(std::move(letter_maps)), regions_(std::move(regions)) {
  if (letters_.empty() || letters_.size() % 2 != 0)
    throw ParameterError("letters must come in inverse pairs");
  if (regions_.size() != letters_.size())
    throw ParameterError("need one region per letter");
  d_ = letters_[0].dim();
  for (const auto& m : letters_)
    if (m.dim() != d_) throw ParameterError("generator dimension mismatch");
  for (size_t i = 0; i + 1 < letters_.size(); i += 2) {
    MobiusMap check = letters_[i].compose(letters_[i + 1]);
    if (!check.approx_equal(MobiusMap::identity(d_), 1e-8))
      throw ParameterError("letters " + std::to_string(i) + "," +
                           std::to_string(i + 1) + " are not inverse to each other");
  }
  certify_ping_pong();
}

SchottkyGroup SchottkyGroup::elementary(const MobiusMap& g) {
  SchottkyGroup out;
  out.d_ = g.dim();
  out.letters_ = {g, g.inverse()};
  return out;
}

SchottkyGroup SchottkyGroup::from_circle_pairs(
    const std::vector<std::pair<Vector, double>>& a_circles,
    const std::vector<std::pair<Vector, double>>& b_circles) {
  if (a_circles.size() != b_circles.size() || a_circles.empty())
    throw ParameterError("need matching nonempty circle lists");
  std::vector<MobiusMap> letters;
  std::vector<OrientedSphere> regions;
  for (size_t i = 0; i < a_circles.size(); ++i) {
    MobiusMap inv_a = MobiusMap::sphere_inversion(Point(a_circles[i].first),
                                                  a_circles[i].second);
    MobiusMap inv_b = MobiusMap::sphere_inversion(Point(b_circles[i].first),
                                                  b_circles[i].second);
    MobiusMap g = inv_b.compose(inv_a);
    letters.push_back(g);
    letters.push_back(g.inverse());
    regions.push_back(
        OrientedSphere::ball(b_circles[i].first, b_circles[i].second));
    regions.push_back(
        OrientedSphere::ball(a_circles[i].first, a_circles[i].second));
  }
  return SchottkyGroup(std::move(letters), std::move(regions));
}

void SchottkyGroup::certify_ping_pong() {
  const int n = n_letters();
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      if (!regions_disjoint(regions_[s], regions_[t], 1e-9))
        throw ParameterError("ping-pong regions " + std::to_string(s) + " and " +
                             std::to_string(t) + " are not disjoint");
  for (int s = 0; s < n; ++s) {
    OrientedSphere outside_partner = regions_[inverse_letter(s)].complement();
    OrientedSphere img = map_sphere(letters_[s], outside_partner);
    if (!region_contained(img, regions_[s], 1e-9))
      throw ParameterError("letter " + std::to_string(s) +
                           " fails ping-pong containment");
  }
}

HalfSpacePoint SchottkyGroup::basepoint() const {
  return HalfSpacePoint(1.0, Vector::Zero(d_));
}

std::vector<OrbitEntry> enumerate_orbit(const SchottkyGroup& g,
                                        int max_word_len,
                                        std::int64_t budget) {
  const int n = g.n_letters();
  // total reduced words: 1 + sum 2m(2m-1)^(k-1)
  double total = 1;
  double shell = n;
  for (int k = 1; k <= max_word_len; ++k) {
    total += shell;
    shell *= (n - 1);
    if (total > double(budget))
      throw ResourceError("orbit word budget exceeded at length " +
                          std::to_string(k));
  }

  std::vector<Matrix> ext(n);
  for (int s = 0; s < n; ++s) ext[s] = poincare_extension_matrix(g.letter(s));
  const HalfSpacePoint o = g.basepoint();

  std::vector<OrbitEntry> out;
  out.reserve(size_t(total));
  out.push_back({{}, o, 0.0});

  struct Node {
    std::vector<int> word;
    Matrix mat;
  };
  std::vector<Node> frontier;
  for (int s = 0; s < n; ++s) frontier.push_back({{s}, ext[s]});
  for (int len = 1; len <= max_word_len; ++len) {
    std::vector<Node> next;
    for (auto& node : frontier) {
      HalfSpacePoint img = halfspace_apply_matrix(node.mat, o);
      out.push_back({node.word, img, hyperbolic_distance(o, img)});
      if (len < max_word_len) {
        int last = node.word.back();
        for (int s = 0; s < n; ++s) {
          if (s == SchottkyGroup::inverse_letter(last)) continue;
          Node child{node.word, node.mat * ext[s]};
          child.word.push_back(s);
          next.push_back(std::move(child));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

double poincare_series_partial(const std::vector<OrbitEntry>& orbit,
                               double s) {
  if (s < 0) throw ParameterError("poincare series needs s >= 0");
  double sum = 0.0;
  for (const auto& e : orbit) sum += std::exp(-s * e.displacement);
  return sum;
}

double poincare_series_partial(const SchottkyGroup& g, double s,
                               int max_word_len) {
  return poincare_series_partial(enumerate_orbit(g, max_word_len), s);
}

ExponentEstimate exponent_from_orbit(const std::vector<OrbitEntry>& orbit,
                                     int max_word_len, double shell_width) {
  ExponentEstimate out;
  std::vector<double> deepest;
  double dmax = 0.0;
  for (const auto& e : orbit) {
    if (int(e.word.size()) == max_word_len) deepest.push_back(e.displacement);
    dmax = std::max(dmax, e.displacement);
  }
  if (deepest.empty()) {
    out.inconclusive = true;
    return out;
  }
  std::sort(deepest.begin(), deepest.end());
  // horizon: below this displacement the enumeration has seen everything
  double cert = deepest[size_t(0.05 * double(deepest.size() - 1))];

  int n_shells = int(dmax / shell_width) + 1;
  std::vector<std::int64_t> counts(n_shells, 0);
  for (const auto& e : orbit) {
    if (e.word.empty()) continue;
    int j = int(e.displacement / shell_width);
    if (j >= 0 && j < n_shells) ++counts[j];
  }
  std::vector<double> xs, ys;
  for (int j = 0; j < n_shells; ++j) {
    double lo = j * shell_width, hi = (j + 1) * shell_width;
    if (lo < 3.0) continue;       // drop the first shells
    if (hi > cert) continue;      // beyond the certified horizon
    if (counts[j] <= 0) continue;
    xs.push_back(lo + 0.5 * shell_width);
    ys.push_back(std::log(double(counts[j])));
    out.shell_centers.push_back(lo + 0.5 * shell_width);
    out.shell_counts.push_back(counts[j]);
  }
  out.shells_used = int(xs.size());
  if (out.shells_used < 4) {
    out.inconclusive = true;
    return out;
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  out.delta_hat = sxy / sxx;
  double ss = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (my + out.delta_hat * (xs[i] - mx));
    ss += r * r;
  }
  out.fit_residual = std::sqrt(ss / xs.size());
  return out;
}

ExponentEstimate poincare_exponent_estimate(const SchottkyGroup& g,
                                            int max_word_len) {
  return exponent_from_orbit(enumerate_orbit(g, max_word_len), max_word_len);
}

WeightedCloud boundary_cloud(const SchottkyGroup& g, int max_word_len) {
  auto orbit = enumerate_orbit(g, max_word_len);
  auto est = exponent_from_orbit(orbit, max_word_len);
  double delta = est.inconclusive ? 0.0 : std::max(0.0, est.delta_hat);
  std::vector<const OrbitEntry*> deep;
  for (const auto& e : orbit)
    if (int(e.word.size()) == max_word_len) deep.push_back(&e);
  WeightedCloud c;
  c.pts = Matrix(deep.size(), g.dim());
  c.weights = Vector(deep.size());
  for (size_t i = 0; i < deep.size(); ++i) {
    c.pts.row(i) = deep[i]->image.base.transpose();
    c.weights(i) = std::exp(-delta * deep[i]->displacement);
  }
  double s = c.weights.sum();
  if (s > 0) c.weights /= s;
  c.meta.system_id = "schottky";
  c.meta.depth = max_word_len;
  c.meta.total_mass = 1.0;
  return c;
}

RadialVerdict is_radial_witness(const SchottkyGroup& g, const Vector& p,
                                const std::vector<OrbitEntry>& orbit,
                                double C) {
  (void)g;
  if (!(C > 0)) throw ParameterError("radial constant must be positive");
  RadialVerdict v;
  // per length: best (lowest) qualifying orbit point
  std::map<int, const OrbitEntry*> best;
  for (const auto& e : orbit) {
    if (e.word.empty()) continue;
    double ratio = (e.image.base - p).norm() / e.image.height;
    v.best_ratio = std::min(v.best_ratio, ratio);
    if (ratio > C) continue;
    auto it = best.find(int(e.word.size()));
    if (it == best.end() || e.image.height < it->second->image.height)
      best[int(e.word.size())] = &e;
  }
  double last_height = std::numeric_limits<double>::infinity();
  for (const auto& kv : best) {
    if (kv.second->image.height <= 0.5 * last_height) {
      v.witness_words.push_back(kv.second->word);
      last_height = kv.second->image.height;
    }
  }
  v.radial = v.witness_words.size() >= 5;
  v.depth_limited = true;
  return v;
}

}  // namespace rigidlab

#pragma once

#include "rigidlab/cloud.hpp"
#include "rigidlab/halfspace.hpp"
#include "rigidlab/mobius.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace rigidlab {

// Free group of Mobius maps with a ping-pong certificate. Letters come in
// inverse pairs (2i, 2i+1); letter s owns region regions[s] and must map the
// complement of its partner's region strictly inside its own.
class SchottkyGroup {
 public:
  // generic constructor from explicit generators + their regions
  SchottkyGroup(std::vector<MobiusMap> letter_maps,
                std::vector<OrientedSphere> regions);
  // elementary group <g> with no region bookkeeping (g loxodromic similarity)
  static SchottkyGroup elementary(const MobiusMap& g);
  // classical construction: generator i is the composition of inversions in
  // circle B_i after circle A_i; region of g_i is B_i, of g_i^-1 is A_i
  static SchottkyGroup from_circle_pairs(
      const std::vector<std::pair<Vector, double>>& a_circles,
      const std::vector<std::pair<Vector, double>>& b_circles);

  int dim() const { return d_; }
  int n_letters() const { return static_cast<int>(letters_.size()); }
  int n_pairs() const { return n_letters() / 2; }
  const MobiusMap& letter(int s) const { return letters_[s]; }
  static int inverse_letter(int s) { return s ^ 1; }
  bool has_regions() const { return !regions_.empty(); }
  const OrientedSphere& region(int s) const { return regions_[s]; }
  HalfSpacePoint basepoint() const;  // o = (1, 0)

 private:
  SchottkyGroup() = default;
  void certify_ping_pong();
  std::vector<MobiusMap> letters_;
  std::vector<OrientedSphere> regions_;
  int d_ = 0;
};

struct OrbitEntry {
  std::vector<int> word;  // reduced letters, empty = identity
  HalfSpacePoint image;   // extension applied to the basepoint
  double displacement;    // dist_H(o, g(o)), overflow-safe
};

// all reduced words of length <= max_word_len, identity first, then ordered
// by (length, lexicographic)
std::vector<OrbitEntry> enumerate_orbit(const SchottkyGroup& g,
                                        int max_word_len,
                                        std::int64_t budget = 2'000'000);

double poincare_series_partial(const SchottkyGroup& g, double s,
                               int max_word_len);
double poincare_series_partial(const std::vector<OrbitEntry>& orbit, double s);

struct ExponentEstimate {
  double delta_hat = 0.0;
  double fit_residual = 0.0;
  int shells_used = 0;
  bool inconclusive = false;
  std::vector<double> shell_centers;
  std::vector<std::int64_t> shell_counts;
};
// growth rate of displacement-shell counts (width 1.0, first 3 shells
// dropped, shells past the enumeration horizon excluded)
ExponentEstimate poincare_exponent_estimate(const SchottkyGroup& g,
                                            int max_word_len);
ExponentEstimate exponent_from_orbit(const std::vector<OrbitEntry>& orbit,
                                     int max_word_len, double shell_width = 1.0);

WeightedCloud boundary_cloud(const SchottkyGroup& g, int max_word_len);

struct RadialVerdict {
  bool radial = false;
  bool depth_limited = true;
  double best_ratio = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> witness_words;
};
// look for orbit points converging to p conically: ratio |base - p| / height
// <= C, >= 5 witnesses at strictly increasing word lengths with heights
// halving between consecutive witnesses
RadialVerdict is_radial_witness(const SchottkyGroup& g, const Vector& p,
                                const std::vector<OrbitEntry>& orbit,
                                double C);

}  // namespace rigidlab

#pragma once

#include "rigidlab/cifs.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace rigidlab {

// Two-branch shift IFS on the truncated sequence space. Coordinates:
// e0 -> index 0, e_{k,i} -> 2^k - 1 + i (1 <= k <= K, 0 <= i < 2^k).
// Branch a (a = 0 or 1):
//   x |-> (1/2)(a e0 + alpha e_{1,a}) + (1/2) S_a x        (with_e0)
//   x |-> (1/2) alpha e_{1,a} + (1/2) S_a x                (without e0)
// where S_a fixes e0, sends e_{k,i} to e_{k+1, 2^k a + i}, and drops level K.
class ShiftSimilarity : public ContractionMap {
 public:
  ShiftSimilarity(int a, bool with_e0, int K, double alpha);

  int dim() const override;
  Vector apply(const Vector& x) const override;
  double derivative_scale(const Vector&) const override { return 0.5; }
  double sup_derivative(const Region&) const override { return 0.5; }
  bool exact_ratio() const override { return true; }
  double ratio() const override { return 0.5; }

 private:
  int a_;
  bool with_e0_;
  int K_;
  double alpha_;
};

using SparseVec = std::vector<std::pair<int, double>>;

// The curve R1 and Cantor set R2 of the truncated construction, with the
// closed-form metric their dyadic structure allows.
struct ExampleA1 {
  double alpha;
  int K;
  int D;  // ambient dimension 2^(K+1) - 1
  CIFS cifs_r1;
  CIFS cifs_r2;

  // F(t) = t e0 + alpha * sum_k 2^-k e_{k, floor(2^k t)}
  SparseVec curve_point(double t) const;
  // ||F(t) - F(s)||, exact for the truncated curve
  double curve_dist(double s, double t) const;

  // sup over random (center, radius) queries of mu1(B(F(s), r)) / r,
  // mu1 = arclength parameter measure, radius log-uniform in [rmin, rmax]
  double mass_distribution_sup(int n_queries, double rmin, double rmax,
                               std::uint64_t seed) const;

  // box-count 1-content of the projection of R2 (all 2^K truncated points)
  // onto a random m-dimensional subspace, at cell size delta
  double r2_projected_content(int m, double delta, std::uint64_t seed) const;

  // 1-content of the projection of R1 onto span(e0)
  double r1_axis_projected_content(double delta) const;

  struct PseudorectCheck {
    double lhs, rhs, rel_gap;
    double phi;
  };
  // identity check against the line V = cos(phi) e0 + sin(phi) w, random
  // unit w orthogonal to e0; tangent field is constant span(e0)
  PseudorectCheck pseudorect_check(double phi, double delta,
                                   std::uint64_t seed) const;
};

ExampleA1 make_example_a1(double alpha, int K);

}  // namespace rigidlab

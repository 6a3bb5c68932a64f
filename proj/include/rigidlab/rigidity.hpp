#pragma once

#include "rigidlab/cloud.hpp"
#include "rigidlab/subspace.hpp"

#include <string>
#include <vector>

namespace rigidlab {

struct BoxDimResult {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::vector<double> scales;
  std::vector<double> counts;  // jitter-averaged occupied-cell counts
};
// least-squares slope of log N(eps) vs log(1/eps); dyadic grids anchored at
// the bounding-box corner, three anchor jitters averaged
BoxDimResult box_dimension(const WeightedCloud& cloud,
                           const std::vector<double>& scales);

// max over the radii of weight(B(x,r)) / r^delta
double upper_density(const WeightedCloud& cloud, const Vector& x, double delta,
                     const std::vector<double>& radii);

// zero set of (d-k) linear forms <iota(x), w_j>_Q with Q(w_j) > 0
struct GeneralizedSphere {
  Matrix normals;  // (d+2) x (d-k)
  bool q_normalized = false;
};

struct SphereFit {
  GeneralizedSphere sphere;
  double residual = 0.0;
  bool q_degenerate = false;  // Q-normalization failed; Euclidean fallback
  bool is_plane = false;      // passes through infinity (k = d-1 only)
  Vector center;              // k = d-1, genuine sphere only
  double radius = 0.0;
};
SphereFit fit_generalized_sphere(const WeightedCloud& cloud, int k);

struct TangentEstimate {
  Subspace plane;
  double leak_ratio = 0.0;
  bool inconclusive = false;
  int n_ball = 0;
};
TangentEstimate local_tangent_estimate(const WeightedCloud& cloud,
                                       const Vector& p, int k, double r,
                                       double eps);

// box-count k-content of the projection onto V at cell size `scale`
// (scale <= 0 uses twice the cloud's recorded resolution)
double projected_measure_estimate(const WeightedCloud& cloud,
                                  const Subspace& v, int k,
                                  double scale = 0.0);

struct PseudorectResult {
  double lhs = 0.0, rhs = 0.0, rel_gap = 0.0;
  int colliding_cells = 0, occupied_cells = 0;
};
// change-of-variables identity for a cloud with constant tangent plane l0;
// requires the projection to be essentially injective at the given scale
PseudorectResult pseudorect_identity_check(const WeightedCloud& cloud,
                                           const Subspace& l0,
                                           const Subspace& v, double scale,
                                           double inj_tol = 0.0,
                                           double collision_frac = 0.05);

struct RigidityThresholds {
  double sphere_tol = -1.0;  // < 0: use 1e-6 * cloud diameter
  std::vector<double> scales;  // empty: derived from diameter/resolution
};

struct RigidityReport {
  int k = 0;
  double dim_estimate = 0.0;
  double dim_stderr = 0.0;
  double sphere_residual = 0.0;
  std::string verdict;  // SPHERE | FRACTAL | INCONCLUSIVE
  double sphere_tol = 0.0;
  std::vector<double> scales;
  std::uint64_t seed = 0;
};
RigidityReport dichotomy_report(const WeightedCloud& cloud, int k,
                                const RigidityThresholds& thresholds = {});

}  // namespace rigidlab

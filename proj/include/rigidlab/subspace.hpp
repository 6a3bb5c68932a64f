#pragma once

#include "rigidlab/core.hpp"

#include <vector>

namespace rigidlab {

// Linear subspace of R^d as a d x k orthonormal frame (k = 0 allowed).
class Subspace {
 public:
  Subspace(Matrix frame, int d);  // columns assumed orthonormal
  static Subspace zero(int d) { return Subspace(Matrix::Zero(d, 0), d); }
  static Subspace span(const std::vector<Vector>& vectors, int d);
  static Subspace coordinate_axes(int d, const std::vector<int>& axes);

  int ambient_dim() const { return d_; }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const Matrix& frame() const { return frame_; }

  Vector project(const Vector& x) const;
  Matrix projector() const { return frame_ * frame_.transpose(); }

 private:
  Matrix frame_;
  int d_;
};

Subspace orthonormal_frame(const std::vector<Vector>& vectors, int d);
Vector project_onto(const Subspace& v, const Vector& x);

// metric determinant of pi_V restricted to W: sqrt(det(A^T A)),
// A = frame_V^T frame_W; 0 when dim V < dim W.
double metric_det(const Subspace& v, const Subspace& w);

// dist_directed(V,W) = max over unit v in V of dist(v, W)
// = largest singular value of (I - pi_W) frame_V; 0 for the zero subspace.
double dist_directed(const Subspace& v, const Subspace& w);
double dist_grassmann(const Subspace& v, const Subspace& w);

// Constructive eps-intersection: diagonalize the residual form of V1
// against V2 and keep eigenvalue <= eps^2 directions (ties included).
Subspace epsilon_intersection(const Subspace& v1, const Subspace& v2,
                              double eps);

struct ConeSpec {
  Vector apex;
  Subspace direction_space;
  double aperture;  // eps in (0,1)

  ConeSpec(Vector a, Subspace s, double eps)
      : apex(std::move(a)), direction_space(std::move(s)), aperture(eps) {
    if (!(eps > 0 && eps < 1))
      throw ParameterError("cone aperture must lie in (0,1)");
  }
};

// dist(x - apex, L0) <= eps |x - apex|
bool in_projective_cone(const Vector& x, const ConeSpec& cone);

}  // namespace rigidlab

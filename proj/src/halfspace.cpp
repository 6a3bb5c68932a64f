#include "rigidlab/halfspace.hpp"

#include <cmath>

namespace rigidlab {

double hyperbolic_distance(const HalfSpacePoint& p, const HalfSpacePoint& q) {
  if (p.dim() != q.dim())
    throw ParameterError("hyperbolic_distance: dimension mismatch");
  double dh = p.height - q.height;
  double db2 = (p.base - q.base).squaredNorm();
  double u = (db2 + dh * dh) / (2.0 * p.height * q.height);
  // acosh(1+u) without forming cosh-1 differences
  return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

Matrix poincare_extension_matrix(const MobiusMap& g) {
  const int d = g.dim();
  // coordinates in R^(d+1): the original d, then the height; Lorentz indices
  // (t0, t1, x_0..x_{d-1}, h)
  Matrix ext = Matrix::Zero(d + 3, d + 3);
  ext.topLeftCorner(d + 2, d + 2) = g.lorentz();
  ext(d + 2, d + 2) = 1.0;
  return ext;
}

HalfSpacePoint halfspace_apply_matrix(const Matrix& ext,
                                      const HalfSpacePoint& p) {
  const int d = static_cast<int>(ext.rows()) - 3;
  Vector u(d + 3);
  u(0) = 1.0;
  u(1) = -0.5 * (p.base.squaredNorm() + p.height * p.height);
  u.segment(2, d) = p.base;
  u(d + 2) = p.height;
  Vector v = ext * u;
  if (std::abs(v(0)) <= 1e-300)
    throw SingularityError("half-space image escaped to infinity");
  v /= v(0);
  double h = std::abs(v(d + 2));
  return HalfSpacePoint(h, Vector(v.segment(2, d)));
}

HalfSpacePoint poincare_extension_apply(const MobiusMap& g,
                                        const HalfSpacePoint& p) {
  return halfspace_apply_matrix(poincare_extension_matrix(g), p);
}

}  // namespace rigidlab

#pragma once

#include "rigidlab/mobius.hpp"

namespace rigidlab {

// Upper half-space model H = (0,inf) x R^d.
struct HalfSpacePoint {
  double height;
  Vector base;

  HalfSpacePoint(double h, Vector b) : height(h), base(std::move(b)) {
    if (!(height > 0)) throw ParameterError("half-space height must be > 0");
  }
  int dim() const { return static_cast<int>(base.size()); }
};

// cosh d = 1 + (|db|^2 + dh^2) / (2 h_p h_q), evaluated in log1p form so
// small separations do not cancel.
double hyperbolic_distance(const HalfSpacePoint& p, const HalfSpacePoint& q);

// Poincare extension: embed the boundary map into R^(d+1) (height appended
// as the last coordinate) and act through the enlarged Lorentz matrix.
HalfSpacePoint poincare_extension_apply(const MobiusMap& g,
                                        const HalfSpacePoint& p);

// The enlarged (d+3)x(d+3) matrix itself, for callers that iterate.
Matrix poincare_extension_matrix(const MobiusMap& g);
HalfSpacePoint halfspace_apply_matrix(const Matrix& ext,
                                      const HalfSpacePoint& p);

}  // namespace rigidlab

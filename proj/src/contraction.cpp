#include "rigidlab/contraction.hpp"

#include <cmath>
#include <limits>

namespace rigidlab {

Vector MobiusContraction::apply(const Vector& x) const {
  Point y = m_.apply(Point(x));
  if (y.is_infinity())
    throw SingularityError("contraction sent a point to infinity");
  return y.coords();
}

double MobiusContraction::derivative_scale(const Vector& x) const {
  return m_.derivative_scale(Point(x));
}

double mobius_sup_derivative_ball(const Matrix& lorentz, const Vector& center,
                                  double radius) {
  const int d = static_cast<int>(center.size());
  // first component of M iota(x) as a radial quadratic about the center:
  // q(c+y) = q0 + g.y - gamma |y|^2
  double m00 = lorentz(0, 0), m01 = lorentz(0, 1);
  Vector m0x = lorentz.block(0, 2, 1, d).transpose();
  double q0 = m00 - 0.5 * m01 * center.squaredNorm() + m0x.dot(center);
  Vector g = m0x - m01 * center;
  double gn = g.norm();
  double gamma = 0.5 * m01;
  auto arc_extremes = [&](double sign, double* mn, double* mx) {
    // f(rho) = q0 + sign*gn*rho - gamma*rho^2 on [0, radius]
    double a = q0, b = q0 + sign * gn * radius - gamma * radius * radius;
    *mn = std::min(a, b);
    *mx = std::max(a, b);
    if (gamma != 0.0) {
      double rho = sign * gn / (2.0 * gamma);
      if (rho > 0 && rho < radius) {
        double v = q0 + sign * gn * rho - gamma * rho * rho;
        *mn = std::min(*mn, v);
        *mx = std::max(*mx, v);
      }
    }
  };
  double lo1, hi1, lo2, hi2;
  arc_extremes(+1.0, &lo1, &hi1);
  arc_extremes(-1.0, &lo2, &hi2);
  double qmin = std::min(lo1, lo2), qmax = std::max(hi1, hi2);
  if (qmin <= 0.0 && qmax >= 0.0)
    return std::numeric_limits<double>::infinity();  // pole inside the ball
  double minabs = qmin > 0 ? qmin : -qmax;
  return 1.0 / minabs;
}

double MobiusContraction::sup_derivative(const Region& seed) const {
  if (exact_ratio()) return ratio();
  Region b = seed.bounding_ball();
  return mobius_sup_derivative_ball(m_.lorentz(), b.center, b.radius);
}

double MobiusContraction::ratio() const {
  if (m_.kind() != MapKind::SIMILARITY)
    return ContractionMap::ratio();
  return 1.0 / m_.lorentz()(0, 0);
}

bool MobiusContraction::image_ball(const Vector& c, double r, Vector* ic,
                                   double* ir) const {
  OrientedSphere img = map_sphere(m_, OrientedSphere::ball(c, r));
  if (!img.is_ball()) return false;  // pole inside: image is a complement
  *ic = img.center();
  *ir = img.radius();
  return true;
}

}  // namespace rigidlab

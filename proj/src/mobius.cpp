#include "rigidlab/mobius.hpp"

#include <cmath>
#include <cstdio>

namespace rigidlab {

Matrix q_gram(int d) {
  Matrix j = Matrix::Zero(d + 2, d + 2);
  j(0, 1) = j(1, 0) = 1.0;
  j.bottomRightCorner(d, d).setIdentity();
  return j;
}

double q_form(const Vector& u) { return q_dot(u, u); }

double q_dot(const Vector& u, const Vector& v) {
  const int d = static_cast<int>(u.size()) - 2;
  return u(0) * v(1) + u(1) * v(0) + u.tail(d).dot(v.tail(d));
}

Vector iota(const Point& x) {
  if (x.is_infinity())
    throw ParameterError("iota: infinity has no affine lift; use (0,1,0)");
  Vector u(x.dim() + 2);
  u(0) = 1.0;
  u(1) = -0.5 * x.squared_norm();
  u.tail(x.dim()) = x.coords();
  return u;
}

Point deproject(const Vector& u) {
  const int d = static_cast<int>(u.size()) - 2;
  if (std::abs(u(0)) <= 1e-14 * u.norm()) return Point::infinity();
  return Point(Vector(u.tail(d) / u(0)));
}

void sign_normalize(Matrix& m) {
  double tr = m(0, 0) + m(1, 1);
  if (tr > 0) return;
  if (tr < 0) {
    m = -m;
    return;
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) > 0) return;
      if (m(i, j) < 0) {
        m = -m;
        return;
      }
    }
}

MobiusMap::MobiusMap(Matrix lorentz, MapKind kind, int d)
    : m_(std::move(lorentz)), kind_(kind), d_(d) {
  if (m_.rows() != d + 2 || m_.cols() != d + 2)
    throw ParameterError("lorentz matrix must be (d+2)x(d+2)");
  // polish back onto the Lorentz group: with E = M^T J M - J the update
  // M(I - J E / 2) removes the defect to second order, so the roundoff
  // that long products accumulate is squeezed back below 1e-13
  Matrix j = q_gram(d);
  for (int it = 0; it < 3; ++it) {
    Matrix e = m_.transpose() * j * m_ - j;
    double defect = e.cwiseAbs().maxCoeff();
    if (defect < 1e-14) break;
    if (defect > 1e-3) break;  // genuinely non-Lorentz; polishing will not help
    m_ -= 0.5 * m_ * (j * e);
  }
  sign_normalize(m_);
  double defect = lorentz_defect();
  double mag = m_.cwiseAbs().maxCoeff();
  if (defect > 1e-10 * std::max(1.0, mag * mag)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", defect);
    throw ParameterError(std::string("matrix is not Q-preserving (defect ") +
                         buf + ")");
  }
}

MobiusMap MobiusMap::identity(int d) {
  return MobiusMap(Matrix::Identity(d + 2, d + 2), MapKind::SIMILARITY, d);
}

MobiusMap MobiusMap::similarity(const Similarity& s) {
  const int d = s.dim();
  const double lam = s.scale();
  const Vector& b = s.translation();
  Matrix m = Matrix::Zero(d + 2, d + 2);
  m(0, 0) = 1.0 / lam;
  m(1, 0) = -b.squaredNorm() / (2.0 * lam);
  m(1, 1) = lam;
  m.block(1, 2, 1, d) = -(b.transpose() * s.rotation());
  m.block(2, 0, d, 1) = b / lam;
  m.bottomRightCorner(d, d) = s.rotation();
  return MobiusMap(std::move(m), MapKind::SIMILARITY, d);
}

MobiusMap MobiusMap::similarity(double scale, const Matrix& rot,
                                const Vector& trans) {
  return similarity(Similarity(scale, rot, trans));
}

MobiusMap MobiusMap::sphere_inversion(const Point& center, double radius) {
  if (!(radius > 0)) throw ParameterError("inversion radius must be positive");
  const int d = center.dim();
  // unit inversion at the origin: t0 -> -2 t1, t1 -> -t0/2, x -> x
  Matrix inv0 = Matrix::Identity(d + 2, d + 2);
  inv0(0, 0) = inv0(1, 1) = 0.0;
  inv0(0, 1) = -2.0;
  inv0(1, 0) = -0.5;
  MobiusMap base(std::move(inv0), MapKind::SPHERE_INVERSION, d);
  MobiusMap dil = similarity(radius * radius, Matrix::Identity(d, d),
                             Vector::Zero(d));
  MobiusMap to_c =
      similarity(1.0, Matrix::Identity(d, d), center.coords());
  MobiusMap from_c =
      similarity(1.0, Matrix::Identity(d, d), Vector(-center.coords()));
  Matrix m = to_c.lorentz() * dil.lorentz() * base.lorentz() *
             from_c.lorentz();
  return MobiusMap(std::move(m), MapKind::SPHERE_INVERSION, d);
}

MobiusMap MobiusMap::compose(const MobiusMap& other) const {
  if (d_ != other.d_) throw ParameterError("compose: dimension mismatch");
  MapKind k = (kind_ == MapKind::SIMILARITY && other.kind_ == MapKind::SIMILARITY)
                  ? MapKind::SIMILARITY
                  : MapKind::COMPOSITE;
  return MobiusMap(m_ * other.m_, k, d_);
}

MobiusMap MobiusMap::inverse() const {
  Matrix j = q_gram(d_);
  MapKind k = kind_ == MapKind::COMPOSITE ? MapKind::COMPOSITE : kind_;
  return MobiusMap(j * m_.transpose() * j, k, d_);
}

Point MobiusMap::apply(const Point& x) const {
  Vector u;
  if (x.is_infinity()) {
    u = Vector::Zero(d_ + 2);
    u(1) = 1.0;
  } else {
    u = iota(x);
  }
  return deproject(m_ * u);
}

double MobiusMap::derivative_scale(const Point& x) const {
  if (x.is_infinity())
    throw ParameterError("derivative_scale needs a finite point");
  Vector v = m_ * iota(x);
  double f = std::abs(v(0));
  if (f <= 1e-13 * v.norm())
    throw SingularityError("derivative_scale at the pole of the map");
  return 1.0 / f;
}

double MobiusMap::lorentz_defect() const {
  Matrix j = q_gram(d_);
  return (m_.transpose() * j * m_ - j).cwiseAbs().maxCoeff();
}

bool MobiusMap::approx_equal(const MobiusMap& other, double tol) const {
  if (d_ != other.d_) return false;
  return (m_ - other.m_).cwiseAbs().maxCoeff() <= tol;
}

OrientedSphere OrientedSphere::ball(const Vector& center, double radius) {
  if (!(radius > 0)) throw ParameterError("ball radius must be positive");
  const int d = static_cast<int>(center.size());
  Vector s(d + 2);
  s(0) = 1.0;
  s(1) = 0.5 * (radius * radius - center.squaredNorm());
  s.tail(d) = center;
  s /= radius;
  return {s};
}

Vector OrientedSphere::center() const {
  const int d = dim();
  double s0 = std::abs(s(0));
  if (s0 < 1e-14) throw ParameterError("unbounded region has no center");
  return Vector(s.tail(d) / s(0));
}

double OrientedSphere::radius() const {
  double s0 = std::abs(s(0));
  if (s0 < 1e-14) throw ParameterError("unbounded region has no radius");
  return 1.0 / s0;
}

double OrientedSphere::signed_eval(const Point& x) const {
  if (x.is_infinity()) return -s(0);
  return q_dot(iota(x), s);
}

bool OrientedSphere::contains(const Point& x) const {
  return signed_eval(x) > 0;
}

Point OrientedSphere::deep_point() const {
  if (s(0) > 1e-9) return Point(center());
  if (s(0) < -1e-9) return Point::infinity();
  // near half-space: walk along the normal
  const int d = dim();
  Vector n = s.tail(d);
  double nn = n.squaredNorm();
  return Point(Vector(n * ((1.0 + std::abs(s(1))) / nn)));
}

// a point on the boundary sphere (bounded side), used as a crossing witness
static Point boundary_point(const OrientedSphere& s) {
  const int d = s.dim();
  if (std::abs(s.s(0)) > 1e-9) {
    OrientedSphere b = s.is_ball() ? s : s.complement();
    Vector p = b.center();
    p(0) += b.radius();
    return Point(p);
  }
  Vector n = s.s.tail(d);
  return Point(Vector(n * (-s.s(1) / n.squaredNorm())));
}

OrientedSphere map_sphere(const MobiusMap& g, const OrientedSphere& s) {
  Vector t = g.lorentz() * s.s;
  double q = q_form(t);
  if (!(q > 0)) throw SingularityError("mapped sphere degenerated");
  t /= std::sqrt(q);
  OrientedSphere out{t};
  Point w = g.apply(s.deep_point());
  if (out.signed_eval(w) < 0) out.s = -out.s;
  return out;
}

bool regions_disjoint(const OrientedSphere& u, const OrientedSphere& v,
                      double margin) {
  if (q_dot(u.s, v.s) > -(1.0 + margin)) return false;
  if (v.signed_eval(u.deep_point()) >= 0) return false;
  if (u.signed_eval(v.deep_point()) >= 0) return false;
  if (u.signed_eval(boundary_point(v)) > 0) return false;
  if (v.signed_eval(boundary_point(u)) > 0) return false;
  return true;
}

bool region_contained(const OrientedSphere& inner, const OrientedSphere& outer,
                      double margin) {
  return regions_disjoint(inner, outer.complement(), margin);
}

double ball_gap(const OrientedSphere& u, const OrientedSphere& v) {
  if (!u.is_ball() || !v.is_ball())
    throw ParameterError("ball_gap needs two bounded regions");
  return (u.center() - v.center()).norm() - u.radius() - v.radius();
}

}  // namespace rigidlab

#pragma once

#include "rigidlab/core.hpp"

namespace rigidlab {

// Quadratic form Q(t0,t1,x) = 2 t0 t1 + |x|^2 on R^(d+2).
Matrix q_gram(int d);
double q_form(const Vector& u);
double q_dot(const Vector& u, const Vector& v);

// Null lift iota(x) = (1, -|x|^2/2, x); infinity -> (0,1,0).
Vector iota(const Point& x);
// Inverse of the lift: de-projectivize a null vector back to R^d u {inf}.
Point deproject(const Vector& u);

enum class MapKind { SIMILARITY, SPHERE_INVERSION, COMPOSITE };

// Conformal automorphism of R^d u {inf}, stored as its Q-preserving
// (d+2)x(d+2) matrix. The matrix is sign-normalized: trace block
// M(0,0)+M(1,1) nonnegative, ties broken by first nonzero entry positive.
class MobiusMap {
 public:
  MobiusMap(Matrix lorentz, MapKind kind, int d);

  static MobiusMap identity(int d);
  static MobiusMap similarity(const Similarity& s);
  static MobiusMap similarity(double scale, const Matrix& rot,
                              const Vector& trans);
  static MobiusMap sphere_inversion(const Point& center, double radius);

  int dim() const { return d_; }
  MapKind kind() const { return kind_; }
  const Matrix& lorentz() const { return m_; }

  MobiusMap compose(const MobiusMap& other) const;  // this after other
  MobiusMap inverse() const;

  Point apply(const Point& x) const;
  // Conformal dilation |g'(x)|; throws SingularityError at the pole.
  double derivative_scale(const Point& x) const;

  // max |M^T J M - J| entry; construction enforces <= 1e-10
  double lorentz_defect() const;

  bool approx_equal(const MobiusMap& other, double tol) const;

 private:
  Matrix m_;
  MapKind kind_;
  int d_;
};

void sign_normalize(Matrix& m);

// Oriented sphere as a Q-unit vector s; its region is {x : <iota(x),s>_Q > 0}.
// A ball B(c,r) has s = (1/r) * (1, (r^2-|c|^2)/2, c), region = interior;
// -s is the complementary region (contains infinity).
struct OrientedSphere {
  Vector s;  // Q(s) = 1

  static OrientedSphere ball(const Vector& center, double radius);
  OrientedSphere complement() const { return {-s}; }

  int dim() const { return static_cast<int>(s.size()) - 2; }
  bool is_ball() const { return s(0) > 0; }  // region bounded
  Vector center() const;                     // requires is_ball
  double radius() const;

  bool contains(const Point& x) const;
  double signed_eval(const Point& x) const;  // <iota(x), s>_Q, inf handled
  // A point well inside the region (ball center, or infinity's stand-in).
  Point deep_point() const;
};

// Image of the region under g, orientation fixed by mapping a witness.
OrientedSphere map_sphere(const MobiusMap& g, const OrientedSphere& s);

// <u,v>_Q of the unit vectors. Regions disjoint iff <= -1 (plus witness),
// R(u) subset R(v) iff >= 1 (plus witness); helpers below bundle the witness.
bool regions_disjoint(const OrientedSphere& u, const OrientedSphere& v,
                      double margin = 0.0);
bool region_contained(const OrientedSphere& inner, const OrientedSphere& outer,
                      double margin = 0.0);
// Euclidean gap between two disjoint balls (both bounded): dist - r1 - r2.
double ball_gap(const OrientedSphere& u, const OrientedSphere& v);

}  // namespace rigidlab

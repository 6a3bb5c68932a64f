#pragma once

#include "rigidlab/core.hpp"

namespace rigidlab {

// Seed region for an IFS: a closed ball or an axis-aligned box.
struct Region {
  enum class Kind { BALL, BOX } kind;
  // ball
  Vector center;
  double radius = 0.0;
  // box
  Vector lo, hi;

  static Region ball(Vector c, double r) {
    if (!(r > 0)) throw ParameterError("region ball radius must be positive");
    Region g;
    g.kind = Kind::BALL;
    g.center = std::move(c);
    g.radius = r;
    return g;
  }
  static Region box(Vector lo, Vector hi) {
    if (lo.size() != hi.size() || ((hi - lo).array() <= 0).any())
      throw ParameterError("region box needs lo < hi");
    Region g;
    g.kind = Kind::BOX;
    g.lo = std::move(lo);
    g.hi = std::move(hi);
    return g;
  }

  int dim() const {
    return static_cast<int>(kind == Kind::BALL ? center.size() : lo.size());
  }
  double diam() const {
    return kind == Kind::BALL ? 2.0 * radius : (hi - lo).norm();
  }
  bool contains(const Vector& x, double tol = 1e-12) const {
    if (kind == Kind::BALL) return (x - center).norm() <= radius + tol;
    return (x.array() >= lo.array() - tol).all() &&
           (x.array() <= hi.array() + tol).all();
  }
  Vector midpoint() const {
    return kind == Kind::BALL ? center : Vector(0.5 * (lo + hi));
  }
  // smallest enclosing ball (exact for balls, circumscribed for boxes)
  Region bounding_ball() const {
    if (kind == Kind::BALL) return *this;
    return ball(midpoint(), 0.5 * (hi - lo).norm());
  }
};

}  // namespace rigidlab

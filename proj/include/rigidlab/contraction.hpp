#pragma once

#include "rigidlab/mobius.hpp"
#include "rigidlab/region.hpp"

#include <memory>

namespace rigidlab {

// One branch of an IFS. Implementations must be uniformly contracting on the
// seed region they are used with.
class ContractionMap {
 public:
  virtual ~ContractionMap() = default;
  virtual int dim() const = 0;
  virtual Vector apply(const Vector& x) const = 0;
  virtual double derivative_scale(const Vector& x) const = 0;
  // certified sup of |u'| over the region (+inf if a pole intrudes)
  virtual double sup_derivative(const Region& seed) const = 0;
  // true when |u'| is a constant (similarity-type); then ratio() is exact
  virtual bool exact_ratio() const = 0;
  virtual double ratio() const {
    throw ParameterError("map has no constant contraction ratio");
  }
  // exact image of a ball when the map supports it
  virtual bool image_ball(const Vector& c, double r, Vector* ic,
                          double* ir) const {
    (void)c; (void)r; (void)ic; (void)ir;
    return false;
  }
};

using ContractionPtr = std::shared_ptr<const ContractionMap>;

// Any Mobius map (similarities included), routed through the Lorentz matrix.
class MobiusContraction : public ContractionMap {
 public:
  explicit MobiusContraction(MobiusMap m) : m_(std::move(m)) {}

  int dim() const override { return m_.dim(); }
  Vector apply(const Vector& x) const override;
  double derivative_scale(const Vector& x) const override;
  double sup_derivative(const Region& seed) const override;
  bool exact_ratio() const override {
    return m_.kind() == MapKind::SIMILARITY;
  }
  double ratio() const override;
  bool image_ball(const Vector& c, double r, Vector* ic,
                  double* ir) const override;

  const MobiusMap& map() const { return m_; }

 private:
  MobiusMap m_;
};

// Certified range of the first Lorentz row over a ball (the reciprocal of
// |g'|); exposed for the per-word pressure bounds.
double mobius_sup_derivative_ball(const Matrix& lorentz, const Vector& center,
                                  double radius);

}  // namespace rigidlab

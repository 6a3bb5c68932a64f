#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>

namespace rigidlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Error taxonomy; the CLI maps these onto exit codes.
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point of R^d together with the point at infinity of the one-point
// compactification. INFINITY compares equal only to itself.
class Point {
 public:
  Point() : finite_(false) {}
  explicit Point(Vector coords) : coords_(std::move(coords)), finite_(true) {}

  static Point infinity() { return Point(); }
  static Point zero(int d) { return Point(Vector::Zero(d)); }

  bool is_infinity() const { return !finite_; }
  const Vector& coords() const {
    if (!finite_) throw ParameterError("coords() on the point at infinity");
    return coords_;
  }
  int dim() const { return finite_ ? static_cast<int>(coords_.size()) : -1; }

  double norm() const { return coords().norm(); }
  double squared_norm() const { return coords().squaredNorm(); }

  friend bool approx_equal(const Point& a, const Point& b, double tol) {
    if (a.is_infinity() || b.is_infinity())
      return a.is_infinity() == b.is_infinity();
    return (a.coords_ - b.coords_).norm() <= tol;
  }

 private:
  Vector coords_;
  bool finite_;
};

// x |-> scale * rot * x + trans, with rot orthogonal and scale > 0.
class Similarity {
 public:
  Similarity(double scale, Matrix rot, Vector trans);
  static Similarity identity(int d) {
    return Similarity(1.0, Matrix::Identity(d, d), Vector::Zero(d));
  }

  double scale() const { return scale_; }
  const Matrix& rotation() const { return rot_; }
  const Vector& translation() const { return trans_; }
  int dim() const { return static_cast<int>(trans_.size()); }

  Vector apply(const Vector& x) const { return scale_ * (rot_ * x) + trans_; }

 private:
  double scale_;
  Matrix rot_;
  Vector trans_;
};

inline constexpr double kOrthoTol = 1e-12;

}  // namespace rigidlab

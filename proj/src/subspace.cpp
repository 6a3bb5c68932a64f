#include "rigidlab/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace rigidlab {

Subspace::Subspace(Matrix frame, int d) : frame_(std::move(frame)), d_(d) {
  if (frame_.rows() != d)
    throw ParameterError("subspace frame has wrong ambient dimension");
  if (frame_.cols() > 0) {
    double defect = (frame_.transpose() * frame_ -
                     Matrix::Identity(frame_.cols(), frame_.cols()))
                        .cwiseAbs()
                        .maxCoeff();
    if (defect > 1e-10)
      throw ParameterError("subspace frame not orthonormal");
  }
}

Subspace Subspace::span(const std::vector<Vector>& vectors, int d) {
  return orthonormal_frame(vectors, d);
}

Subspace Subspace::coordinate_axes(int d, const std::vector<int>& axes) {
  Matrix f = Matrix::Zero(d, axes.size());
  for (size_t j = 0; j < axes.size(); ++j) f(axes[j], j) = 1.0;
  return Subspace(std::move(f), d);
}

Vector Subspace::project(const Vector& x) const {
  if (dim() == 0) return Vector::Zero(d_);
  return frame_ * (frame_.transpose() * x);
}

Subspace orthonormal_frame(const std::vector<Vector>& vectors, int d) {
  if (vectors.empty()) return Subspace::zero(d);
  Matrix a(d, vectors.size());
  for (size_t j = 0; j < vectors.size(); ++j) a.col(j) = vectors[j];
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * smax) ++rank;
  if (smax == 0.0) rank = 0;
  return Subspace(Matrix(svd.matrixU().leftCols(rank)), d);
}

Vector project_onto(const Subspace& v, const Vector& x) {
  return v.project(x);
}

double metric_det(const Subspace& v, const Subspace& w) {
  if (v.dim() < w.dim()) return 0.0;
  if (w.dim() == 0) return 1.0;
  Matrix a = v.frame().transpose() * w.frame();
  double det = (a.transpose() * a).determinant();
  if (det < 0) det = 0;
  double r = std::sqrt(det);
  return r > 1.0 ? 1.0 : r;
}

double dist_directed(const Subspace& v, const Subspace& w) {
  if (v.dim() == 0) return 0.0;
  Matrix resid = v.frame() - w.frame() * (w.frame().transpose() * v.frame());
  Eigen::JacobiSVD<Matrix> svd(resid);
  double s = svd.singularValues()(0);
  return s > 1.0 ? 1.0 : s;
}

double dist_grassmann(const Subspace& v, const Subspace& w) {
  return std::max(dist_directed(v, w), dist_directed(w, v));
}

Subspace epsilon_intersection(const Subspace& v1, const Subspace& v2,
                              double eps) {
  if (!(eps > 0 && eps < 1))
    throw ParameterError("epsilon_intersection needs eps in (0,1)");
  const int d = v1.ambient_dim();
  if (v1.dim() == 0) return Subspace::zero(d);
  // residual form R(c) = |B c|^2 on coefficients of V1, B = (I - pi_2) F1
  Matrix b = v1.frame() - v2.frame() * (v2.frame().transpose() * v1.frame());
  Matrix c = b.transpose() * b;
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  int keep = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) <= eps * eps + 1e-14) ++keep;
  if (keep == 0) return Subspace::zero(d);
  Matrix frame = v1.frame() * es.eigenvectors().leftCols(keep);
  // eigenvectors of a symmetric form are orthonormal; the product with an
  // orthonormal frame stays orthonormal
  return Subspace(std::move(frame), d);
}

bool in_projective_cone(const Vector& x, const ConeSpec& cone) {
  Vector rel = x - cone.apex;
  double off = (rel - cone.direction_space.project(rel)).norm();
  return off <= cone.aperture * rel.norm() + 1e-15;
}

}  // namespace rigidlab

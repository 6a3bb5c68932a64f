#include "rigidlab/rigidity.hpp"

#include "rigidlab/mobius.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace rigidlab {

namespace {

// pack a grid cell into one key; coordinates stay well under 2^20 cells in
// every use here (points/scale ratios are bounded by the scale lists)
std::uint64_t cell_key(const double* y, int m, double scale) {
  std::uint64_t key = 1469598103934665603ULL;
  for (int j = 0; j < m; ++j) {
    auto c = (std::int64_t)std::floor(y[j] / scale);
    key = (key ^ std::uint64_t(c + (1LL << 42))) * 1099511628211ULL;
    key ^= key >> 29;
  }
  return key;
}

struct LsqFit {
  double slope, stderr_;
};

LsqFit lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  double slope = sxy / sxx;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    double r = y[i] - (my + slope * (x[i] - mx));
    ss += r * r;
  }
  double s2 = ss / std::max<size_t>(n - 2, 1);
  return {slope, std::sqrt(s2 / sxx)};
}

}  // namespace

BoxDimResult box_dimension(const WeightedCloud& cloud,
                           const std::vector<double>& scales) {
  if (cloud.size() == 0) throw ParameterError("box_dimension: empty cloud");
  if (scales.size() < 2)
    throw ParameterError("box_dimension needs at least two scales");
  BoxDimResult out;
  out.scales = scales;
  const int d = cloud.dim();
  Vector lo = cloud.pts.colwise().minCoeff();
  if (cloud.diameter_estimate() == 0.0) return out;  // single point: dim 0

  std::vector<double> xs, ys;
  std::vector<double> y(d);
  for (double eps : scales) {
    double avg = 0.0;
    for (int j = 0; j < 3; ++j) {
      std::unordered_set<std::uint64_t> cells;
      cells.reserve(size_t(cloud.size()) / 4 + 16);
      Vector anchor = lo.array() - j * eps / 3.0;
      for (int i = 0; i < cloud.size(); ++i) {
        for (int c = 0; c < d; ++c) y[c] = cloud.pts(i, c) - anchor(c);
        cells.insert(cell_key(y.data(), d, eps));
      }
      avg += double(cells.size());
    }
    avg /= 3.0;
    out.counts.push_back(avg);
    xs.push_back(std::log(1.0 / eps));
    ys.push_back(std::log(avg));
  }
  LsqFit fit = lsq_slope(xs, ys);
  out.estimate = fit.slope;
  out.stderr_ = fit.stderr_;
  return out;
}

double upper_density(const WeightedCloud& cloud, const Vector& x, double delta,
                     const std::vector<double>& radii) {
  if (radii.empty()) throw ParameterError("upper_density needs radii");
  double best = 0.0;
  for (double r : radii) {
    if (!(r > 0)) throw ParameterError("upper_density radii must be positive");
    double w = 0.0;
    for (int i = 0; i < cloud.size(); ++i)
      if ((cloud.pts.row(i).transpose() - x).norm() <= r) w += cloud.weights(i);
    best = std::max(best, w / std::pow(r, delta));
  }
  return best;
}

SphereFit fit_generalized_sphere(const WeightedCloud& cloud, int k) {
  const int d = cloud.dim();
  if (k < 0 || k >= d)
    throw ParameterError("sphere fit needs 0 <= k < ambient dimension");
  const int n_normals = d - k;
  if (cloud.size() < d + 2)
    throw DegeneracyError("sphere fit needs at least d+2 points");

  Matrix s = Matrix::Zero(d + 2, d + 2);
  double wsum = 0.0;
  Vector u(d + 2);
  for (int i = 0; i < cloud.size(); ++i) {
    u(0) = 1.0;
    u(1) = -0.5 * cloud.pts.row(i).squaredNorm();
    u.tail(d) = cloud.pts.row(i).transpose();
    u /= u.norm();
    s.noalias() += cloud.weights(i) * (u * u.transpose());
    wsum += cloud.weights(i);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Vector& ev = es.eigenvalues();
  if (ev(n_normals) < 1e-12 * ev.sum())
    throw DegeneracyError(
        "moment form is rank deficient: the fitted sphere family is not "
        "unique at this k");

  SphereFit out;
  // per-point error is (u^T J w)^2, so the minimizers are J times the small
  // eigenvectors of the moment matrix
  Matrix cand = q_gram(d) * es.eigenvectors().leftCols(n_normals);
  // Gram-Schmidt in the Q inner product
  Matrix w = cand;
  bool ok = true;
  for (int j = 0; j < n_normals && ok; ++j) {
    Vector v = cand.col(j);
    for (int l = 0; l < j; ++l) v -= q_dot(v, w.col(l)) * w.col(l);
    double q = q_form(v);
    if (q <= 1e-12)
      ok = false;
    else
      w.col(j) = v / std::sqrt(q);
  }
  double res2 = 0.0;
  const Matrix& use = ok ? w : cand;
  for (int i = 0; i < cloud.size(); ++i) {
    u(0) = 1.0;
    u(1) = -0.5 * cloud.pts.row(i).squaredNorm();
    u.tail(d) = cloud.pts.row(i).transpose();
    u /= u.norm();
    for (int j = 0; j < n_normals; ++j) {
      double e = q_dot(u, use.col(j));
      res2 += cloud.weights(i) * e * e;
    }
  }
  out.sphere.normals = use;
  out.sphere.q_normalized = ok;
  out.q_degenerate = !ok;
  out.residual = std::sqrt(res2 / wsum);
  if (n_normals == 1) {
    Vector nv = use.col(0);
    if (std::abs(nv(0)) > 1e-9 * nv.norm()) {
      out.center = Vector(nv.tail(d) / nv(0));
      double r2 = out.center.squaredNorm() + 2.0 * nv(1) / nv(0);
      out.radius = r2 > 0 ? std::sqrt(r2) : 0.0;
    } else {
      out.is_plane = true;
    }
  }
  return out;
}

TangentEstimate local_tangent_estimate(const WeightedCloud& cloud,
                                       const Vector& p, int k, double r,
                                       double eps) {
  TangentEstimate out{Subspace::zero(cloud.dim())};
  std::vector<int> idx;
  for (int i = 0; i < cloud.size(); ++i)
    if ((cloud.pts.row(i).transpose() - p).norm() <= r) idx.push_back(i);
  out.n_ball = int(idx.size());
  if (out.n_ball < 20) {
    out.inconclusive = true;
    return out;
  }
  const int d = cloud.dim();
  Matrix c = Matrix::Zero(d, d);
  for (int i : idx) {
    Vector y = cloud.pts.row(i).transpose() - p;
    c.noalias() += cloud.weights(i) * (y * y.transpose());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(c);
  out.plane = Subspace(Matrix(es.eigenvectors().rightCols(k)), d);
  ConeSpec cone(p, out.plane, eps);
  double leak = 0.0;
  for (int i : idx)
    if (!in_projective_cone(cloud.pts.row(i).transpose(), cone))
      leak += cloud.weights(i);
  out.leak_ratio = leak / std::pow(r, k);
  return out;
}

double projected_measure_estimate(const WeightedCloud& cloud,
                                  const Subspace& v, int k, double scale) {
  if (v.dim() < k)
    throw ParameterError("projection subspace has dimension below k");
  if (scale <= 0) scale = 2.0 * cloud.meta.resolution;
  if (!(scale > 0))
    throw ParameterError("no usable scale for the projected content");
  const int m = v.dim();
  Matrix proj = cloud.pts * v.frame();  // N x m
  std::unordered_set<std::uint64_t> cells;
  std::vector<double> y(m);
  for (int i = 0; i < proj.rows(); ++i) {
    for (int j = 0; j < m; ++j) y[j] = proj(i, j);
    cells.insert(cell_key(y.data(), m, scale));
  }
  return double(cells.size()) * std::pow(scale, k);
}

PseudorectResult pseudorect_identity_check(const WeightedCloud& cloud,
                                           const Subspace& l0,
                                           const Subspace& v, double scale,
                                           double inj_tol,
                                           double collision_frac) {
  const int k = l0.dim();
  if (v.dim() < k)
    throw ParameterError("projection subspace has dimension below k");
  if (scale <= 0) scale = 2.0 * cloud.meta.resolution;
  if (!(scale > 0)) throw ParameterError("no usable scale for the identity");
  if (inj_tol <= 0) inj_tol = 150.0 * scale;
  const int m = v.dim();
  Matrix proj = cloud.pts * v.frame();
  struct CellInfo {
    int rep;
    bool flagged = false;
  };
  std::unordered_map<std::uint64_t, CellInfo> cells;
  std::vector<double> y(m);
  for (int i = 0; i < proj.rows(); ++i) {
    for (int j = 0; j < m; ++j) y[j] = proj(i, j);
    auto key = cell_key(y.data(), m, scale);
    auto it = cells.find(key);
    if (it == cells.end())
      cells.emplace(key, CellInfo{i});
    else if ((cloud.pts.row(i) - cloud.pts.row(it->second.rep)).norm() >
             inj_tol)
      it->second.flagged = true;
  }
  PseudorectResult out;
  out.occupied_cells = int(cells.size());
  for (const auto& kv : cells)
    if (kv.second.flagged) ++out.colliding_cells;
  if (out.colliding_cells > collision_frac * double(out.occupied_cells))
    throw DegeneracyError("projection not injective at scale " +
                          std::to_string(scale) + ": " +
                          std::to_string(out.colliding_cells) +
                          " colliding cells of " +
                          std::to_string(out.occupied_cells));
  out.lhs = double(out.occupied_cells) * std::pow(scale, k);
  out.rhs = metric_det(v, l0) * cloud.meta.total_mass;
  out.rel_gap = std::abs(out.lhs - out.rhs) / std::max(out.rhs, 1e-12);
  return out;
}

RigidityReport dichotomy_report(const WeightedCloud& cloud, int k,
                                const RigidityThresholds& thresholds) {
  if (k < 1) throw ParameterError("dichotomy needs k >= 1");
  RigidityReport rep;
  rep.k = k;
  rep.seed = cloud.meta.seed;
  double diam = cloud.diameter_estimate();
  rep.sphere_tol =
      thresholds.sphere_tol >= 0 ? thresholds.sphere_tol : 1e-6 * diam;

  std::vector<double> scales = thresholds.scales;
  if (scales.empty()) {
    double floor_scale = std::max(4.0 * cloud.meta.resolution, diam / 1024.0);
    for (int j = 3; j <= 10; ++j) {
      double eps = diam * std::pow(2.0, -j);
      if (eps < floor_scale && scales.size() >= 4) break;
      scales.push_back(eps);
    }
  }
  rep.scales = scales;

  BoxDimResult bd = box_dimension(cloud, scales);
  rep.dim_estimate = bd.estimate;
  rep.dim_stderr = bd.stderr_;
  if (k >= cloud.dim()) {
    // the ambient space itself is a k-plane containing the cloud
    rep.sphere_residual = 0.0;
  } else {
    try {
      SphereFit fit = fit_generalized_sphere(cloud, k);
      rep.sphere_residual = fit.residual;
    } catch (const DegeneracyError&) {
      rep.sphere_residual = std::numeric_limits<double>::infinity();
    }
  }
  if (rep.sphere_residual <= rep.sphere_tol)
    rep.verdict = "SPHERE";
  else if (rep.dim_estimate - 2.0 * rep.dim_stderr > double(k))
    rep.verdict = "FRACTAL";
  else
    rep.verdict = "INCONCLUSIVE";
  return rep;
}

}  // namespace rigidlab

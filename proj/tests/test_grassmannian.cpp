#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "rigidlab/subspace.hpp"

#include <cmath>
#include <random>

using namespace rigidlab;
using namespace rigidlab::testutil;

namespace {

Subspace random_subspace(int d, int k, std::mt19937_64& rng) {
  std::vector<Vector> vs;
  for (int i = 0; i < k; ++i) vs.push_back(random_vector(d, rng));
  return orthonormal_frame(vs, d);
}

}  // namespace

TEST_CASE("frames from spanning sets") {
  std::mt19937_64 rng(31);
  Vector a = random_vector(5, rng), b = random_vector(5, rng);
  Subspace s = orthonormal_frame({a, b, Vector(a + b), Vector(2 * a)}, 5);
  CHECK(s.dim() == 2);
  // frame orthonormal
  Matrix g = s.frame().transpose() * s.frame();
  CHECK((g - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  // original vectors are fixed by the projector
  CHECK((s.project(a) - a).norm() < 1e-9);
  CHECK((s.project(b) - b).norm() < 1e-9);
  CHECK(Subspace::zero(4).dim() == 0);
  Subspace axes = Subspace::coordinate_axes(4, {0, 2});
  CHECK(axes.project(Vector::Ones(4))(1) == doctest::Approx(0.0));
  CHECK(axes.project(Vector::Ones(4))(0) == doctest::Approx(1.0));
}

TEST_CASE("metric determinant") {
  std::mt19937_64 rng(37);
  Subspace v = random_subspace(6, 3, rng);
  CHECK(metric_det(v, v) == doctest::Approx(1.0).epsilon(1e-10));
  // orthogonal line pair
  Subspace e0 = Subspace::coordinate_axes(3, {0});
  Subspace e1 = Subspace::coordinate_axes(3, {1});
  CHECK(metric_det(e0, e1) == doctest::Approx(0.0));
  // rotation by theta between lines in the plane
  for (double th : {0.1, 0.7, 1.3}) {
    Vector u(2);
    u << std::cos(th), std::sin(th);
    Subspace l = orthonormal_frame({u}, 2);
    CHECK(metric_det(Subspace::coordinate_axes(2, {0}), l) ==
          doctest::Approx(std::cos(th)).epsilon(1e-12));
  }
  // dim V < dim W forces 0
  Subspace plane = random_subspace(5, 2, rng);
  Subspace line = random_subspace(5, 1, rng);
  CHECK(metric_det(line, plane) == doctest::Approx(0.0));
  CHECK(metric_det(plane, line) <= 1.0);
}

TEST_CASE("directed and symmetric distances") {
  Subspace e01 = Subspace::coordinate_axes(4, {0, 1});
  Subspace e0 = Subspace::coordinate_axes(4, {0});
  Subspace e2 = Subspace::coordinate_axes(4, {2});
  CHECK(dist_directed(e0, e01) == doctest::Approx(0.0));
  CHECK(dist_directed(e01, e0) == doctest::Approx(1.0));
  CHECK(dist_directed(e0, e2) == doctest::Approx(1.0));
  CHECK(dist_grassmann(e0, e01) == doctest::Approx(1.0));
  // line at angle theta to a line: distance sin(theta)
  for (double th : {0.2, 0.9}) {
    Vector u(2);
    u << std::cos(th), std::sin(th);
    CHECK(dist_directed(orthonormal_frame({u}, 2),
                        Subspace::coordinate_axes(2, {0})) ==
          doctest::Approx(std::sin(th)).epsilon(1e-12));
  }
  CHECK(dist_directed(Subspace::zero(4), e0) == doctest::Approx(0.0));
}

TEST_CASE("epsilon intersection of planes") {
  // two planes in R^3 sharing the x-axis, tilted by theta
  double th = 0.5;
  Vector u(3), w(3);
  u << 0, 1, 0;
  w << 0, std::cos(th), std::sin(th);
  Subspace p1 = orthonormal_frame({Vector(Vector::Unit(3, 0)), u}, 3);
  Subspace p2 = orthonormal_frame({Vector(Vector::Unit(3, 0)), w}, 3);
  Subspace small = epsilon_intersection(p1, p2, 0.05);
  CHECK(small.dim() == 1);
  CHECK(dist_directed(small, Subspace::coordinate_axes(3, {0})) < 1e-9);
  Subspace big = epsilon_intersection(p1, p2, std::sin(th) + 0.01);
  CHECK(big.dim() == 2);
  // always contained in V1 by construction
  CHECK(dist_directed(big, p1) < 1e-9);
}

TEST_CASE("epsilon intersection property suite (small)") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> kd(1, 5);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Subspace v1 = random_subspace(10, kd(rng), rng);
    Subspace v2 = random_subspace(10, kd(rng), rng);
    for (double eps : {0.05, 0.2, 0.5}) {
      Subspace v = epsilon_intersection(v1, v2, eps);
      CHECK(dist_directed(v, v1) <= eps + 1e-9);
      CHECK(dist_directed(v, v2) <= eps + 1e-9);
      for (int t = 0; t < 20; ++t) {
        Vector w = random_vector(10, rng);
        w /= w.norm();
        double lhs = (w - v.project(w)).norm();
        double rhs = std::max((w - v1.project(w)).norm(),
                              (w - v2.project(w)).norm());
        CHECK(lhs <= (3.0 / eps) * rhs + 1e-9);
        ++checked;
      }
    }
  }
  CHECK(checked == 100 * 3 * 20);
}

TEST_CASE("projective cones") {
  Vector apex = Vector::Zero(2);
  ConeSpec cone(apex, Subspace::coordinate_axes(2, {0}), 0.5);
  Vector in(2), out(2);
  in << 1.0, 0.2;
  out << 0.2, 1.0;
  CHECK(in_projective_cone(in, cone));
  CHECK(!in_projective_cone(out, cone));
  CHECK(in_projective_cone(apex, cone));  // apex trivially inside
  CHECK_THROWS_AS(ConeSpec(apex, Subspace::coordinate_axes(2, {0}), 1.5),
                  ParameterError);
}

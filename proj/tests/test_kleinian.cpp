#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "rigidlab/schottky.hpp"

#include <cmath>

using namespace rigidlab;
using namespace rigidlab::testutil;

namespace {

SchottkyGroup two_pair_group(double r) {
  auto circ = [](double x, double rad) {
    Vector c(2);
    c << x, 0.0;
    return std::make_pair(c, rad);
  };
  return SchottkyGroup::from_circle_pairs({circ(-3, r), circ(1, r)},
                                          {circ(-1, r), circ(3, r)});
}

}  // namespace

TEST_CASE("group construction and ping-pong certification") {
  SchottkyGroup g = two_pair_group(0.4);
  CHECK(g.n_pairs() == 2);
  CHECK(g.n_letters() == 4);
  CHECK(g.has_regions());
  // letters come in inverse pairs
  for (int s = 0; s < 4; s += 2)
    CHECK(g.letter(s).compose(g.letter(s + 1))
              .approx_equal(MobiusMap::identity(2), 1e-9));
  // overlapping circles cannot ping-pong
  CHECK_THROWS_AS(two_pair_group(1.5), ParameterError);

  // mismatched inverse pairing is rejected
  MobiusMap a = MobiusMap::similarity(2.0, Matrix::Identity(2, 2),
                                      Vector::Zero(2));
  Vector c0(2), c1(2);
  c0 << -1, 0;
  c1 << 1, 0;
  std::vector<OrientedSphere> regs = {OrientedSphere::ball(c0, 0.3),
                                      OrientedSphere::ball(c1, 0.3)};
  CHECK_THROWS_AS(SchottkyGroup({a, a}, regs), ParameterError);
}

TEST_CASE("orbit enumeration matches the free-group count") {
  SchottkyGroup g = two_pair_group(0.4);
  int L = 10;
  auto orbit = enumerate_orbit(g, L);
  std::vector<std::int64_t> per_len(L + 1, 0);
  for (const auto& e : orbit) ++per_len[e.word.size()];
  CHECK(per_len[0] == 1);
  std::int64_t expect = 4;
  for (int n = 1; n <= L; ++n) {
    CHECK(per_len[n] == expect);  // 2m(2m-1)^(n-1)
    expect *= 3;
  }
  // words are reduced: no letter followed by its inverse
  for (const auto& e : orbit)
    for (size_t i = 1; i < e.word.size(); ++i)
      CHECK(e.word[i] != SchottkyGroup::inverse_letter(e.word[i - 1]));
  // displacements are nonnegative and grow with word length on average
  CHECK(orbit[0].displacement == 0.0);
  CHECK_THROWS_AS(enumerate_orbit(g, 20, 1000), ResourceError);
}

TEST_CASE("elementary group: exact displacements, exponent zero") {
  MobiusMap h = MobiusMap::similarity(0.5, Matrix::Identity(2, 2),
                                      Vector::Zero(2));
  SchottkyGroup g = SchottkyGroup::elementary(h);
  CHECK(!g.has_regions());
  auto orbit = enumerate_orbit(g, 40);
  CHECK(int(orbit.size()) == 1 + 2 * 40);
  for (const auto& e : orbit) {
    // the extension of x -> x/2 moves (0,1) along the vertical geodesic
    CHECK(e.displacement ==
          doctest::Approx(double(e.word.size()) * std::log(2.0)).epsilon(1e-9));
  }
  ExponentEstimate est = exponent_from_orbit(orbit, 40);
  CHECK(!est.inconclusive);
  CHECK(std::abs(est.delta_hat) <= 0.05);
}

TEST_CASE("poincare series partial sums") {
  SchottkyGroup g = two_pair_group(0.4);
  auto orbit = enumerate_orbit(g, 8);
  double s_small = poincare_series_partial(orbit, 0.1);
  double s_big = poincare_series_partial(orbit, 5.0);
  CHECK(s_small > s_big);             // monotone in s
  CHECK(s_big >= 1.0);                // identity contributes e^0
  CHECK(s_big < 1.1);                 // everything else is tiny at s=5
  CHECK_THROWS_AS(poincare_series_partial(orbit, -1.0), ParameterError);
}

TEST_CASE("exponent estimate brackets the series' critical exponent") {
  SchottkyGroup g = two_pair_group(0.4);
  int L = 10;
  auto orbit = enumerate_orbit(g, L);
  ExponentEstimate est = exponent_from_orbit(orbit, L);
  CHECK(!est.inconclusive);
  CHECK(est.shells_used >= 4);
  CHECK(est.delta_hat > 0.0);
  CHECK(est.delta_hat < 0.5);
  // the partial sums must diverge below and stay bounded above the exponent
  double below = poincare_series_partial(orbit, 0.0);
  double above = poincare_series_partial(orbit, 1.0);
  CHECK(below > above);
}

TEST_CASE("boundary cloud") {
  SchottkyGroup g = two_pair_group(0.4);
  WeightedCloud c = boundary_cloud(g, 8);
  CHECK(c.dim() == 2);
  CHECK(c.size() == 4 * 2187);  // words of length exactly 8
  CHECK(c.weights.sum() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.weights.minCoeff() > 0.0);
  // deep orbit points accumulate inside the four defining disks
  for (int i = 0; i < c.size(); ++i) {
    double x = c.pts(i, 0);
    CHECK(std::abs(c.pts(i, 1)) < 0.5);
    bool near = std::abs(x + 3) < 0.5 || std::abs(x + 1) < 0.5 ||
                std::abs(x - 1) < 0.5 || std::abs(x - 3) < 0.5;
    CHECK(near);
  }
}

TEST_CASE("radial witnesses") {
  SchottkyGroup g = two_pair_group(0.4);
  auto orbit = enumerate_orbit(g, 10);
  // attracting fixed point of generator 0: iterate it from its disk center
  Point fp(g.region(0).center());
  for (int it = 0; it < 40; ++it) fp = g.letter(0).apply(fp);
  RadialVerdict yes = is_radial_witness(g, fp.coords(), orbit, 10.0);
  CHECK(yes.radial);
  CHECK(int(yes.witness_words.size()) >= 5);
  // a point far from the limit set sees no conical approach
  Vector far(2);
  far << 0.0, 5.0;
  RadialVerdict no = is_radial_witness(g, far, orbit, 10.0);
  CHECK(!no.radial);
  CHECK_THROWS_AS(is_radial_witness(g, far, orbit, -1.0), ParameterError);
}

#pragma once

#include "rigidlab/cifs.hpp"
#include "rigidlab/mobius.hpp"

#include <random>
#include <vector>

namespace rigidlab::testutil {

inline Matrix random_rotation(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

inline Vector random_vector(int d, std::mt19937_64& rng, double spread = 1.0) {
  std::normal_distribution<double> g(0.0, spread);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = g(rng);
  return v;
}

// factors kept near unit scale so long products stay well conditioned
inline MobiusMap random_similarity_map(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.6, 1.6);
  return MobiusMap::similarity(u(rng), random_rotation(d, rng),
                               random_vector(d, rng, 0.7));
}

inline MobiusMap random_inversion(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.8, 1.25);
  return MobiusMap::sphere_inversion(Point(random_vector(d, rng, 1.0)),
                                     u(rng));
}

// random word of <= max_len elementary factors; returns the factors
inline std::vector<MobiusMap> random_word(int d, int max_len,
                                          std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<MobiusMap> fs;
  int n = len(rng);
  for (int i = 0; i < n; ++i)
    fs.push_back(coin(rng) ? random_inversion(d, rng)
                           : random_similarity_map(d, rng));
  return fs;
}

inline MobiusMap compose_word(const std::vector<MobiusMap>& fs) {
  MobiusMap m = fs.front();
  for (size_t i = 1; i < fs.size(); ++i) m = fs[i].compose(m);
  return m;  // fs applied left-to-right: last factor outermost
}

// words whose product stays well conditioned: entry magnitude <= mag_cap,
// so the Q-defect floor eps * mag^2 stays below 1e-10
inline std::vector<MobiusMap> random_bounded_word(int d, int max_len,
                                                  std::mt19937_64& rng,
                                                  double mag_cap = 300.0) {
  for (;;) {
    auto fs = random_word(d, max_len, rng);
    MobiusMap m = compose_word(fs);
    if (m.lorentz().cwiseAbs().maxCoeff() <= mag_cap) return fs;
  }
}

// standard middle-thirds Cantor system on [0,1]
inline CIFS cantor_thirds() {
  Matrix id = Matrix::Identity(1, 1);
  std::vector<ContractionPtr> maps = {
      std::make_shared<MobiusContraction>(
          MobiusMap::similarity(1.0 / 3.0, id, Vector::Zero(1))),
      std::make_shared<MobiusContraction>(
          MobiusMap::similarity(1.0 / 3.0, id, Vector::Constant(1, 2.0 / 3.0))),
  };
  Vector c = Vector::Constant(1, 0.5);
  return CIFS(std::move(maps), Region::ball(c, 0.5), "cantor-thirds");
}

// four-corner Cantor set in the plane: 4 maps of ratio 1/4 at the corners
// of the unit square (purely unrectifiable, projections null a.e.)
inline CIFS four_corner_cantor() {
  Matrix id = Matrix::Identity(2, 2);
  std::vector<ContractionPtr> maps;
  double corners[4][2] = {{0, 0}, {0.75, 0}, {0, 0.75}, {0.75, 0.75}};
  for (auto& c : corners) {
    Vector t(2);
    t << c[0], c[1];
    maps.push_back(std::make_shared<MobiusContraction>(
        MobiusMap::similarity(0.25, id, t)));
  }
  Vector mid = Vector::Constant(2, 0.5);
  return CIFS(std::move(maps), Region::ball(mid, std::sqrt(0.5)),
              "four-corner");
}

inline CIFS sierpinski() {
  Matrix id = Matrix::Identity(2, 2);
  std::vector<ContractionPtr> maps;
  double verts[3][2] = {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
  for (auto& v : verts) {
    Vector t(2);
    t << v[0] / 2.0, v[1] / 2.0;
    maps.push_back(std::make_shared<MobiusContraction>(
        MobiusMap::similarity(0.5, id, t)));
  }
  Vector c(2);
  c << 0.5, std::sqrt(3.0) / 6.0;
  return CIFS(std::move(maps), Region::ball(c, 0.578), "sierpinski");
}

}  // namespace rigidlab::testutil

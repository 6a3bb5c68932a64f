#include "rigidlab/antoine.hpp"

#include <cmath>

namespace rigidlab {

CIFS make_antoine(int n_links, double rho, double R, double r) {
  if (n_links < 3) throw ParameterError("antoine needs at least 3 links");
  if (!(rho > 0 && rho < 1)) throw ParameterError("link ratio must be in (0,1)");
  if (!(R > 0 && r > 0 && r < R))
    throw ParameterError("need 0 < torus_minor < torus_major");

  // each link torus is bounded by a ball of radius rho*(R+r) at its center
  const double ball_r = rho * (R + r);
  std::vector<Vector> centers(n_links);
  std::vector<Matrix> rots(n_links);
  Matrix rx90(3, 3);
  rx90 << 1, 0, 0, 0, 0, -1, 0, 1, 0;  // quarter turn about x
  for (int j = 0; j < n_links; ++j) {
    double th = 2.0 * M_PI * j / n_links;
    Vector c(3);
    c << R * std::cos(th), R * std::sin(th), 0.0;
    centers[j] = c;
    Matrix rz(3, 3);
    rz << std::cos(th), -std::sin(th), 0, std::sin(th), std::cos(th), 0, 0, 0,
        1;
    rots[j] = (j % 2 == 1) ? Matrix(rz * rx90) : rz;
  }

  // adjacent links must stay apart and every link inside the big torus
  for (int j = 0; j < n_links; ++j) {
    int k = (j + 1) % n_links;
    double gap = (centers[j] - centers[k]).norm() - 2.0 * ball_r;
    if (gap <= 0)
      throw ParameterError("antoine geometry infeasible: links " +
                           std::to_string(j) + " and " + std::to_string(k) +
                           " overlap (gap " + std::to_string(gap) + ")");
  }
  if (ball_r >= r)
    throw ParameterError(
        "antoine geometry infeasible: link ball radius " +
        std::to_string(ball_r) + " does not fit inside tube radius " +
        std::to_string(r));

  std::vector<ContractionPtr> maps;
  for (int j = 0; j < n_links; ++j)
    maps.push_back(std::make_shared<MobiusContraction>(
        MobiusMap::similarity(rho, rots[j], centers[j])));
  Region seed = Region::ball(Vector::Zero(3), R + r);
  CIFS c(std::move(maps), std::move(seed),
         "antoine-n" + std::to_string(n_links));
  if (c.certificate().tag != Separation::SSC)
    throw ParameterError("antoine construction failed its own separation");
  CIFS out = std::move(c);
  out.set_metadata("moran_dimension",
                   std::log(double(n_links)) / std::log(1.0 / rho));
  return out;
}

}  // namespace rigidlab

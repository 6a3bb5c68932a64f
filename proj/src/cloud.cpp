#include "rigidlab/cloud.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace rigidlab {

void WeightedCloud::validate() const {
  if (pts.rows() != weights.size())
    throw ParameterError("cloud points/weights length mismatch");
  if ((weights.array() < 0).any())
    throw ParameterError("cloud weights must be nonnegative");
  if (std::abs(weights.sum() - meta.total_mass) > 1e-9 * (1 + meta.total_mass))
    throw ParameterError("cloud weights do not sum to total_mass");
}

double WeightedCloud::diameter_estimate() const {
  if (size() == 0) return 0.0;
  Vector lo = pts.colwise().minCoeff();
  Vector hi = pts.colwise().maxCoeff();
  return (hi - lo).norm();
}

void write_cloud_csv(const WeightedCloud& c, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ParameterError("cannot open " + path + " for writing");
  for (int j = 0; j < c.dim(); ++j) std::fprintf(f, "x%d,", j);
  std::fprintf(f, "weight\n");
  for (int i = 0; i < c.size(); ++i) {
    for (int j = 0; j < c.dim(); ++j)
      std::fprintf(f, "%.17g,", c.pts(i, j));
    std::fprintf(f, "%.17g\n", c.weights(i));
  }
  std::fclose(f);
}

WeightedCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  std::string header;
  if (!std::getline(in, header))
    throw ParameterError(path + ": empty cloud file");
  int ncols = 1;
  for (char ch : header)
    if (ch == ',') ++ncols;
  int d = ncols - 1;
  if (d < 1) throw ParameterError(path + ": need at least one coordinate column");
  std::vector<double> vals;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int got = 0;
    while (std::getline(ss, cell, ',')) {
      vals.push_back(std::stod(cell));
      ++got;
    }
    if (got != ncols)
      throw ParameterError(path + ": ragged row " + std::to_string(rows + 2));
    ++rows;
  }
  if (rows == 0) throw ParameterError(path + ": no data rows");
  WeightedCloud c;
  c.pts = Matrix(rows, d);
  c.weights = Vector(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < d; ++j) c.pts(i, j) = vals[i * ncols + j];
    c.weights(i) = vals[i * ncols + d];
  }
  c.meta.total_mass = c.weights.sum();
  return c;
}

void write_cloud_ply(const WeightedCloud& c, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ParameterError("cannot open " + path + " for writing");
  const int d = std::min(c.dim(), 3);
  std::fprintf(f,
               "ply\nformat binary_little_endian 1.0\nelement vertex %d\n",
               c.size());
  const char* names[3] = {"x", "y", "z"};
  for (int j = 0; j < 3; ++j)
    std::fprintf(f, "property double %s\n", names[j]);
  std::fprintf(f, "end_header\n");
  for (int i = 0; i < c.size(); ++i) {
    double xyz[3] = {0, 0, 0};
    for (int j = 0; j < d; ++j) xyz[j] = c.pts(i, j);
    std::fwrite(xyz, sizeof(double), 3, f);
  }
  std::fclose(f);
}

}  // namespace rigidlab

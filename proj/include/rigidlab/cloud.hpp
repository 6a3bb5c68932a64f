#pragma once

#include "rigidlab/core.hpp"

#include <cstdint>
#include <string>

namespace rigidlab {

// Sampled measure: rows of `pts` are points, `weights` sum to total_mass.
struct WeightedCloud {
  Matrix pts;      // N x d
  Vector weights;  // N
  struct Meta {
    std::string system_id;
    int depth = 0;
    std::uint64_t seed = 0;
    double total_mass = 1.0;
    double resolution = 0.0;  // spatial scale below which structure is fake
  } meta;

  int size() const { return static_cast<int>(pts.rows()); }
  int dim() const { return static_cast<int>(pts.cols()); }
  void validate() const;
  double diameter_estimate() const;  // bounding-box diagonal
};

void write_cloud_csv(const WeightedCloud& c, const std::string& path);
WeightedCloud read_cloud_csv(const std::string& path);
void write_cloud_ply(const WeightedCloud& c, const std::string& path);

}  // namespace rigidlab

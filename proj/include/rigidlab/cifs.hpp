#pragma once

#include "rigidlab/cloud.hpp"
#include "rigidlab/contraction.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rigidlab {

enum class Separation { SSC, OSC, FAIL, UNCERTIFIED };

struct SeparationCertificate {
  Separation tag = Separation::UNCERTIFIED;
  double gap = 0.0;    // smallest pairwise gap between image regions
  int pair_a = -1, pair_b = -1;  // offending / extremal pair
  std::string note;
};

std::string separation_name(Separation s);

using SymbolicWord = std::vector<int>;

class CIFS {
 public:
  CIFS(std::vector<ContractionPtr> maps, Region seed, std::string id);
  // constructor for systems whose certificate is established externally
  CIFS(std::vector<ContractionPtr> maps, Region seed, std::string id,
       SeparationCertificate cert);

  int dim() const { return seed_.dim(); }
  int alphabet_size() const { return static_cast<int>(maps_.size()); }
  const Region& seed() const { return seed_; }
  const std::string& id() const { return id_; }
  const ContractionMap& map(int a) const { return *maps_[a]; }
  const SeparationCertificate& certificate() const { return cert_; }
  bool all_exact_ratios() const;
  double sup_ratio() const;  // max over maps of sup |u'| on the seed
  double moran_dimension() const;  // metadata; meaningful for equal ratios

  void set_metadata(std::string key, double value);
  double metadata(const std::string& key, double fallback) const;

 private:
  void validate();
  std::vector<ContractionPtr> maps_;
  Region seed_;
  std::string id_;
  SeparationCertificate cert_;
  std::vector<std::pair<std::string, double>> meta_;
};

SeparationCertificate check_separation(const CIFS& c);

// (1/n) log sum over n-letter words of ||u_w'||^delta, with exact per-letter
// ratios when available (then the value is n-independent).
double pressure(const CIFS& c, double delta, int n,
                std::int64_t word_budget = 4'000'000);

struct BowenResult {
  double delta = 0.0;
  double pressure_residual = 0.0;
  int words_length = 1;
  bool exact = true;
};
BowenResult bowen_parameter(const CIFS& c, double tol = 1e-12);

Vector code_point(const CIFS& c, const SymbolicWord& w,
                  const Vector& basepoint);
double cylinder_weight(const CIFS& c, const SymbolicWord& w, double delta);

WeightedCloud sample_limit_set(const CIFS& c, int n_points, int depth,
                               double delta, std::uint64_t rng_seed);

// deterministic substream generator used by all sampling code
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace rigidlab

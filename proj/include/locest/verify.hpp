#pragma once

#include <cstddef>
#include <cstdint>

#include "locest/checks.hpp"
#include "locest/distributions.hpp"

namespace locest {

/// Random valid model from the smooth and piecewise families.
DensityModel random_model(Rng& rng);

CheckReport verify_hellinger(std::uint64_t seed, std::size_t sandwich_pairs = 200);

struct SweepVerifyOptions {
  std::size_t cases = 1000;
  std::size_t max_n = 200;
  std::uint64_t seed = 1;
  /// every k-th instance draws from a small value set to force ties
  std::size_t tie_every = 4;
};

CheckReport verify_sweepline(const SweepVerifyOptions& opt);

CheckReport verify_tournament(std::uint64_t seed, std::size_t trials);

/// Fraction of runs in which no first-half sample lands within delta_1 of the
/// center, where delta_1 has central mass 2 ln(2/delta) / n.
struct CandidateCoverage {
  double delta_1 = 0.0;
  std::size_t runs = 0;
  std::size_t misses = 0;
  double threshold = 0.0;  // delta/2 + 3 binomial standard deviations
};
CandidateCoverage candidate_coverage(const DensityModel& model, std::size_t n, double delta, std::size_t runs,
                                     std::uint64_t seed);

}  // namespace locest

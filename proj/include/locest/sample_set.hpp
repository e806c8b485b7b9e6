#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "locest/distributions.hpp"

namespace locest {

/// Sorted sample values plus where they came from.
struct SampleSet {
  std::vector<double> values;
  std::optional<std::uint64_t> seed;
  std::string model_json;

  std::size_t size() const noexcept { return values.size(); }
  bool is_sorted() const;
};

/// n independent draws, in draw order.
std::vector<double> draw_unsorted(const DensityModel& model, std::size_t n, Rng& rng);
/// n draws from stream 0 of `seed`, sorted non-decreasing.
SampleSet sample(const DensityModel& model, std::size_t n, std::uint64_t seed);

/// One value per line; blank lines and lines starting with '#' are skipped.
std::vector<double> read_values(std::istream& in);
/// Header comment `# seed=<n> model=<json>` when provenance is known.
void write_sample_set(std::ostream& out, const SampleSet& s);

}  // namespace locest

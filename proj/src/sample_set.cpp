#include "locest/sample_set.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "locest/errors.hpp"
#include "locest/model_json.hpp"

namespace locest {

bool SampleSet::is_sorted() const { return std::is_sorted(values.begin(), values.end()); }

std::vector<double> draw_unsorted(const DensityModel& model, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (double& x : out) x = model.draw(rng);
  return out;
}

SampleSet sample(const DensityModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("sample: n must be at least 1");
  Rng rng(seed);
  SampleSet s;
  s.values = draw_unsorted(model, n, rng);
  std::sort(s.values.begin(), s.values.end());
  s.seed = seed;
  s.model_json = model_to_json(model).dump();
  return s;
}

std::vector<double> read_values(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    const char* first = line.data() + b;
    const char* last = line.data() + e + 1;
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
      throw ParameterError("line " + std::to_string(lineno) + ": not a finite number: " + line);
    out.push_back(v);
  }
  return out;
}

void write_sample_set(std::ostream& out, const SampleSet& s) {
  if (s.seed || !s.model_json.empty()) {
    out << "# seed=" << (s.seed ? std::to_string(*s.seed) : std::string("none"));
    if (!s.model_json.empty()) out << " model=" << s.model_json;
    out << '\n';
  }
  char buf[32];
  for (double x : s.values) {
    std::snprintf(buf, sizeof buf, "%.17g\n", x);
    out << buf;
  }
}

}  // namespace locest

#include "locest/reference_oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "locest/errors.hpp"

namespace locest {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::size_t count_closed(std::span<const double> x, double lo, double hi) {
  if (hi < lo) return 0;
  return static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), hi) -
                                  std::lower_bound(x.begin(), x.end(), lo));
}

std::size_t count_half_open(std::span<const double> x, double lo, double hi) {
  if (!(hi > lo)) return 0;
  return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), hi) -
                                  std::lower_bound(x.begin(), x.end(), lo));
}

IntervalTest interval_test(std::span<const double> x, double center, double a, double b, double gamma) {
  if (!(a >= 0.0 && a < b)) throw DomainError("interval_test: need 0 <= a < b");
  IntervalTest t;
  t.center = center;
  t.a = a;
  t.b = b;
  t.L = count_closed(x, center - b, center - a);
  t.R = count_closed(x, center + a, center + b);
  const double stat = std::abs(std::sqrt(static_cast<double>(t.L)) - std::sqrt(static_cast<double>(t.R)));
  t.verdict = stat > gamma ? Verdict::Fail : Verdict::Pass;
  return t;
}

HeavyWitness enumerate_heavy_lower_witness(std::span<const double> x, double gamma, std::size_t ell) {
  const std::size_t n = x.size();
  if (ell == 0 || ell > n) throw DomainError("ell must lie in [1, n]");
  HeavyWitness best{-kInf, 0, 0};
  const auto cap = left_count_cap(ell, gamma);
  if (!cap) return best;
  for (std::size_t r = 0; r + ell <= n; ++r) {
    const double d = x[r + ell - 1] - x[r];
    for (std::size_t l = 0; l <= r; ++l) {
      if (count_half_open(x, x[l] - d, x[l]) > *cap) continue;
      const double m = midpoint(x[l], x[r]);
      if (m > best.value) best = {m, l, r};
    }
  }
  return best;
}

double enumerate_heavy_lower_bound(std::span<const double> x, double gamma, std::size_t ell) {
  return enumerate_heavy_lower_witness(x, gamma, ell).value;
}

double enumerate_heavy_upper_bound(std::span<const double> x, double gamma, std::size_t ell) {
  std::vector<double> reflected(x.rbegin(), x.rend());
  for (double& v : reflected) v = -v;
  return -enumerate_heavy_lower_bound(reflected, gamma, ell);
}

FeasibleInterval naive_feasible_scan(std::span<const double> x, double gamma) {
  FeasibleInterval out{-kInf, kInf, Status::Fail};
  for (std::size_t ell = 1; ell <= x.size(); ell *= 2) {
    out.lower = std::max(out.lower, enumerate_heavy_lower_bound(x, gamma, ell));
    out.upper = std::min(out.upper, enumerate_heavy_upper_bound(x, gamma, ell));
  }
  out.status = out.lower <= out.upper ? Status::Feasible : Status::Fail;
  return out;
}

std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> decompose_interval(
    std::size_t l, std::size_t r) {
  if (r < l) throw DomainError("decompose_interval: empty range");
  const std::size_t N = r - l + 1;
  const std::size_t P = std::bit_floor(N);
  return {{l, l + P - 1}, {r - P + 1, r}};
}

}  // namespace locest

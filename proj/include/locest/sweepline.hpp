#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace locest {

enum class Exec { Serial, Parallel };

/// [1/sqrt(n), 2/sqrt(n), 4/sqrt(n), ..., sqrt(n+1)].
std::vector<double> build_gamma_list(std::size_t n);

/// ceil((sqrt(ell) - gamma)^2) - 1, or nothing when sqrt(ell) <= gamma.
std::optional<std::size_t> left_count_cap(std::size_t ell, double gamma);

/// Midpoint used everywhere centers are formed; exact under negation.
inline double midpoint(double a, double b) { return 0.5 * a + 0.5 * b; }

struct SweepCounters {
  std::size_t pushes = 0;
  std::size_t pops = 0;
  std::size_t scanned = 0;
};

/// Largest center at which an ell-heavy test with the heavy side on the right
/// fails at threshold gamma; -inf if none. `x` must be sorted.
double biggest_lower_bound(std::span<const double> x, double gamma, std::size_t ell,
                           SweepCounters* counters = nullptr);
/// Mirror image: smallest failing center with the heavy side on the left; +inf if none.
double smallest_upper_bound(std::span<const double> x, double gamma, std::size_t ell,
                            SweepCounters* counters = nullptr);

enum class Status { Feasible, Fail };

struct FeasibleInterval {
  double lower = 0.0;
  double upper = 0.0;
  Status status = Status::Fail;
  bool feasible() const noexcept { return status == Status::Feasible; }
  bool operator==(const FeasibleInterval&) const = default;
};

struct EllBounds {
  std::size_t ell = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool operator==(const EllBounds&) const = default;
};

/// 1, 2, 4, ..., 2^floor(log2 n).
std::vector<std::size_t> ell_grid(std::size_t n);

FeasibleInterval fixed_gamma_check(std::span<const double> x, double gamma, Exec exec = Exec::Parallel,
                                   std::vector<EllBounds>* per_ell = nullptr);

struct EstimateReport {
  double mu_hat = 0.0;
  double gamma_star = 0.0;
  std::size_t gamma_index = 0;
  std::size_t n = 0;
  FeasibleInterval interval;
  std::vector<EllBounds> per_ell;
  std::vector<double> gammas;
  double wall_time_s = 0.0;
};

/// Point returned from a feasible interval: midpoint, finite end +/- sample
/// range, or the sample median when both ends are infinite.
double select_point(const FeasibleInterval& interval, std::span<const double> sorted);

EstimateReport estimate_sorted(std::span<const double> sorted, Exec exec = Exec::Parallel);
/// Sorts a copy when needed.
EstimateReport estimate(std::vector<double> samples, Exec exec = Exec::Parallel);

}  // namespace locest

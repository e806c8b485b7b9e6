#include "locest/sweepline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "locest/errors.hpp"

namespace locest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Forward {
  std::span<const double> x;
  double operator()(std::size_t i) const { return x[i]; }
};

struct Reflected {
  std::span<const double> x;
  double operator()(std::size_t i) const { return -x[x.size() - 1 - i]; }
};

template <class Value>
double sweep(const Value& X, std::size_t n, double gamma, std::size_t ell, SweepCounters* counters) {
  if (ell == 0 || ell > n) throw DomainError("ell must lie in [1, n]");
  const auto cap_opt = left_count_cap(ell, gamma);
  if (!cap_opt) return -kInf;
  const std::size_t cap = *cap_opt;
  const std::size_t last = n - ell;  // right intervals start at 0..last

  const auto right_length = [&](std::size_t i) { return X(i + ell - 1) - X(i); };
  const auto left_length = [&](std::size_t i) { return i <= cap ? kInf : X(i) - X(i - cap - 1); };

  std::vector<char> non_dominated(last + 1, 0);
  double shortest = kInf;
  for (std::size_t k = last + 1; k-- > 0;) {
    const double len = right_length(k);
    if (len < shortest) {
      shortest = len;
      non_dominated[k] = 1;
    }
  }

  double bound = -kInf;
  // (index, LeftLength) pairs with strictly decreasing lengths
  std::vector<std::pair<std::size_t, double>> stack;
  stack.reserve(64);
  std::size_t pushes = 0, pops = 0;
  for (std::size_t i = 0; i <= last; ++i) {
    const double li = left_length(i);
    while (!stack.empty() && stack.back().second <= li) {
      stack.pop_back();
      ++pops;
    }
    stack.emplace_back(i, li);
    ++pushes;
    if (non_dominated[i]) {
      const double ri = right_length(i);
      while (!stack.empty() && stack.back().second <= ri) {
        stack.pop_back();
        ++pops;
      }
      if (!stack.empty()) bound = std::max(bound, midpoint(X(stack.back().first), X(i)));
    }
  }
  if (counters) {
    counters->pushes += pushes;
    counters->pops += pops;
    counters->scanned += last + 1;
  }
  return bound;
}

}  // namespace

std::vector<double> build_gamma_list(std::size_t n) {
  if (n == 0) throw DomainError("gamma list needs n >= 1");
  const double root = std::sqrt(static_cast<double>(n));
  const double large = std::sqrt(static_cast<double>(n) + 1.0);
  std::vector<double> out{1.0 / root};
  for (double g = 2.0 / root; g < large; g *= 2.0) out.push_back(g);
  out.push_back(large);
  return out;
}

std::optional<std::size_t> left_count_cap(std::size_t ell, double gamma) {
  const double r = std::sqrt(static_cast<double>(ell));
  if (r <= gamma) return std::nullopt;
  const double d = r - gamma;
  return static_cast<std::size_t>(std::ceil(d * d)) - 1;
}

double biggest_lower_bound(std::span<const double> x, double gamma, std::size_t ell, SweepCounters* counters) {
  return sweep(Forward{x}, x.size(), gamma, ell, counters);
}

double smallest_upper_bound(std::span<const double> x, double gamma, std::size_t ell, SweepCounters* counters) {
  return -sweep(Reflected{x}, x.size(), gamma, ell, counters);
}

std::vector<std::size_t> ell_grid(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t ell = 1; ell <= n; ell *= 2) out.push_back(ell);
  return out;
}

FeasibleInterval fixed_gamma_check(std::span<const double> x, double gamma, Exec exec,
                                   std::vector<EllBounds>* per_ell) {
  const std::vector<std::size_t> ells = ell_grid(x.size());
  const auto m = static_cast<long long>(ells.size());
  std::vector<EllBounds> bounds(ells.size());

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < m; ++k) {
      const std::size_t ell = ells[static_cast<std::size_t>(k)];
      bounds[static_cast<std::size_t>(k)] = {ell, biggest_lower_bound(x, gamma, ell),
                                             smallest_upper_bound(x, gamma, ell)};
    }
  } else {
    for (long long k = 0; k < m; ++k) {
      const std::size_t ell = ells[static_cast<std::size_t>(k)];
      bounds[static_cast<std::size_t>(k)] = {ell, biggest_lower_bound(x, gamma, ell),
                                             smallest_upper_bound(x, gamma, ell)};
    }
  }

  FeasibleInterval out{-kInf, kInf, Status::Fail};
  for (const auto& b : bounds) {
    out.lower = std::max(out.lower, b.lower);
    out.upper = std::min(out.upper, b.upper);
  }
  out.status = out.lower <= out.upper ? Status::Feasible : Status::Fail;
  if (per_ell) *per_ell = std::move(bounds);
  return out;
}

double select_point(const FeasibleInterval& iv, std::span<const double> sorted) {
  const bool lo_fin = std::isfinite(iv.lower), hi_fin = std::isfinite(iv.upper);
  const double range = sorted.back() - sorted.front();
  if (lo_fin && hi_fin) return midpoint(iv.lower, iv.upper);
  if (lo_fin) return iv.lower + range;
  if (hi_fin) return iv.upper - range;
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : midpoint(sorted[n / 2 - 1], sorted[n / 2]);
}

EstimateReport estimate_sorted(std::span<const double> sorted, Exec exec) {
  if (sorted.empty()) throw DomainError("estimate needs at least one sample");
  for (double v : sorted)
    if (!std::isfinite(v)) throw DomainError("estimate: samples must be finite");
  const auto t0 = std::chrono::steady_clock::now();
  EstimateReport rep;
  rep.n = sorted.size();
  rep.gammas = build_gamma_list(sorted.size());

  std::size_t lo = 0, hi = rep.gammas.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (fixed_gamma_check(sorted, rep.gammas[mid], exec).feasible())
      hi = mid;
    else
      lo = mid + 1;
  }
  rep.gamma_index = lo;
  rep.gamma_star = rep.gammas[lo];
  rep.interval = fixed_gamma_check(sorted, rep.gamma_star, exec, &rep.per_ell);
  rep.mu_hat = select_point(rep.interval, sorted);
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

EstimateReport estimate(std::vector<double> samples, Exec exec) {
  for (double v : samples)
    if (!std::isfinite(v)) throw DomainError("estimate: samples must be finite");
  if (!std::is_sorted(samples.begin(), samples.end())) std::sort(samples.begin(), samples.end());
  return estimate_sorted(samples, exec);
}

}  // namespace locest

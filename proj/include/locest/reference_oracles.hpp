#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "locest/sweepline.hpp"

namespace locest {

enum class Verdict { Pass, Fail };

struct IntervalTest {
  double center = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::size_t L = 0;
  std::size_t R = 0;
  Verdict verdict = Verdict::Pass;
};

/// Counts samples in the closed intervals [c-b, c-a] and [c+a, c+b]; fails
/// when |sqrt L - sqrt R| > gamma.
IntervalTest interval_test(std::span<const double> sorted, double center, double a, double b, double gamma);

/// Number of sorted samples in [lo, hi] / [lo, hi).
std::size_t count_closed(std::span<const double> sorted, double lo, double hi);
std::size_t count_half_open(std::span<const double> sorted, double lo, double hi);

struct HeavyWitness {
  double value;
  std::size_t l;  // left interval ends at X_l
  std::size_t r;  // right interval is [X_r, X_{r+ell-1}]
};

/// Brute force over every (l, r) pair; O(n^2 log n).
double enumerate_heavy_lower_bound(std::span<const double> sorted, double gamma, std::size_t ell);
double enumerate_heavy_upper_bound(std::span<const double> sorted, double gamma, std::size_t ell);
/// The maximizing pair, or value -inf with l = r = 0 when no test fails.
HeavyWitness enumerate_heavy_lower_witness(std::span<const double> sorted, double gamma, std::size_t ell);

FeasibleInterval naive_feasible_scan(std::span<const double> sorted, double gamma);

/// Splits the index range [l, r] (N = r - l + 1 samples) into [l, l+P-1] and
/// [r-P+1, r] with P = 2^floor(log2 N).
std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> decompose_interval(
    std::size_t l, std::size_t r);

}  // namespace locest

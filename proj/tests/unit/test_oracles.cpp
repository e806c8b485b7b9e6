#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "locest/errors.hpp"
#include "locest/reference_oracles.hpp"
#include "locest/rng.hpp"
#include "locest/sweepline.hpp"

using namespace locest;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Left window just below X_l and the right block starting at X_r, counted straight from the definition.
double definition_lower_bound(const std::vector<double>& x, double gamma, std::size_t ell) {
  if (std::sqrt(static_cast<double>(ell)) <= gamma) return -kInf;
  const double d = std::sqrt(static_cast<double>(ell)) - gamma;
  const auto cap = static_cast<std::size_t>(std::ceil(d * d)) - 1;
  double best = -kInf;
  for (std::size_t r = 0; r + ell <= x.size(); ++r) {
    const double width = x[r + ell - 1] - x[r];
    for (std::size_t l = 0; l <= r; ++l) {
      std::size_t count = 0;
      for (double v : x) count += v >= x[l] - width && v < x[l];
      if (count <= cap) best = std::max(best, 0.5 * x[l] + 0.5 * x[r]);
    }
  }
  return best;
}
}  // namespace

TEST(IntervalTest, StrictThreshold) {
  // four samples at -1.5, nine at +1.5
  std::vector<double> x(4, -1.5);
  x.insert(x.end(), 9, 1.5);
  const IntervalTest t = interval_test(x, 0.0, 1.0, 2.0, 0.9);
  EXPECT_EQ(t.L, 4u);
  EXPECT_EQ(t.R, 9u);
  EXPECT_EQ(t.verdict, Verdict::Fail);
  EXPECT_EQ(interval_test(x, 0.0, 1.0, 2.0, 1.0).verdict, Verdict::Pass);
}

TEST(IntervalTest, BalancedAlwaysPasses) {
  const std::vector<double> x{-2, -1, 1, 2};
  for (double g : {0.0, 0.1, 5.0}) EXPECT_EQ(interval_test(x, 0.0, 0.5, 3.0, g).verdict, Verdict::Pass);
}

TEST(IntervalTest, ClosedEndpoints) {
  const std::vector<double> x{-2, -1, 1, 2};
  const IntervalTest t = interval_test(x, 0.0, 1.0, 2.0, 0.0);
  EXPECT_EQ(t.L, 2u);
  EXPECT_EQ(t.R, 2u);
  EXPECT_THROW(interval_test(x, 0.0, 1.0, 1.0, 0.0), DomainError);
  EXPECT_THROW(interval_test(x, 0.0, -0.5, 1.0, 0.0), DomainError);
}

TEST(Counts, HalfOpenAndClosed) {
  const std::vector<double> x{0, 1, 1, 2, 3};
  EXPECT_EQ(count_closed(x, 1, 2), 3u);
  EXPECT_EQ(count_half_open(x, 1, 2), 2u);
  EXPECT_EQ(count_half_open(x, 0, 0), 0u);
}

TEST(Enumeration, Examples) {
  const std::vector<double> x{0, 1, 2, 3};
  EXPECT_EQ(enumerate_heavy_lower_bound(x, 0.1, 2), 2.0);
  EXPECT_EQ(enumerate_heavy_upper_bound(x, 0.1, 2), 1.0);
  EXPECT_EQ(enumerate_heavy_lower_bound(x, 2.0, 4), -kInf);
  EXPECT_EQ(enumerate_heavy_upper_bound(x, 2.0, 4), kInf);
  const HeavyWitness w = enumerate_heavy_lower_witness(x, 0.1, 2);
  EXPECT_EQ(w.value, 2.0);
  EXPECT_EQ(w.l, 2u);
  EXPECT_EQ(w.r, 2u);
}

TEST(Enumeration, MatchesDefinition) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<double> x(n);
    for (double& v : x) v = k % 3 == 0 ? static_cast<double>(rng.below(5)) : rng.normal();
    std::sort(x.begin(), x.end());
    for (double g : build_gamma_list(n))
      for (std::size_t ell : ell_grid(n))
        ASSERT_EQ(std::bit_cast<std::uint64_t>(enumerate_heavy_lower_bound(x, g, ell)),
                  std::bit_cast<std::uint64_t>(definition_lower_bound(x, g, ell)));
  }
}

TEST(Enumeration, NeverOutOfBounds) {
  Rng rng(2);
  for (std::size_t n = 1; n <= 64; ++n) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    std::sort(x.begin(), x.end());
    for (std::size_t ell = 1; ell <= n; ++ell) {
      EXPECT_NO_THROW(enumerate_heavy_lower_bound(x, 0.01, ell));
      EXPECT_NO_THROW(enumerate_heavy_upper_bound(x, 0.01, ell));
    }
  }
}

TEST(NaiveScan, EqualsFastPath) {
  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + rng.below(150);
    std::vector<double> x(n);
    for (double& v : x) v = k % 4 == 0 ? static_cast<double>(rng.below(1 + n / 4)) : rng.normal();
    std::sort(x.begin(), x.end());
    const auto gammas = build_gamma_list(n);
    const double g = gammas[rng.below(gammas.size())];
    ASSERT_EQ(naive_feasible_scan(x, g), fixed_gamma_check(x, g)) << "n=" << n << " gamma=" << g;
  }
}

TEST(NaiveScan, Reflection) {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 1 + rng.below(60);
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    std::sort(x.begin(), x.end());
    std::vector<double> y(x.rbegin(), x.rend());
    for (double& v : y) v = -v;
    for (double g : build_gamma_list(n)) {
      const FeasibleInterval a = naive_feasible_scan(x, g), b = naive_feasible_scan(y, g);
      EXPECT_EQ(a.lower, -b.upper);
      EXPECT_EQ(a.upper, -b.lower);
      EXPECT_EQ(a.status, b.status);
    }
  }
}

TEST(Decompose, PowerOfTwoHalves) {
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t l = rng.below(1000), r = l + rng.below(1000);
    const auto [left, right] = decompose_interval(l, r);
    const std::size_t N = r - l + 1;
    const std::size_t P = std::size_t{1} << static_cast<unsigned>(std::floor(std::log2(static_cast<double>(N))));
    EXPECT_EQ(left.first, l);
    EXPECT_EQ(right.second, r);
    EXPECT_EQ(left.second - left.first + 1, P);
    EXPECT_EQ(right.second - right.first + 1, P);
    EXPECT_LE(right.first, left.second + 1);  // together they cover [l, r]
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "locest/bench_harness.hpp"
#include "locest/errors.hpp"
#include "locest/tournament.hpp"
#include "locest/verify.hpp"

using namespace locest;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

TournamentConfig cfg_with(double delta, double c_test) {
  TournamentConfig c;
  c.delta = delta;
  c.c_test = c_test;
  return c;
}

LikelihoodTable table_of(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return LikelihoodTable{rows, cols, std::move(data)};
}

BatchPlan plan_of(std::size_t k) {
  BatchPlan p;
  p.k_num_tests = k;
  p.n_test = 1;
  return p;
}
}  // namespace

TEST(BatchPlan, Examples) {
  const BatchPlan a = batch_plan(1000, cfg_with(0.1, 0.05));
  EXPECT_EQ(a.n_test, 5u);
  EXPECT_EQ(a.k_num_tests, 100u);
  const BatchPlan b = batch_plan(8, cfg_with(0.25, 0.99));
  EXPECT_EQ(b.n_test, 2u);
  EXPECT_EQ(b.k_num_tests, 2u);
}

TEST(BatchPlan, DisjointConsecutiveSecondHalf) {
  for (std::size_t n : {8u, 100u, 1001u, 12345u}) {
    const BatchPlan p = batch_plan(n, n == 8 ? cfg_with(0.25, 0.99) : cfg_with(0.05, 0.5));
    ASSERT_EQ(p.ranges.size(), p.k_num_tests);
    std::size_t at = n / 2;
    for (const auto& [b, e] : p.ranges) {
      EXPECT_EQ(b, at);
      EXPECT_EQ(e - b, p.n_test);
      at = e;
    }
    EXPECT_LE(at, n);
    EXPECT_EQ(at - n / 2, p.k_num_tests * p.n_test);
  }
}

TEST(BatchPlan, Errors) {
  EXPECT_THROW(batch_plan(3, TournamentConfig{}), ParameterError);
  try {
    batch_plan(10, TournamentConfig{});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("n_test"), std::string::npos);
  }
  EXPECT_THROW(batch_plan(1000, cfg_with(0.6, 0.05)), ParameterError);
  EXPECT_THROW(batch_plan(1000, cfg_with(0.1, 1.0)), ParameterError);
}

TEST(LikelihoodTable, DirectRecomputation) {
  const DensityModel g = gaussian(5.0, 2.0);  // table uses the shape only
  const std::vector<double> x = trial_sample(g.shifted(-5.0), 400, 3);
  const BatchPlan plan = batch_plan(x.size(), cfg_with(0.05, 0.2));
  const std::vector<double> cand{-0.3, 0.0, 0.7};
  const LikelihoodTable t = log_likelihood_table(g, cand, x, plan);
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t b = 0; b < plan.k_num_tests; ++b) {
      double direct = 0.0;
      for (std::size_t s = plan.ranges[b].first; s < plan.ranges[b].second; ++s) {
        const double z = (x[s] - cand[i]) / 2.0;
        direct += -0.5 * z * z - std::log(2.0 * std::sqrt(2 * M_PI));
      }
      EXPECT_NEAR(t.at(i, b), direct, 1e-10 * std::abs(direct));
    }
}

TEST(LikelihoodTable, ZeroDensityIsMinusInfinity) {
  const DensityModel u = uniform(0.0, 1.0);
  const std::vector<double> x = trial_sample(u, 200, 4);
  const BatchPlan plan = batch_plan(x.size(), cfg_with(0.05, 0.2));
  const std::vector<double> cand{0.0, 10.0};
  const LikelihoodTable t = log_likelihood_table(u, cand, x, plan);
  for (std::size_t b = 0; b < t.cols; ++b) {
    EXPECT_TRUE(std::isfinite(t.at(0, b)));
    EXPECT_EQ(t.at(1, b), -kInf);
  }
}

TEST(LikelihoodTable, ReflectedBatchSymmetric) {
  const DensityModel tri = triangle();
  std::vector<double> x = trial_sample(tri, 300, 5);
  std::vector<double> y = x;
  for (double& v : y) v = -v;
  const BatchPlan plan = batch_plan(x.size(), cfg_with(0.05, 0.2));
  const std::vector<double> c{0.1}, mc{-0.1};
  EXPECT_EQ(log_likelihood_table(tri, c, x, plan).data, log_likelihood_table(tri, mc, y, plan).data);
}

TEST(MajorityDuel, IdenticalRowsTie) {
  const auto t = table_of(2, 3, {1, 2, 3, 1, 2, 3});
  const DuelRecord d = majority_duel(t, 0, 1, plan_of(3));
  EXPECT_EQ(d.wins_i, 0u);
  EXPECT_EQ(d.wins_j, 0u);
  EXPECT_EQ(d.result, DuelResult::NoStrictMajority);
}

TEST(MajorityDuel, Dominance) {
  const auto t = table_of(2, 3, {0, 0, 0, -kInf, -kInf, -kInf});
  EXPECT_EQ(majority_duel(t, 0, 1, plan_of(3)).result, DuelResult::IWins);
  EXPECT_EQ(majority_duel(t, 1, 0, plan_of(3)).result, DuelResult::JWins);
}

TEST(MajorityDuel, StrictMajorityOfAllBatches) {
  // two wins, one loss, one -inf tie out of four: 2 is not > 4/2
  const auto t = table_of(2, 4, {1, 1, 0, -kInf, 0, 0, 1, -kInf});
  const DuelRecord d = majority_duel(t, 0, 1, plan_of(4));
  EXPECT_EQ(d.wins_i, 2u);
  EXPECT_EQ(d.wins_j, 1u);
  EXPECT_EQ(d.result, DuelResult::NoStrictMajority);
}

TEST(MajorityDuel, MatchesLikelihoodRatio) {
  const DensityModel g = gaussian(0.0, 1.0);
  const std::vector<double> x = trial_sample(g, 600, 6);
  const BatchPlan plan = batch_plan(x.size(), cfg_with(0.05, 0.2));
  const std::vector<double> cand{-0.2, 0.15};
  const LikelihoodTable t = log_likelihood_table(g, cand, x, plan);
  std::size_t wi = 0, wj = 0;
  for (const auto& [b, e] : plan.ranges) {
    // log ratio of N(a,1) to N(c,1) is sum (a - c)(x - (a + c)/2)
    double llr = 0.0;
    for (std::size_t s = b; s < e; ++s) llr += (cand[0] - cand[1]) * (x[s] - 0.5 * (cand[0] + cand[1]));
    wi += llr > 0;
    wj += llr < 0;
  }
  const DuelRecord d = majority_duel(t, 0, 1, plan);
  EXPECT_EQ(d.wins_i, wi);
  EXPECT_EQ(d.wins_j, wj);
}

TEST(Champion, Examples) {
  const std::vector<double> one{2.5};
  EXPECT_EQ(select_champion(one, std::vector<double>{-1.0}), 2.5);

  DuelMatrix cyc{3, std::vector<std::uint8_t>(9, 0)};
  cyc.beats[0 * 3 + 2] = 1;
  cyc.beats[2 * 3 + 1] = 1;
  cyc.beats[1 * 3 + 0] = 1;
  const std::vector<double> c{0.0, 1.0, 10.0};
  EXPECT_EQ(farthest_loss(c, cyc), (std::vector<double>{1.0, 9.0, 10.0}));
  EXPECT_EQ(select_champion(c, cyc), 0.0);

  DuelMatrix undefeated{3, std::vector<std::uint8_t>(9, 0)};
  undefeated.beats[1 * 3 + 0] = 1;
  undefeated.beats[1 * 3 + 2] = 1;
  EXPECT_EQ(select_champion(c, undefeated), 1.0);
  EXPECT_THROW(select_champion(std::vector<double>{}, std::vector<double>{}), DomainError);
}

TEST(Champion, TiesResolveSymmetrically) {
  const std::vector<double> c{-1.0, 0.0, 3.0};
  EXPECT_EQ(select_champion(c, std::vector<double>{-1.0, 0.5, -1.0}), 1.0);
  EXPECT_EQ(select_champion(c, std::vector<double>{2.0, 1.0, 1.0}), 1.5);
}

TEST(FarthestLoss, FastMatchesSerial) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DensityModel m = seed % 2 ? triangle() : gaussian(0.0, 1.0);
    const std::vector<double> x = trial_sample(m, 500, seed);
    const BatchPlan plan = batch_plan(x.size(), TournamentConfig{});
    std::vector<double> c(x.begin(), x.begin() + 250);
    std::sort(c.begin(), c.end());
    const LikelihoodTable t = log_likelihood_table(m, c, x, plan);
    const auto ref = farthest_loss(c, all_duels(t, plan));
    EXPECT_EQ(ref, farthest_loss_fast(c, t, plan, Exec::Serial));
    EXPECT_EQ(ref, farthest_loss_fast(c, t, plan, Exec::Parallel));
  }
}

TEST(PruneWindow, ContainsModeQuantile) {
  for (std::size_t m : {10u, 500u, 5000u})
    for (double q : {0.0, 0.2, 0.5, 0.9, 1.0})
      for (double mult : {0.1, 1.0, 4.0}) {
        const auto [s, e] = prune_window(m, 2 * m, q, mult);
        const auto k = static_cast<std::size_t>(std::llround(q * static_cast<double>(m - 1)));
        EXPECT_LE(s, k);
        EXPECT_GT(e, k);
        EXPECT_LE(e, m);
      }
}

TEST(Tournament, UniformAccuracy) {
  const DensityModel u = uniform(0.0, 1.0);
  EXPECT_LE(std::abs(tournament_estimate(u, trial_sample(u, 10000, 1)).mu_hat), 0.02);
}

TEST(Tournament, SerialEqualsParallel) {
  const DensityModel g = gaussian(0.0, 1.0);
  const auto x = trial_sample(g, 3000, 2);
  EXPECT_EQ(tournament_estimate(g, x, {}, Exec::Serial).mu_hat, tournament_estimate(g, x, {}, Exec::Parallel).mu_hat);
}

TEST(Tournament, TranslationEquivariance) {
  const DensityModel t = triangle();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto x = trial_sample(t, 2000, seed);
    const double base = tournament_estimate(t, x).mu_hat;
    for (double& v : x) v += 0.75;
    EXPECT_NEAR(tournament_estimate(t, x).mu_hat, base + 0.75, 1e-12);
  }
}

TEST(Tournament, ReflectionExact) {
  const DensityModel g = gaussian(0.0, 1.0);
  auto x = trial_sample(g, 2000, 7);
  const double base = tournament_estimate(g, x).mu_hat;
  for (double& v : x) v = -v;
  EXPECT_EQ(tournament_estimate(g, x).mu_hat, -base);
}

TEST(Tournament, ChampionLosingToTruthStaysWithinRadius) {
  // the true center joins the list; if it beats the champion, the champion's radius covers the gap
  const DensityModel g = gaussian(0.0, 1.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = trial_sample(g, 1000, seed);
    const BatchPlan plan = batch_plan(x.size(), TournamentConfig{});
    std::vector<double> c(x.begin(), x.begin() + 500);
    c.push_back(0.0);
    std::sort(c.begin(), c.end());
    const std::size_t truth = static_cast<std::size_t>(std::find(c.begin(), c.end(), 0.0) - c.begin());
    const LikelihoodTable t = log_likelihood_table(g, c, x, plan);
    const DuelMatrix d = all_duels(t, plan);
    const auto rad = farthest_loss(c, d);
    const double champ = select_champion(c, rad);
    const auto j = static_cast<std::size_t>(std::find(c.begin(), c.end(), champ) - c.begin());
    if (j < c.size() && d.wins(truth, j)) {
      EXPECT_LE(std::abs(champ), rad[j]);
    }
  }
}

TEST(Tournament, ShuffleDeterministic) {
  const DensityModel g = gaussian(0.0, 1.0);
  auto x = trial_sample(g, 2000, 8);
  std::sort(x.begin(), x.end());
  TournamentConfig c;
  c.shuffle_seed = 42;
  const double a = tournament_estimate(g, x, c).mu_hat;
  EXPECT_EQ(a, tournament_estimate(g, x, c).mu_hat);
  EXPECT_LT(std::abs(a), 0.2);
}

TEST(Tournament, SmallSampleWarning) {
  const DensityModel g = gaussian(0.0, 1.0);
  EXPECT_FALSE(tournament_estimate(g, trial_sample(g, 400, 1)).warnings.empty());
  EXPECT_TRUE(tournament_estimate(g, trial_sample(g, 2000, 1)).warnings.empty());
}

TEST(CandidateCoverage, WithinSlack) {
  const CandidateCoverage c = candidate_coverage(triangle(), 2000, 0.05, 500, 1);
  EXPECT_GT(c.delta_1, 0.0);
  EXPECT_LE(static_cast<double>(c.misses) / c.runs, c.threshold);
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locest/distributions.hpp"
#include "locest/sweepline.hpp"

namespace locest {

struct TournamentConfig {
  double c_test = 0.05;
  double delta = 0.05;
  bool prune_candidates = false;
  double prune_window_mult = 4.0;
  /// Permute the input with this seed before splitting into halves.
  std::optional<std::uint64_t> shuffle_seed;

  void validate() const;
};

struct BatchPlan {
  std::size_t n = 0;
  std::size_t n_test = 0;
  std::size_t k_num_tests = 0;
  /// Half-open [begin, end) sample index ranges, consecutive from floor(n/2).
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
};

/// n_test = floor(c_test * n / ln(n / delta)), k = floor((n/2) / n_test).
BatchPlan batch_plan(std::size_t n, const TournamentConfig& cfg);

/// Row-major candidates x batches table of summed log-likelihoods.
struct LikelihoodTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;
  double at(std::size_t i, std::size_t b) const { return data[i * cols + b]; }
};

/// Entry (i, b) = sum over batch b of log p0(x - candidates[i]), where p0 is
/// the model moved to center 0. -inf as soon as one factor vanishes.
LikelihoodTable log_likelihood_table(const DensityModel& model, std::span<const double> candidates,
                                     std::span<const double> samples, const BatchPlan& plan,
                                     Exec exec = Exec::Parallel);

enum class DuelResult { IWins, JWins, NoStrictMajority };

struct DuelRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t wins_i = 0;
  std::size_t wins_j = 0;
  DuelResult result = DuelResult::NoStrictMajority;
};

DuelRecord majority_duel(const LikelihoodTable& table, std::size_t i, std::size_t j, const BatchPlan& plan);

/// beats[i * m + j] != 0 when candidate i wins its duel against j.
struct DuelMatrix {
  std::size_t m = 0;
  std::vector<std::uint8_t> beats;
  bool wins(std::size_t i, std::size_t j) const { return beats[i * m + j] != 0; }
};

DuelMatrix all_duels(const LikelihoodTable& table, const BatchPlan& plan);

/// Farthest-loss distance per candidate; -1 marks a candidate that loses no duel.
std::vector<double> farthest_loss(std::span<const double> candidates, const DuelMatrix& duels);
/// Same quantity computed from rank-compressed batches, parallel over rows.
std::vector<double> farthest_loss_fast(std::span<const double> candidates, const LikelihoodTable& table,
                                       const BatchPlan& plan, Exec exec = Exec::Parallel);

/// Undefeated candidates win outright, otherwise the smallest farthest-loss
/// distance does; ties resolve to the midpoint of the smallest and largest
/// tied candidate values.
double select_champion(std::span<const double> candidates, std::span<const double> radius);
double select_champion(std::span<const double> candidates, const DuelMatrix& duels);

/// Order-statistic window of size ceil(mult * sqrt(n) * ln n) around the
/// model's mode quantile, taken from sorted candidates.
std::pair<std::size_t, std::size_t> prune_window(std::size_t m, std::size_t n, double mode_quantile, double mult);

struct TournamentResult {
  double mu_hat = 0.0;
  BatchPlan plan;
  std::vector<double> candidates;  // sorted, after pruning
  std::vector<double> radius;
  std::size_t undefeated = 0;
  double champion_radius = 0.0;
  std::vector<std::string> warnings;
};

/// Samples are used in the order given: the first floor(n/2) are candidates,
/// batches come from the rest.
TournamentResult tournament_estimate(const DensityModel& model, std::span<const double> samples,
                                     const TournamentConfig& cfg = {}, Exec exec = Exec::Parallel);

}  // namespace locest

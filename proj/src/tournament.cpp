#include "locest/tournament.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "locest/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace locest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

double row_entry(const DensityModel& p0, double theta, std::span<const double> samples,
                 std::pair<std::size_t, std::size_t> range) {
  double s = 0.0;
  for (std::size_t t = range.first; t < range.second; ++t) {
    const double lp = p0.log_pdf(samples[t] - theta);
    if (lp == -kInf) return -kInf;
    s += lp;
  }
  return s;
}

// Dense per-batch ranks: i beats j in batch b iff rank(i, b) > rank(j, b).
template <class Rank>
std::vector<Rank> rank_columns(const LikelihoodTable& t) {
  std::vector<Rank> ranks(t.rows * t.cols);
  std::vector<std::size_t> order(t.rows);
  for (std::size_t b = 0; b < t.cols; ++b) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return t.at(x, b) < t.at(y, b); });
    Rank r = 0;
    for (std::size_t q = 0; q < order.size(); ++q) {
      if (q > 0 && t.at(order[q], b) > t.at(order[q - 1], b)) ++r;
      ranks[order[q] * t.cols + b] = r;
    }
  }
  return ranks;
}

template <class Rank>
std::vector<double> radius_from_ranks(std::span<const double> cand, const std::vector<Rank>& ranks, std::size_t k,
                                      Exec exec) {
  const std::size_t m = cand.size();
  const int threads = exec == Exec::Parallel ? thread_count() : 1;
  std::vector<std::vector<double>> local(static_cast<std::size_t>(threads), std::vector<double>(m, -1.0));

  const auto row_pass = [&](std::size_t i, std::vector<double>& rad) {
    const Rank* ri = ranks.data() + i * k;
    for (std::size_t j = i + 1; j < m; ++j) {
      const Rank* rj = ranks.data() + j * k;
      std::size_t wi = 0, wj = 0;
      for (std::size_t b = 0; b < k; ++b) {
        wi += ri[b] > rj[b];
        wj += rj[b] > ri[b];
      }
      const double dist = std::abs(cand[i] - cand[j]);
      if (2 * wi > k) rad[j] = std::max(rad[j], dist);
      if (2 * wj > k) rad[i] = std::max(rad[i], dist);
    }
  };

  const auto mm = static_cast<long long>(m);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (long long i = 0; i < mm; ++i) row_pass(static_cast<std::size_t>(i), local[static_cast<std::size_t>(thread_id())]);
  } else {
    for (long long i = 0; i < mm; ++i) row_pass(static_cast<std::size_t>(i), local[0]);
  }
  std::vector<double> out = std::move(local[0]);
  for (std::size_t t = 1; t < local.size(); ++t)
    for (std::size_t j = 0; j < m; ++j) out[j] = std::max(out[j], local[t][j]);
  return out;
}

}  // namespace

void TournamentConfig::validate() const {
  if (!(c_test > 0.0 && c_test < 1.0)) throw ParameterError("c_test must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 0.5)) throw ParameterError("delta must lie in (0, 1/2)");
  if (prune_candidates && !(prune_window_mult > 0.0)) throw ParameterError("prune_window_mult must be positive");
}

BatchPlan batch_plan(std::size_t n, const TournamentConfig& cfg) {
  cfg.validate();
  if (n < 4) throw ParameterError("tournament needs at least 4 samples");
  const double nd = static_cast<double>(n);
  BatchPlan plan;
  plan.n = n;
  plan.n_test = static_cast<std::size_t>(std::floor(cfg.c_test * nd / std::log(nd / cfg.delta)));
  if (plan.n_test == 0) throw ParameterError("floor(c_test * n / ln(n / delta)) is 0: batch size n_test would be empty");
  plan.k_num_tests = static_cast<std::size_t>(std::floor((nd / 2.0) / static_cast<double>(plan.n_test)));
  if (plan.k_num_tests == 0)
    throw ParameterError("floor((n/2) / n_test) is 0: no complete batch fits in the second half");
  const std::size_t start = n / 2;
  for (std::size_t b = 0; b < plan.k_num_tests; ++b)
    plan.ranges.emplace_back(start + b * plan.n_test, start + (b + 1) * plan.n_test);
  return plan;
}

LikelihoodTable log_likelihood_table(const DensityModel& model, std::span<const double> candidates,
                                     std::span<const double> samples, const BatchPlan& plan, Exec exec) {
  for (double c : candidates)
    if (!std::isfinite(c)) throw DomainError("candidates must be finite");
  if (!plan.ranges.empty() && plan.ranges.back().second > samples.size())
    throw DomainError("batch plan exceeds the sample count");
  const DensityModel p0 = model.shifted(-model.center());
  LikelihoodTable t;
  t.rows = candidates.size();
  t.cols = plan.ranges.size();
  t.data.assign(t.rows * t.cols, 0.0);
  const auto rows = static_cast<long long>(t.rows);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < rows; ++i)
      for (std::size_t b = 0; b < t.cols; ++b)
        t.data[static_cast<std::size_t>(i) * t.cols + b] =
            row_entry(p0, candidates[static_cast<std::size_t>(i)], samples, plan.ranges[b]);
  } else {
    for (long long i = 0; i < rows; ++i)
      for (std::size_t b = 0; b < t.cols; ++b)
        t.data[static_cast<std::size_t>(i) * t.cols + b] =
            row_entry(p0, candidates[static_cast<std::size_t>(i)], samples, plan.ranges[b]);
  }
  return t;
}

DuelRecord majority_duel(const LikelihoodTable& table, std::size_t i, std::size_t j, const BatchPlan& plan) {
  if (i == j) throw DomainError("a candidate cannot duel itself");
  DuelRecord d{i, j, 0, 0, DuelResult::NoStrictMajority};
  for (std::size_t b = 0; b < table.cols; ++b) {
    const double a = table.at(i, b), c = table.at(j, b);
    if (a > c) ++d.wins_i;
    if (c > a) ++d.wins_j;
  }
  if (2 * d.wins_i > plan.k_num_tests)
    d.result = DuelResult::IWins;
  else if (2 * d.wins_j > plan.k_num_tests)
    d.result = DuelResult::JWins;
  return d;
}

DuelMatrix all_duels(const LikelihoodTable& table, const BatchPlan& plan) {
  DuelMatrix dm;
  dm.m = table.rows;
  dm.beats.assign(dm.m * dm.m, 0);
  for (std::size_t i = 0; i < dm.m; ++i)
    for (std::size_t j = i + 1; j < dm.m; ++j) {
      const DuelRecord d = majority_duel(table, i, j, plan);
      if (d.result == DuelResult::IWins) dm.beats[i * dm.m + j] = 1;
      if (d.result == DuelResult::JWins) dm.beats[j * dm.m + i] = 1;
    }
  return dm;
}

std::vector<double> farthest_loss(std::span<const double> candidates, const DuelMatrix& duels) {
  std::vector<double> rad(candidates.size(), -1.0);
  for (std::size_t j = 0; j < candidates.size(); ++j)
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (i != j && duels.wins(i, j)) rad[j] = std::max(rad[j], std::abs(candidates[i] - candidates[j]));
  return rad;
}

std::vector<double> farthest_loss_fast(std::span<const double> candidates, const LikelihoodTable& table,
                                       const BatchPlan& plan, Exec exec) {
  if (table.rows != candidates.size()) throw DomainError("table rows do not match candidates");
  (void)plan;
  if (table.rows < 65536) return radius_from_ranks(candidates, rank_columns<std::uint16_t>(table), table.cols, exec);
  return radius_from_ranks(candidates, rank_columns<std::uint32_t>(table), table.cols, exec);
}

double select_champion(std::span<const double> candidates, std::span<const double> radius) {
  if (candidates.empty()) throw DomainError("select_champion: no candidates");
  if (radius.size() != candidates.size()) throw DomainError("select_champion: radius size mismatch");
  const double best = *std::min_element(radius.begin(), radius.end());
  double lo = kInf, hi = -kInf;
  for (std::size_t j = 0; j < candidates.size(); ++j)
    if (radius[j] == best) {
      lo = std::min(lo, candidates[j]);
      hi = std::max(hi, candidates[j]);
    }
  return midpoint(lo, hi);
}

double select_champion(std::span<const double> candidates, const DuelMatrix& duels) {
  const auto rad = farthest_loss(candidates, duels);
  return select_champion(candidates, rad);
}

std::pair<std::size_t, std::size_t> prune_window(std::size_t m, std::size_t n, double mode_quantile, double mult) {
  const double nd = static_cast<double>(n);
  auto w = static_cast<std::size_t>(std::ceil(mult * std::sqrt(nd) * std::log(nd)));
  w = std::clamp<std::size_t>(w, 1, m);
  if ((m - w) % 2 == 1) ++w;  // keeps the window mirror-symmetric for a centered quantile
  const double start = mode_quantile * static_cast<double>(m - 1) - 0.5 * static_cast<double>(w - 1);
  const auto s = static_cast<std::size_t>(std::clamp(std::round(start), 0.0, static_cast<double>(m - w)));
  return {s, s + w};
}

TournamentResult tournament_estimate(const DensityModel& model, std::span<const double> samples,
                                     const TournamentConfig& cfg, Exec exec) {
  TournamentResult res;
  res.plan = batch_plan(samples.size(), cfg);
  const double n = static_cast<double>(samples.size());
  if (std::sqrt(n) < 6.0 * std::log(2.0 / cfg.delta))
    res.warnings.push_back("sqrt(n) < 6 ln(2/delta): the sample size is below the recommended range");

  std::vector<double> data(samples.begin(), samples.end());
  if (cfg.shuffle_seed) {
    Rng rng(*cfg.shuffle_seed, 0x5348u);
    for (std::size_t i = data.size(); i > 1; --i) std::swap(data[i - 1], data[rng.below(i)]);
  }

  std::vector<double> cand(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(data.size() / 2));
  std::sort(cand.begin(), cand.end());
  if (cfg.prune_candidates) {
    const double q = model.cdf(model.mode());
    const auto [s, e] = prune_window(cand.size(), data.size(), q, cfg.prune_window_mult);
    cand = std::vector<double>(cand.begin() + static_cast<std::ptrdiff_t>(s), cand.begin() + static_cast<std::ptrdiff_t>(e));
  }

  const LikelihoodTable table = log_likelihood_table(model, cand, data, res.plan, exec);
  if (exec == Exec::Serial)
    res.radius = farthest_loss(cand, all_duels(table, res.plan));
  else
    res.radius = farthest_loss_fast(cand, table, res.plan, exec);
  res.mu_hat = select_champion(cand, res.radius);
  res.undefeated = static_cast<std::size_t>(std::count(res.radius.begin(), res.radius.end(), -1.0));
  res.champion_radius = *std::min_element(res.radius.begin(), res.radius.end());
  res.candidates = std::move(cand);
  return res;
}

}  // namespace locest

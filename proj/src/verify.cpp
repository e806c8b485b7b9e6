#include "locest/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "locest/bench_harness.hpp"
#include "locest/hellinger.hpp"
#include "locest/reference_oracles.hpp"
#include "locest/sample_set.hpp"
#include "locest/sweepline.hpp"
#include "locest/tournament.hpp"

namespace locest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

double between(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

DensityModel random_model(Rng& rng) {
  const double c = between(rng, -2.0, 2.0);
  switch (rng.below(10)) {
    case 0:
      return gaussian(c, between(rng, 0.3, 3.0));
    case 1:
      return uniform(c, between(rng, 0.3, 3.0));
    case 2:
      return semicircle(c, between(rng, 0.3, 3.0));
    case 3:
      return mixture({0.5, 0.5}, {gaussian(0.0, between(rng, 0.5, 2.0)), uniform(0.0, between(rng, 0.5, 2.0))}, c);
    case 4:
      return unif_gauss_conv(c, between(rng, 0.3, 2.0), between(rng, 0.05, 1.0));
    case 5:
      return gaussian_scale_mixture(c, {0.5, 0.5}, {between(rng, 0.5, 2.0), between(rng, 0.05, 0.5)});
    case 6:
      return triangle(c);
    case 7:
      return step(random_step_params(rng.below(2) == 0 ? 0.25 : 0.125, rng), c);
    case 8:
      return mod_triangle(0.125, c);
    default:
      return dv_uniform(random_dv_params(static_cast<int>(2 + rng.below(3)), rng), c);
  }
}

CheckReport verify_hellinger(std::uint64_t seed, std::size_t sandwich_pairs) {
  CheckReport rep{"hellinger", {}};
  Rng rng(seed, 0x48u);

  double tens = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double h = rng.uniform();
    const double direct = 1.0 - (1.0 - h) * (1.0 - h);
    tens = std::max(tens, std::abs(tensorize(h, 2) - direct));
  }
  tens = std::max({tens, std::abs(tensorize(0.5, 2) - 0.75), std::abs(tensorize(0.3, 1) - 0.3), tensorize(0.0, 7)});
  rep.add(check_le("tensorize(h, 2) = 1 - (1 - h)^2 (max gap)", tens, 4e-16));

  const DensityModel u = uniform(0.0, 1.0), g = gaussian(0.0, 1.0);
  double dev_u = 0.0, dev_g = 0.0;
  for (int k = 1; k <= 40; ++k) {
    const double d = 0.05 * k;
    dev_u = std::max(dev_u, std::abs(sq_hellinger(u, u.shifted(d)).value - std::min(1.0, d / 2)));
    dev_g = std::max(dev_g, std::abs(sq_hellinger(g, g.shifted(d)).value - (1.0 - std::exp(-d * d / 8.0))));
  }
  rep.add(check_le("Uniform(-1,1) shift: d_h^2 = delta/2 (max gap)", dev_u, 1e-8, "delta in 0.05..2"));
  rep.add(check_le("N(0,1) shift: d_h^2 = 1 - exp(-delta^2/8) (max gap)", dev_g, 1e-8, "delta in 0.05..2"));

  double lo_slack = kInf, hi_slack = kInf;
  for (std::size_t k = 0; k < sandwich_pairs; ++k) {
    const DensityModel p = random_model(rng);
    const auto [a, b] = p.effective_support();
    const DensityModel q = p.shifted(between(rng, 0.0, 0.6) * (b - a));
    const double h = sq_hellinger(p, q).value;
    const double tv = tv_distance(p, q).value;
    lo_slack = std::min(lo_slack, tv - h);
    hi_slack = std::min(hi_slack, std::sqrt(2.0 * h) - tv);
  }
  const double tol = kDefaultHellingerTol;
  rep.add(check_ge("d_h^2 <= TV (min slack)", lo_slack, -2.0 * tol, std::to_string(sandwich_pairs) + " pairs"));
  rep.add(check_ge("TV <= sqrt(2 d_h^2) (min slack)", hi_slack, -2.0 * tol, std::to_string(sandwich_pairs) + " pairs"));

  double mass_slack = kInf;
  std::string where;
  const std::vector<std::pair<std::string, DensityModel>> unimodal{
      {"triangle", triangle()}, {"gaussian", gaussian(0.0, 1.0)}, {"step", step(random_step_params(0.125, rng))}};
  for (const auto& [name, p] : unimodal)
    for (int k = 1; k <= 20; ++k) {
      const double d = 0.05 * k;
      const double s = central_mass(p, 0.0, d) - sq_hellinger(p, p.shifted(d)).value;
      if (s < mass_slack) mass_slack = s, where = name + " delta=" + num(d);
    }
  rep.add(check_ge("d_h^2(P, P_delta) <= mass of [-delta, delta] (min slack)", mass_slack, -1e-8, "worst " + where));

  double step_slack = kInf;
  for (int k = 0; k < 20; ++k) {
    const DensityModel s = step(random_step_params(k % 2 ? 0.125 : 0.0625, rng));
    const double d = 0.5 * rng.uniform();
    step_slack = std::min(step_slack, 2.0 * d - sq_hellinger(s, s.shifted(d)).value);
  }
  rep.add(check_ge("Step_v: d_h^2 <= 2 delta (min slack)", step_slack, -1e-8, "20 random (v, delta)"));

  const double m_u = modulus(u, 0.25);
  rep.add(check_le("modulus(Uniform(-1,1), 0.25) = 0.5 (gap)", std::abs(m_u - 0.5), 1e-7));
  double worst_mono = 0.0;
  for (const DensityModel* p : {&u, &g}) {
    double prev = 0.0;
    for (double e : {0.0, 0.001, 0.01, 0.05, 0.1, 0.2, 0.4, 0.8}) {
      const double m = modulus(*p, e);
      worst_mono = std::max(worst_mono, prev - m);
      prev = m;
    }
  }
  rep.add(check_le("modulus non-decreasing in eps (max drop)", worst_mono, 1e-7));
  return rep;
}

CheckReport verify_sweepline(const SweepVerifyOptions& opt) {
  CheckReport rep{"sweepline", {}};
  Rng rng(opt.seed, 0x5357u);
  std::size_t instances = 0, tied = 0, comparisons = 0, mismatches = 0;
  std::size_t scan_checked = 0, scan_mismatch = 0, non_monotone = 0, work_violations = 0;
  std::size_t witnessed = 0, witness_failures = 0;
  std::string first_mismatch;

  for (std::size_t c = 0; c < opt.cases; ++c) {
    const std::size_t n = 1 + rng.below(opt.max_n);
    std::vector<double> x(n);
    const bool ties = opt.tie_every > 0 && c % opt.tie_every == 0;
    if (ties) {
      const std::uint64_t levels = 1 + rng.below(std::max<std::size_t>(2, n / 4));
      for (double& v : x) v = static_cast<double>(rng.below(levels));
      ++tied;
    } else {
      const double center = between(rng, -5.0, 5.0), scale = between(rng, 0.1, 10.0);
      for (double& v : x) v = center + scale * rng.normal();
    }
    std::sort(x.begin(), x.end());
    ++instances;

    const auto gammas = build_gamma_list(n);
    bool was_feasible = false;
    for (double gamma : gammas) {
      for (std::size_t ell : ell_grid(n)) {
        SweepCounters cnt;
        const double fast_lo = biggest_lower_bound(x, gamma, ell, &cnt);
        const double fast_hi = smallest_upper_bound(x, gamma, ell, &cnt);
        const HeavyWitness w = enumerate_heavy_lower_witness(x, gamma, ell);
        const double slow_hi = enumerate_heavy_upper_bound(x, gamma, ell);
        comparisons += 2;
        if (!same_bits(fast_lo, w.value) || !same_bits(fast_hi, slow_hi)) {
          ++mismatches;
          if (first_mismatch.empty())
            first_mismatch = "n=" + std::to_string(n) + " gamma=" + num(gamma) + " ell=" + std::to_string(ell);
        }
        if (cnt.pushes > cnt.scanned || cnt.pops > cnt.pushes) ++work_violations;

        if (std::isfinite(w.value)) {
          // re-run the witnessing test just left of the reported center
          const double d = x[w.r + ell - 1] - x[w.r];
          double gap = kInf;
          for (std::size_t k = 0; k < n; ++k) {
            if (k > 0 && x[k] > x[k - 1]) gap = std::min(gap, x[k] - x[k - 1]);
            const double off = std::abs(x[k] - (x[w.l] - d));
            if (off > 0.0) gap = std::min(gap, off);
          }
          const double delta = std::isfinite(gap) ? 0.25 * gap : 1.0;
          const double center = w.value - delta;
          const double a = x[w.r] - center - 0.5 * delta;
          const double b = x[w.r + ell - 1] - center + 0.5 * delta;
          const IntervalTest t = interval_test(x, center, a, b, gamma);
          ++witnessed;
          const bool ok = t.R >= ell && std::sqrt(static_cast<double>(t.R)) - std::sqrt(static_cast<double>(t.L)) > gamma;
          if (!ok) ++witness_failures;
        }
      }
      const FeasibleInterval fi = fixed_gamma_check(x, gamma, Exec::Serial);
      if (was_feasible && !fi.feasible()) ++non_monotone;
      was_feasible = was_feasible || fi.feasible();
      if (n <= 150 && scan_checked < 500 * gammas.size()) {
        ++scan_checked;
        if (!(naive_feasible_scan(x, gamma) == fi)) ++scan_mismatch;
        if (!(fixed_gamma_check(x, gamma, Exec::Parallel) == fi)) ++scan_mismatch;
      }
    }
  }
  rep.add(check_le("fast sweep vs enumeration oracle (mismatches)", static_cast<double>(mismatches), 0.0,
                   std::to_string(comparisons) + " comparisons over " + std::to_string(instances) + " instances, " +
                       std::to_string(tied) + " with ties" + (first_mismatch.empty() ? "" : "; first " + first_mismatch)));
  rep.add(check_ge("instances", static_cast<double>(instances), static_cast<double>(opt.cases)));
  rep.add(check_ge("instances with tied values", static_cast<double>(tied),
                   static_cast<double>(opt.tie_every ? opt.cases / opt.tie_every : 0)));
  rep.add(check_le("fixed_gamma_check vs naive scan (mismatches)", static_cast<double>(scan_mismatch), 0.0,
                   std::to_string(scan_checked) + " (instance, gamma) pairs"));
  rep.add(check_le("feasibility monotone in gamma (violations)", static_cast<double>(non_monotone), 0.0));
  rep.add(check_le("stack work per sweep within n (violations)", static_cast<double>(work_violations), 0.0));
  rep.add(check_le("failing test witnessed left of the bound (failures)", static_cast<double>(witness_failures), 0.0,
                   std::to_string(witnessed) + " finite bounds"));
  return rep;
}

CandidateCoverage candidate_coverage(const DensityModel& model, std::size_t n, double delta, std::size_t runs,
                                     std::uint64_t seed) {
  CandidateCoverage cov;
  cov.runs = runs;
  const double target = 2.0 * std::log(2.0 / delta) / static_cast<double>(n);
  const double mu = model.center();
  double lo = 0.0, hi = 1.0;
  while (central_mass(model, mu, hi) < target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (central_mass(model, mu, mid) < target ? lo : hi) = mid;
  }
  cov.delta_1 = hi;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::vector<double> draws = trial_sample(model, n, seed + r);
    bool hit = false;
    for (std::size_t k = 0; k < n / 2 && !hit; ++k) hit = std::abs(draws[k] - mu) <= cov.delta_1;
    if (!hit) ++cov.misses;
  }
  const double p = delta / 2;
  cov.threshold = p + 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(runs));
  return cov;
}

CheckReport verify_tournament(std::uint64_t seed, std::size_t trials) {
  CheckReport rep{"tournament", {}};
  TournamentConfig cfg;
  cfg.delta = 0.1;
  const BatchPlan a = batch_plan(1000, cfg);
  cfg = TournamentConfig{};
  cfg.delta = 0.25;
  cfg.c_test = 0.99;
  const BatchPlan b = batch_plan(8, cfg);
  const bool plans_ok = a.n_test == 5 && a.k_num_tests == 100 && b.n_test == 2 && b.k_num_tests == 2;
  rep.add({"batch plan arithmetic", plans_ok, plans_ok ? 1.0 : 0.0, 1.0, "n=1000 -> (5, 100); n=8 -> (2, 2)"});

  // serial reference vs rank-compressed parallel path, plus duel antisymmetry
  Rng rng(seed, 0x544eu);
  std::size_t mismatch = 0, asym = 0;
  for (int k = 0; k < 20; ++k) {
    const DensityModel m = k % 2 ? gaussian(0.0, 1.0) : uniform(0.0, 1.0);
    const auto draws = trial_sample(m, 200 + 20 * static_cast<std::size_t>(k), seed + static_cast<std::uint64_t>(k));
    const BatchPlan plan = batch_plan(draws.size(), TournamentConfig{});
    std::vector<double> cand(draws.begin(), draws.begin() + static_cast<std::ptrdiff_t>(draws.size() / 2));
    std::sort(cand.begin(), cand.end());
    const auto table = log_likelihood_table(m, cand, draws, plan, Exec::Serial);
    if (table.data != log_likelihood_table(m, cand, draws, plan, Exec::Parallel).data) ++mismatch;
    const DuelMatrix dm = all_duels(table, plan);
    if (farthest_loss(cand, dm) != farthest_loss_fast(cand, table, plan)) ++mismatch;
    for (int q = 0; q < 50; ++q) {
      const std::size_t i = rng.below(cand.size()), j = rng.below(cand.size());
      if (i == j) continue;
      const DuelRecord x = majority_duel(table, i, j, plan), y = majority_duel(table, j, i, plan);
      const bool ok = x.wins_i == y.wins_j && x.wins_j == y.wins_i &&
                      (x.result == DuelResult::IWins) == (y.result == DuelResult::JWins) &&
                      (x.result == DuelResult::NoStrictMajority) == (y.result == DuelResult::NoStrictMajority);
      if (!ok) ++asym;
    }
  }
  rep.add(check_le("serial and parallel tournament kernels agree (mismatches)", static_cast<double>(mismatch), 0.0,
                   "20 instances"));
  rep.add(check_le("duel antisymmetry (violations)", static_cast<double>(asym), 0.0));

  DuelMatrix dm;
  dm.m = 3;
  dm.beats.assign(9, 0);
  dm.beats[0 * 3 + 2] = 1;  // 0 beats 10
  dm.beats[2 * 3 + 1] = 1;  // 10 beats 1
  dm.beats[1 * 3 + 0] = 1;  // 1 beats 0
  const std::vector<double> cands{0.0, 1.0, 10.0};
  const double champ = select_champion(cands, dm);
  rep.add(check_le("champion of the {0, 1, 10} cycle is 0 (gap)", std::abs(champ), 0.0));

  std::vector<double> errs;
  TournamentConfig pruned;
  pruned.prune_candidates = true;
  pruned.prune_window_mult = 1.0;
  const DensityModel u = uniform(0.0, 1.0);
  for (std::size_t t = 0; t < trials; ++t)
    errs.push_back(std::abs(tournament_estimate(u, trial_sample(u, 10000, seed + t), pruned).mu_hat));
  std::sort(errs.begin(), errs.end());
  const double med = errs.empty() ? kInf : errs[errs.size() / 2];
  rep.add(check_le("Uniform(-1,1), n=10^4: median |error|", med, 0.02, std::to_string(trials) + " trials"));

  const CandidateCoverage cov = candidate_coverage(triangle(), 2000, 0.05, 500, seed);
  rep.add(check_le("first-half candidate within delta_1 (miss rate)",
                   static_cast<double>(cov.misses) / static_cast<double>(cov.runs), cov.threshold,
                   "delta_1=" + num(cov.delta_1) + ", 500 runs, Triangle n=2000"));
  return rep;
}

}  // namespace locest

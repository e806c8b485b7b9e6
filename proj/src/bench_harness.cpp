#include "locest/bench_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "locest/errors.hpp"
#include "locest/model_json.hpp"
#include "locest/sample_set.hpp"
#include "locest/sweepline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace locest {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : midpoint(v[n / 2 - 1], v[n / 2]);
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<NamedModel> default_families() {
  return {
      {"gaussian", gaussian(0.0, 1.0)},
      {"uniform", uniform(0.0, 1.0)},
      {"semicircle", semicircle(0.0, 1.0)},
      {"gauss_unif_mixture", mixture({0.5, 0.5}, {gaussian(0.0, 1.0), uniform(0.0, 1.0)})},
      {"unif_gauss_conv", unif_gauss_conv(0.0, 1.0, 0.1)},
      {"two_scale_gaussian", gaussian_scale_mixture(0.0, {0.5, 0.5}, {1.0, 0.01})},
  };
}

void BenchConfig::validate() const {
  if (trials < 1) throw ParameterError("bench: trials must be at least 1");
  if (distributions.empty()) throw ParameterError("bench: no distributions");
  if (n_grid.empty()) throw ParameterError("bench: empty n grid");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw ParameterError("bench: n must be at least 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw ParameterError("bench: n grid must be strictly ascending");
  }
  for (const auto& e : estimators)
    if (std::find(kEstimators.begin(), kEstimators.end(), e) == kEstimators.end())
      throw ParameterError("bench: unknown estimator '" + e + "'");
  if (std::find(estimators.begin(), estimators.end(), "tournament") != estimators.end()) {
    tournament.validate();
    if (n_grid.front() < 4) throw ParameterError("bench: the tournament estimator needs n >= 4");
  }
}

BenchConfig bench_config_from_json(const nlohmann::json& j) {
  BenchConfig cfg;
  if (j.contains("distributions")) {
    cfg.distributions.clear();
    for (const auto& d : j.at("distributions")) {
      const DensityModel m = model_from_json(d.contains("model") ? d.at("model") : d);
      const std::string name = d.value("name", m.kind());
      cfg.distributions.push_back({name, m});
    }
  }
  if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
  cfg.trials = j.value("trials", cfg.trials);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  if (j.contains("estimator")) cfg.estimators = {j.at("estimator").get<std::string>()};
  if (j.contains("estimators")) cfg.estimators = j.at("estimators").get<std::vector<std::string>>();
  cfg.output_path = j.value("output_path", cfg.output_path);
  cfg.timing = j.value("timing", cfg.timing);
  cfg.threads = j.value("threads", cfg.threads);
  if (j.contains("tournament")) {
    const auto& t = j.at("tournament");
    cfg.tournament.c_test = t.value("c_test", cfg.tournament.c_test);
    cfg.tournament.delta = t.value("delta", cfg.tournament.delta);
    cfg.tournament.prune_candidates = t.value("prune", cfg.tournament.prune_candidates);
    cfg.tournament.prune_window_mult = t.value("prune_window_mult", cfg.tournament.prune_window_mult);
  }
  return cfg;
}

std::vector<double> trial_sample(const DensityModel& model, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return draw_unsorted(model, n, rng);
}

double run_estimator(const std::string& estimator, const DensityModel& model, const std::vector<double>& draws,
                     const TournamentConfig& tcfg) {
  if (draws.empty()) throw ParameterError("estimator needs at least one sample");
  if (estimator == "fast") return estimate(draws).mu_hat;
  if (estimator == "tournament") return tournament_estimate(model, draws, tcfg).mu_hat;
  if (estimator == "sample_mean")
    return std::accumulate(draws.begin(), draws.end(), 0.0) / static_cast<double>(draws.size());
  if (estimator == "sample_median") return median_of(draws);
  if (estimator == "midrange") {
    const auto [lo, hi] = std::minmax_element(draws.begin(), draws.end());
    return midpoint(*lo, *hi);
  }
  throw ParameterError("unknown estimator '" + estimator + "'");
}

int resolve_threads(int requested) {
  int cap = 0;
  if (const char* env = std::getenv("MODULUS_EST_THREADS")) cap = std::atoi(env);
#ifdef _OPENMP
  int t = requested > 0 ? requested : omp_get_max_threads();
#else
  int t = 1;
#endif
  if (cap > 0) t = std::min(t, cap);
  return std::max(t, 1);
}

std::vector<BenchRow> run_trials(const BenchConfig& cfg) {
  cfg.validate();
  struct Task {
    std::size_t dist, n, est, trial;
  };
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < cfg.distributions.size(); ++d)
    for (std::size_t n : cfg.n_grid)
      for (std::size_t e = 0; e < cfg.estimators.size(); ++e)
        for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({d, n, e, t});

  std::vector<BenchRow> rows(tasks.size());
  const int threads = resolve_threads(cfg.threads);
  const auto count = static_cast<long long>(tasks.size());
  std::string failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long k = 0; k < count; ++k) {
    const Task& task = tasks[static_cast<std::size_t>(k)];
    const NamedModel& nm = cfg.distributions[task.dist];
    BenchRow& row = rows[static_cast<std::size_t>(k)];
    row.distribution = nm.name;
    row.n = task.n;
    row.trial = task.trial;
    row.seed = cfg.base_seed + task.trial;
    row.estimator = cfg.estimators[task.est];
    try {
      const std::vector<double> draws = trial_sample(nm.model, task.n, row.seed);
      const auto t0 = std::chrono::steady_clock::now();
      const double mu_hat = run_estimator(row.estimator, nm.model, draws, cfg.tournament);
      const auto t1 = std::chrono::steady_clock::now();
      row.error = std::abs(mu_hat - nm.model.center());
      row.runtime_ns = cfg.timing ? std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() : 0;
    } catch (const std::exception& e) {
#pragma omp critical(bench_failure)
      if (failure.empty()) failure = nm.name + " n=" + std::to_string(task.n) + ": " + e.what();
    }
  }
  if (!failure.empty()) throw ParameterError("bench: " + failure);

  std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.distribution, a.n, a.estimator, a.trial) < std::tie(b.distribution, b.n, b.estimator, b.trial);
  });
  return rows;
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "distribution,n,trial,seed,error,runtime_ns,estimator\n";
  for (const auto& r : rows)
    out << r.distribution << ',' << r.n << ',' << r.trial << ',' << r.seed << ',' << g17(r.error) << ','
        << r.runtime_ns << ',' << r.estimator << '\n';
  return out.str();
}

std::vector<BenchRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<BenchRow> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("distribution,", 0) == 0) continue;
    }
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 7) throw ParameterError("bench CSV: expected 7 fields in '" + line + "'");
    try {
      rows.push_back({f[0], std::stoul(f[1]), std::stoul(f[2]), std::stoull(f[3]), std::stod(f[4]),
                      std::stoll(f[5]), f[6]});
    } catch (const std::logic_error&) {
      throw ParameterError("bench CSV: malformed row '" + line + "'");
    }
  }
  return rows;
}

nlohmann::json summarize(const std::vector<BenchRow>& rows) {
  std::map<std::tuple<std::string, std::size_t, std::string>, std::vector<const BenchRow*>> cells;
  for (const auto& r : rows) cells[{r.distribution, r.n, r.estimator}].push_back(&r);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, rs] : cells) {
    std::vector<double> err;
    double rt = 0.0;
    for (const auto* r : rs) {
      err.push_back(r->error);
      rt += static_cast<double>(r->runtime_ns);
    }
    out.push_back({{"distribution", std::get<0>(key)},
                   {"n", std::get<1>(key)},
                   {"estimator", std::get<2>(key)},
                   {"trials", err.size()},
                   {"mean_error", std::accumulate(err.begin(), err.end(), 0.0) / static_cast<double>(err.size())},
                   {"median_error", median_of(err)},
                   {"mean_runtime_ns", rt / static_cast<double>(err.size())}});
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp + "'");
    f << contents;
    if (!f.flush()) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move output into place at '" + path + "': " + ec.message());
  }
}

nlohmann::json run_bench(const BenchConfig& cfg) {
  const auto rows = run_trials(cfg);
  const auto summary = summarize(rows);
  write_file_atomic(cfg.output_path, rows_to_csv(rows));
  write_file_atomic(cfg.output_path + ".summary.json", summary.dump(2) + "\n");
  return summary;
}

}  // namespace locest

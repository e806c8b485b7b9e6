#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "locest/distributions.hpp"
#include "locest/tournament.hpp"

namespace locest {

struct NamedModel {
  std::string name;
  DensityModel model;
};

/// The six example families: Gaussian, uniform, semicircle, Gaussian + uniform
/// mixture, uniform * Gaussian convolution, two-scale Gaussian mixture.
std::vector<NamedModel> default_families();

inline const std::vector<std::string> kEstimators{"fast", "tournament", "sample_mean", "sample_median", "midrange"};

struct BenchConfig {
  std::vector<NamedModel> distributions = default_families();
  std::vector<std::size_t> n_grid{1000, 10000, 100000};
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  std::vector<std::string> estimators{"fast"};
  std::string output_path = "bench.csv";
  /// false writes runtime_ns = 0 so repeated runs are byte-identical.
  bool timing = true;
  /// 0 uses MODULUS_EST_THREADS, else the OpenMP default.
  int threads = 0;
  TournamentConfig tournament;

  void validate() const;
};

BenchConfig bench_config_from_json(const nlohmann::json& j);

struct BenchRow {
  std::string distribution;
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double error = 0.0;
  std::int64_t runtime_ns = 0;
  std::string estimator;
};

/// Samples of one trial, in draw order: stream 0 of `seed`.
std::vector<double> trial_sample(const DensityModel& model, std::size_t n, std::uint64_t seed);

double run_estimator(const std::string& estimator, const DensityModel& model, const std::vector<double>& draws,
                     const TournamentConfig& tcfg);

/// Every (distribution, n, estimator, trial) cell, sorted by those keys.
std::vector<BenchRow> run_trials(const BenchConfig& cfg);

std::string rows_to_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> rows_from_csv(const std::string& text);
nlohmann::json summarize(const std::vector<BenchRow>& rows);

/// Runs, writes the CSV at output_path and the summary next to it
/// (<output_path>.summary.json); both files are replaced atomically.
nlohmann::json run_bench(const BenchConfig& cfg);

void write_file_atomic(const std::string& path, const std::string& contents);

int resolve_threads(int requested);

}  // namespace locest

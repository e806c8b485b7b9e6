#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "locest/bench_harness.hpp"
#include "locest/errors.hpp"
#include "locest/plot.hpp"

using namespace locest;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("locest_test_" + name); }

BenchConfig single(const std::string& dist, std::size_t n, std::size_t trials, const std::string& est) {
  BenchConfig cfg;
  cfg.distributions.clear();
  for (const NamedModel& m : default_families())
    if (m.name == dist) cfg.distributions.push_back(m);
  cfg.n_grid = {n};
  cfg.trials = trials;
  cfg.estimators = {est};
  cfg.timing = false;
  return cfg;
}

double mean_error(const std::vector<BenchRow>& rows) {
  double s = 0.0;
  for (const BenchRow& r : rows) s += r.error;
  return s / static_cast<double>(rows.size());
}

}  // namespace

TEST(Families, SixDefaults) {
  const auto f = default_families();
  ASSERT_EQ(f.size(), 6u);
  for (const NamedModel& m : f) EXPECT_EQ(m.model.center(), 0.0) << m.name;
}

TEST(Bench, SampleMeanGaussian) {
  const auto rows = run_trials(single("gaussian", 10000, 100, "sample_mean"));
  ASSERT_EQ(rows.size(), 100u);
  const double m = mean_error(rows);
  EXPECT_GE(m, 0.006);
  EXPECT_LE(m, 0.011);
}

TEST(Bench, MidrangeUniform) {
  const double m = mean_error(run_trials(single("uniform", 1000, 100, "midrange")));
  EXPECT_GE(m, 0.0005);
  EXPECT_LE(m, 0.0025);
}

TEST(Bench, ByteIdenticalReruns) {
  BenchConfig cfg = single("semicircle", 500, 1, "fast");
  cfg.output_path = tmp("a.csv").string();
  run_bench(cfg);
  const std::string first = slurp(cfg.output_path);
  run_bench(cfg);
  EXPECT_EQ(first, slurp(cfg.output_path));
  EXPECT_EQ(first.substr(0, first.find('\n')), "distribution,n,trial,seed,error,runtime_ns,estimator");
  EXPECT_TRUE(fs::exists(cfg.output_path + ".summary.json"));
}

TEST(Bench, SeedsReconstructRows) {
  BenchConfig cfg = single("gauss_unif_mixture", 300, 20, "fast");
  cfg.base_seed = 77;
  const auto rows = run_trials(cfg);
  const DensityModel m = cfg.distributions.front().model;
  for (std::size_t k : {0u, 3u, 8u, 13u, 19u}) {
    const BenchRow& r = rows[k];
    EXPECT_EQ(r.seed, 77u + r.trial);
    const double again = std::abs(run_estimator("fast", m, trial_sample(m, r.n, r.seed), cfg.tournament));
    EXPECT_EQ(again, r.error);
  }
}

TEST(Bench, CsvRoundTrip) {
  BenchConfig cfg = single("uniform", 200, 3, "sample_median");
  const auto rows = run_trials(cfg);
  const auto back = rows_from_csv(rows_to_csv(rows));
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(back[k].error, rows[k].error);
    EXPECT_EQ(back[k].seed, rows[k].seed);
    EXPECT_EQ(back[k].distribution, rows[k].distribution);
  }
}

TEST(Bench, SummaryMedian) {
  std::vector<BenchRow> rows;
  for (double e : {3.0, 1.0, 2.0, 10.0}) rows.push_back({"d", 10, rows.size(), 1, e, 0, "fast"});
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0]["median_error"].get<double>(), 2.5);
  EXPECT_DOUBLE_EQ(s[0]["mean_error"].get<double>(), 4.0);
}

TEST(Bench, OrderIndependentOfThreads) {
  BenchConfig a = single("gaussian", 400, 8, "fast");
  a.estimators = {"fast", "sample_mean"};
  BenchConfig b = a;
  a.threads = 1;
  b.threads = 4;
  EXPECT_EQ(rows_to_csv(run_trials(a)), rows_to_csv(run_trials(b)));
}

TEST(Bench, ConfigErrors) {
  BenchConfig cfg = single("gaussian", 100, 0, "fast");
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg.trials = 1;
  cfg.n_grid = {1000, 100};
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg.n_grid = {100};
  cfg.estimators = {"bogus"};
  EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(Bench, UnwritableOutput) {
  BenchConfig cfg = single("gaussian", 100, 1, "fast");
  cfg.output_path = "/nonexistent-dir/x.csv";
  EXPECT_ANY_THROW(run_bench(cfg));
}

TEST(Bench, ConfigFromJson) {
  const auto j = nlohmann::json::parse(R"({"n_grid": [100, 200], "trials": 3, "base_seed": 9,
      "estimators": ["fast", "midrange"], "distributions": [{"name": "u", "model": {"kind": "uniform", "half_width": 2}}]})");
  const BenchConfig cfg = bench_config_from_json(j);
  EXPECT_EQ(cfg.n_grid, (std::vector<std::size_t>{100, 200}));
  EXPECT_EQ(cfg.trials, 3u);
  EXPECT_EQ(cfg.base_seed, 9u);
  ASSERT_EQ(cfg.distributions.size(), 1u);
  EXPECT_EQ(cfg.distributions[0].name, "u");
  EXPECT_EQ(run_trials(cfg).size(), 2u * 3u * 2u);
}

TEST(Bench, ThreadsFromEnvironment) {
  ::setenv("MODULUS_EST_THREADS", "3", 1);
  EXPECT_EQ(resolve_threads(8), 3);
  EXPECT_EQ(resolve_threads(2), 2);
  EXPECT_LE(resolve_threads(0), 3);
  ::unsetenv("MODULUS_EST_THREADS");
}

TEST(Plot, SvgHasOneCurvePerCell) {
  BenchConfig cfg = single("uniform", 100, 3, "fast");
  cfg.n_grid = {100, 1000};
  cfg.estimators = {"fast", "sample_mean"};
  const std::string svg = render_error_svg(run_trials(cfg));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t lines = 0;
  for (std::size_t at = 0; (at = svg.find("<polyline", at)) != std::string::npos; ++at) ++lines;
  EXPECT_EQ(lines, 2u);
}

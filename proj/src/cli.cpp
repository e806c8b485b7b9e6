#include "locest/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "locest/bench_harness.hpp"
#include "locest/errors.hpp"
#include "locest/lowerbound.hpp"
#include "locest/model_json.hpp"
#include "locest/plot.hpp"
#include "locest/sample_set.hpp"
#include "locest/sweepline.hpp"
#include "locest/tournament.hpp"
#include "locest/verify.hpp"

namespace locest {

namespace {

constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> read_input(const std::string& path, std::istream& in) {
  if (path == "-") return read_values(in);
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open input '" + path + "'");
  return read_values(f);
}

void print_report(const CheckReport& rep, bool as_json, std::ostream& out) {
  if (as_json) {
    out << rep.to_json().dump(2) << '\n';
    return;
  }
  for (const CheckResult& c : rep.checks) {
    out << (c.informational ? "INFO" : c.pass ? "PASS" : "FAIL") << "  " << c.name << ": measured=" << c.measured
        << " threshold=" << c.threshold;
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
  out << rep.title << ": " << (rep.all_pass() ? "all checks pass" : "FAILED") << '\n';
}

nlohmann::json report_json(const EstimateReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const EllBounds& b : r.per_ell) per.push_back({{"ell", b.ell}, {"lower", g17(b.lower)}, {"upper", g17(b.upper)}});
  return {{"mu_hat", r.mu_hat},
          {"gamma_star", r.gamma_star},
          {"gamma_index", r.gamma_index},
          {"n", r.n},
          {"interval", {{"lower", g17(r.interval.lower)}, {"upper", g17(r.interval.upper)}, {"feasible", r.interval.feasible()}}},
          {"per_ell", per},
          {"wall_time_s", r.wall_time_s}};
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive location estimation: fast interval-test estimator, tournament, lower-bound lab, benchmarks",
               "locest"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: MODULUS_EST_THREADS or default)");

  // estimate
  auto* est = app.add_subcommand("estimate", "Location estimate from samples, no model needed");
  std::string est_input = "-";
  bool est_json = false, est_serial = false;
  est->add_option("--input,-i", est_input, "File of values, one per line ('-' for stdin)");
  est->add_flag("--json", est_json, "Print the full report");
  est->add_flag("--serial", est_serial, "Use the serial reference kernels");

  // tournament
  auto* tour = app.add_subcommand("tournament", "Known-shape tournament estimate (input in draw order)");
  std::string tour_input = "-", tour_model;
  TournamentConfig tcfg;
  std::uint64_t shuffle = 0;
  bool tour_serial = false, tour_json = false;
  tour->add_option("--input,-i", tour_input, "File of values in draw order ('-' for stdin)");
  tour->add_option("--model,-m", tour_model, "Model JSON text or path")->required();
  tour->add_option("--c-test", tcfg.c_test, "Batch size constant")->capture_default_str();
  tour->add_option("--delta", tcfg.delta, "Failure probability")->capture_default_str();
  tour->add_flag("--prune", tcfg.prune_candidates, "Only duel candidates near the middle order statistics");
  tour->add_option("--prune-mult", tcfg.prune_window_mult, "Pruning window multiplier")->capture_default_str();
  auto* shuffle_opt = tour->add_option("--shuffle-seed", shuffle, "Permute input before splitting");
  tour->add_flag("--serial", tour_serial, "Use the serial reference kernels");
  tour->add_flag("--json", tour_json, "Print details");

  // sample
  auto* samp = app.add_subcommand("sample", "Draw a seeded sample set");
  std::string samp_model, samp_output = "-";
  std::size_t samp_n = 0;
  std::uint64_t samp_seed = 1;
  bool samp_unsorted = false;
  samp->add_option("--model,-m", samp_model, "Model JSON text or path")->required();
  samp->add_option("--n,-n", samp_n, "Sample size")->required();
  samp->add_option("--seed", samp_seed, "Seed")->capture_default_str();
  samp->add_option("--output,-o", samp_output, "Output file ('-' for stdout)");
  samp->add_flag("--draw-order", samp_unsorted, "Keep draw order instead of sorting");

  // bench
  auto* bench = app.add_subcommand("bench", "Monte-Carlo error benchmark to CSV plus summary JSON");
  std::string bench_config;
  BenchConfig bcfg;
  std::vector<std::string> bench_dists;
  bool no_timing = false;
  bench->add_option("--config", bench_config, "JSON config file");
  bench->add_option("--distribution", bench_dists, "Default family names to keep (repeatable)");
  auto* n_opt = bench->add_option("--n", bcfg.n_grid, "Sample sizes (ascending)");
  auto* trials_opt = bench->add_option("--trials", bcfg.trials, "Trials per cell");
  auto* seed_opt = bench->add_option("--seed", bcfg.base_seed, "Base seed (trial seed = base + index)");
  auto* est_opt = bench->add_option("--estimator", bcfg.estimators, "fast|tournament|sample_mean|sample_median|midrange");
  auto* out_opt = bench->add_option("--output,-o", bcfg.output_path, "CSV path");
  bench->add_flag("--no-timing", no_timing, "Write runtime_ns = 0 for byte-reproducible output");
  bench->add_flag("--prune", bcfg.tournament.prune_candidates, "Prune tournament candidates");
  bench->add_option("--prune-mult", bcfg.tournament.prune_window_mult, "Tournament pruning window multiplier");

  // verify
  auto* ver = app.add_subcommand("verify", "Property and closed-form checks");
  ver->require_subcommand(1);
  bool ver_json = false;
  ver->add_flag("--json", ver_json, "JSON report");
  std::uint64_t vseed = 1;
  auto* vh = ver->add_subcommand("hellinger", "Closed forms, sandwich, modulus");
  std::size_t pairs = 200;
  vh->add_option("--seed", vseed)->capture_default_str();
  vh->add_option("--pairs", pairs, "Random sandwich pairs")->capture_default_str();
  auto* vs = ver->add_subcommand("sweepline", "Sweep line vs enumeration oracle");
  SweepVerifyOptions sopt;
  vs->add_option("--cases", sopt.cases)->capture_default_str();
  vs->add_option("--max-n", sopt.max_n)->capture_default_str();
  vs->add_option("--seed", sopt.seed)->capture_default_str();
  auto* vl = ver->add_subcommand("lowerbound", "Step / Mod-Step / D_v constructions");
  double eps = 0.125;
  vl->add_option("--eps", eps, "Step resolution, 1/(2 eps) integer")->capture_default_str();
  vl->add_option("--seed", vseed)->capture_default_str();
  auto* vt = ver->add_subcommand("tournament", "Tournament kernels and accuracy");
  std::size_t vtrials = 20;
  vt->add_option("--seed", vseed)->capture_default_str();
  vt->add_option("--trials", vtrials)->capture_default_str();
  for (auto* v : {vh, vs, vl, vt}) v->add_flag("--json", ver_json, "JSON report");

  // plot
  auto* plot = app.add_subcommand("plot", "Render a bench CSV as a log-log SVG");
  std::string plot_in, plot_out = "-", plot_title = "median |error| vs n";
  plot->add_option("--input,-i", plot_in, "Bench CSV")->required();
  plot->add_option("--output,-o", plot_out, "SVG path ('-' for stdout)");
  plot->add_option("--title", plot_title);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kUsage;
  }

  try {
    if (const int t = resolve_threads(threads); t > 0) omp_set_num_threads(t);

    if (est->parsed()) {
      const EstimateReport r = estimate(read_input(est_input, in), est_serial ? Exec::Serial : Exec::Parallel);
      if (est_json)
        out << report_json(r).dump(2) << '\n';
      else
        out << g17(r.mu_hat) << '\n';
      return 0;
    }
    if (tour->parsed()) {
      if (*shuffle_opt) tcfg.shuffle_seed = shuffle;
      const DensityModel m = load_model(tour_model);
      const std::vector<double> x = read_input(tour_input, in);
      if (!tcfg.shuffle_seed && x.size() > 2 && std::is_sorted(x.begin(), x.end()))
        err << "warning: input is sorted; the tournament splits samples by position, pass --shuffle-seed\n";
      const TournamentResult r = tournament_estimate(m, x, tcfg, tour_serial ? Exec::Serial : Exec::Parallel);
      for (const std::string& w : r.warnings) err << "warning: " << w << '\n';
      if (tour_json)
        out << nlohmann::json{{"mu_hat", r.mu_hat},
                              {"n_test", r.plan.n_test},
                              {"k_num_tests", r.plan.k_num_tests},
                              {"candidates", r.candidates.size()},
                              {"undefeated", r.undefeated},
                              {"champion_radius", r.champion_radius}}
                   .dump(2)
            << '\n';
      else
        out << g17(r.mu_hat) << '\n';
      return 0;
    }
    if (samp->parsed()) {
      const DensityModel m = load_model(samp_model);
      SampleSet s;
      if (samp_unsorted) {
        Rng rng(samp_seed);
        s.values = draw_unsorted(m, samp_n, rng);
        s.seed = samp_seed;
        s.model_json = model_to_json(m).dump();
        if (samp_n == 0) throw ParameterError("sample: n must be at least 1");
      } else {
        s = sample(m, samp_n, samp_seed);
      }
      if (samp_output == "-") {
        write_sample_set(out, s);
      } else {
        std::ostringstream buf;
        write_sample_set(buf, s);
        write_file_atomic(samp_output, buf.str());
      }
      return 0;
    }
    if (bench->parsed()) {
      BenchConfig cfg = bcfg;
      if (!bench_config.empty()) {
        std::ifstream f(bench_config);
        if (!f) throw ParameterError("cannot open config '" + bench_config + "'");
        cfg = bench_config_from_json(nlohmann::json::parse(f));
        // explicit flags override the file
        if (*n_opt) cfg.n_grid = bcfg.n_grid;
        if (*trials_opt) cfg.trials = bcfg.trials;
        if (*seed_opt) cfg.base_seed = bcfg.base_seed;
        if (*est_opt) cfg.estimators = bcfg.estimators;
        if (*out_opt) cfg.output_path = bcfg.output_path;
      }
      if (no_timing) cfg.timing = false;
      if (threads) cfg.threads = threads;
      if (!bench_dists.empty()) {
        std::vector<NamedModel> keep;
        for (const NamedModel& nm : cfg.distributions)
          if (std::find(bench_dists.begin(), bench_dists.end(), nm.name) != bench_dists.end()) keep.push_back(nm);
        if (keep.size() != bench_dists.size()) throw ParameterError("bench: unknown --distribution name");
        cfg.distributions = keep;
      }
      out << run_bench(cfg).dump(2) << '\n';
      return 0;
    }
    if (ver->parsed()) {
      CheckReport rep;
      if (vh->parsed()) rep = verify_hellinger(vseed, pairs);
      if (vs->parsed()) rep = verify_sweepline(sopt);
      if (vl->parsed()) rep = lowerbound::verify_all(eps, vseed);
      if (vt->parsed()) rep = verify_tournament(vseed, vtrials);
      print_report(rep, ver_json, out);
      return rep.all_pass() ? 0 : kCheckFailed;
    }
    if (plot->parsed()) {
      std::ifstream f(plot_in);
      if (!f) throw ParameterError("cannot open '" + plot_in + "'");
      std::stringstream buf;
      buf << f.rdbuf();
      const std::string svg = render_error_svg(rows_from_csv(buf.str()), plot_title);
      if (plot_out == "-")
        out << svg;
      else
        write_file_atomic(plot_out, svg);
      return 0;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace locest

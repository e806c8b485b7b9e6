#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "locest/checks.hpp"
#include "locest/distributions.hpp"

namespace locest::lowerbound {

using locest::s_w_eval;

/// Folds [1, 3/2) onto [0, 1/2) and (-3/2, -1] onto (-1/2, 0]; identity elsewhere.
double h_map(double x);

struct FIntegralResult {
  std::vector<double> v;
  std::vector<double> w;
  double value = 0.0;
  double quad_error = 0.0;
};

/// integral of Mod-Step_v * Mod-Step_w / Mod-Tri, zero where Mod-Tri vanishes.
FIntegralResult f_integral(const std::vector<double>& v, const std::vector<double>& w, double eps);

/// Per-batch term g_i = 2 * integral_0^eps (1/2 + s_v)(1/2 + s_w)/(1/2 + u) du - eps - eps^2;
/// f(v, w) - 1 is the sum of g_i over batches.
double g_batch(double v_i, double w_i, double eps);

/// E over v_i ~ Unif(0, eps/2) of Step_v(x) and Mod-Step_v(x), by quadrature in v_i.
double expected_step(double eps, double x);
double expected_mod_step(double eps, double x);

/// P(h(X) <= t) for X drawn from `model`, from the model's exact cdf.
double pushforward_cdf(const DensityModel& model, double t);

struct Bounds {
  double delta;
  double value;
  double lower;
  double upper;
};

/// Squared Hellinger distance between Step_v and its shift, with
/// eps*min(delta, eps/2)/16 and 2*delta.
std::vector<Bounds> step_modulus_bounds(const StepParams& p, std::span<const double> deltas);

CheckReport verify_unbiased_marginal(double eps, std::span<const double> grid);
CheckReport verify_pushforward(double eps, const StepParams& p, std::size_t grid_points = 512);
CheckReport verify_step_modulus_bounds(double eps, std::size_t pairs, std::uint64_t seed);
CheckReport verify_f_integral(double eps, std::size_t draws, std::size_t mc_draws, std::uint64_t seed);
CheckReport verify_dv(std::uint64_t seed);

/// Everything above, as run by `verify lowerbound`.
CheckReport verify_all(double eps, std::uint64_t seed);

}  // namespace locest::lowerbound

#include "locest/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "locest/errors.hpp"
#include "locest/hellinger.hpp"
#include "locest/quadrature.hpp"

namespace locest::lowerbound {

namespace {

constexpr double kSlack = 1e-8;

std::size_t batch_index(double a, double eps) {
  const auto K = static_cast<std::size_t>(std::llround(0.5 / eps));
  auto i = static_cast<std::size_t>(std::floor(a / eps));
  while (i > 0 && static_cast<double>(i) * eps > a) --i;
  while (static_cast<double>(i + 1) * eps <= a) ++i;
  return std::min(i, K - 1);
}

// E over v_i of model(v).pdf(x), where only batch i of v matters at x.
template <class Make>
double expected_over_batch(double eps, double x, Make make) {
  const double a = std::abs(x);
  const auto K = static_cast<std::size_t>(std::llround(0.5 / eps));
  std::vector<double> v(K, 0.0);
  if (a >= 0.5) return make(StepParams{eps, v}).pdf(x);
  const std::size_t i = batch_index(a, eps);
  const double u = static_cast<double>(i + 1) * eps - a;
  const auto f = [&](double vi) {
    std::vector<double> vv(K, 0.0);
    vv[i] = vi;
    return make(StepParams{eps, vv}).pdf(x);
  };
  const auto r = integrate_panels(f, make_cuts(0.0, eps / 2, {std::abs(u - eps / 2)}), 1e-12);
  return r.value / (eps / 2);
}

double interval_mass(const DensityModel& m, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return std::max(0.0, m.cdf(hi) - m.cdf(lo));
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

double h_map(double x) {
  if (std::abs(x) < 1.0 || std::abs(x) >= 1.5) return x;
  if (x >= 1.0) return x - 1.0;
  return x + 1.0;
}

FIntegralResult f_integral(const std::vector<double>& v, const std::vector<double>& w, double eps) {
  const DensityModel pv = mod_step(StepParams{eps, v});
  const DensityModel pw = mod_step(StepParams{eps, w});
  const DensityModel p0 = mod_triangle(eps);
  std::vector<double> cuts = pv.breakpoints();
  for (const auto* m : {&pw, &p0}) {
    const auto b = m->breakpoints();
    cuts.insert(cuts.end(), b.begin(), b.end());
  }
  const auto r = integrate_panels(
      [&](double x) {
        const double d = p0.pdf(x);
        return d > 0.0 ? pv.pdf(x) * pw.pdf(x) / d : 0.0;
      },
      make_cuts(-1.5, 1.5, cuts), 1e-12);
  return {v, w, r.value, r.abs_error};
}

double g_batch(double v_i, double w_i, double eps) {
  const auto f = [&](double u) {
    return (0.5 + s_w_eval(v_i, eps, u)) * (0.5 + s_w_eval(w_i, eps, u)) / (0.5 + u);
  };
  const auto r = integrate_panels(
      f, make_cuts(0.0, eps, {eps / 2 - v_i, eps / 2 + v_i, eps / 2 - w_i, eps / 2 + w_i}), 1e-13);
  return 2.0 * r.value - eps - eps * eps;
}

double expected_step(double eps, double x) {
  return expected_over_batch(eps, x, [](StepParams p) { return step(std::move(p)); });
}

double expected_mod_step(double eps, double x) {
  return expected_over_batch(eps, x, [](StepParams p) { return mod_step(std::move(p)); });
}

double pushforward_cdf(const DensityModel& m, double t) {
  // preimage pieces of (-inf, t] under h
  double total = 0.0;
  total += interval_mass(m, -1.0, std::min(t, 1.0));
  if (t >= 0.0) total += interval_mass(m, 1.0, std::min(t + 1.0, 1.5));
  if (t > -0.5) total += interval_mass(m, -1.5, std::min(t - 1.0, -1.0));
  total += m.cdf(std::min(t, -1.5));
  if (t > 1.5) total += interval_mass(m, 1.5, t);
  return std::min(total, 1.0);
}

std::vector<Bounds> step_modulus_bounds(const StepParams& p, std::span<const double> deltas) {
  const DensityModel s = step(p);
  std::vector<Bounds> out;
  for (double d : deltas) {
    const double v = d == 0.0 ? 0.0 : sq_hellinger(s, s.shifted(d), 1e-11).value;
    out.push_back({d, v, p.eps * std::min(d, p.eps / 2) / 16.0, 2.0 * d});
  }
  return out;
}

CheckReport verify_unbiased_marginal(double eps, std::span<const double> grid) {
  CheckReport rep{"unbiased marginal", {}};
  const DensityModel tri = triangle();
  const DensityModel mtri = mod_triangle(eps);
  double dev_step = 0.0, dev_mod = 0.0;
  double worst_step = 0.0, worst_mod = 0.0;
  for (double x : grid) {
    const double a = std::abs(expected_step(eps, x) - tri.pdf(x));
    const double b = std::abs(expected_mod_step(eps, x) - mtri.pdf(x));
    if (a > dev_step) dev_step = a, worst_step = x;
    if (b > dev_mod) dev_mod = b, worst_mod = x;
  }
  rep.add(check_le("E_v[Step_v] = Tri", dev_step, kSlack,
                   std::to_string(grid.size()) + " points, worst x=" + fmt(worst_step)));
  rep.add(check_le("E_v[Mod-Step_v] = Mod-Tri", dev_mod, kSlack,
                   std::to_string(grid.size()) + " points, worst x=" + fmt(worst_mod)));
  return rep;
}

CheckReport verify_pushforward(double eps, const StepParams& p, std::size_t grid_points) {
  CheckReport rep{"h pushforward", {}};
  const DensityModel tri = triangle(), mtri = mod_triangle(eps);
  const DensityModel st = step(p), mst = mod_step(p);
  double dev_tri = 0.0, dev_step = 0.0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double t = -1.25 + 2.5 * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    dev_tri = std::max(dev_tri, std::abs(pushforward_cdf(mtri, t) - tri.cdf(t)));
    dev_step = std::max(dev_step, std::abs(pushforward_cdf(mst, t) - st.cdf(t)));
  }
  rep.add(check_le("cdf of h(Mod-Tri) = cdf of Tri", dev_tri, 1e-9, std::to_string(grid_points) + " points"));
  rep.add(check_le("cdf of h(Mod-Step_v) = cdf of Step_v", dev_step, 1e-9, std::to_string(grid_points) + " points"));
  return rep;
}

CheckReport verify_step_modulus_bounds(double eps, std::size_t pairs, std::uint64_t seed) {
  CheckReport rep{"step modulus bounds", {}};
  Rng rng(seed, 0x4d4fu);
  double worst_lower = std::numeric_limits<double>::infinity();
  double worst_upper = std::numeric_limits<double>::infinity();
  std::string where_lower, where_upper;
  StepParams last;
  for (std::size_t k = 0; k < pairs; ++k) {
    StepParams p = random_step_params(eps, rng);
    // log-uniform shifts between eps/1000 and 1/2
    const double delta = eps * 1e-3 * std::pow(500.0 / eps, rng.uniform());
    const double d = delta;
    const auto b = step_modulus_bounds(p, std::span<const double>(&d, 1)).front();
    if (b.value - b.lower < worst_lower) worst_lower = b.value - b.lower, where_lower = "delta=" + fmt(delta);
    if (b.upper - b.value < worst_upper) worst_upper = b.upper - b.value, where_upper = "delta=" + fmt(delta);
    last = std::move(p);
  }
  rep.add(check_ge("d_h^2 >= eps*min(delta, eps/2)/16 (min slack)", worst_lower, -kSlack,
                   std::to_string(pairs) + " random (v, delta); worst " + where_lower));
  rep.add(check_ge("d_h^2 <= 2*delta (min slack)", worst_upper, -kSlack,
                   std::to_string(pairs) + " random (v, delta); worst " + where_upper));

  // modulus consequence: omega(e) <= 16 e / eps where the lower bound is linear (e <= eps^2/32)
  const DensityModel s = step(last);
  const double knee = eps * eps / 32.0;
  double worst_ratio = 0.0;
  for (double frac : {0.05, 0.25, 0.5, 1.0}) {
    const double e = knee * frac;
    worst_ratio = std::max(worst_ratio, modulus(s, e, 1e-9) / (16.0 * e / eps));
  }
  rep.add(check_le("omega(e) <= 16 e/eps for e <= eps^2/32 (max ratio)", worst_ratio, 1.0 + 1e-6));
  double ratio_above = 0.0;
  for (double mult : {2.0, 8.0, 32.0}) {
    const double e = knee * mult;
    ratio_above = std::max(ratio_above, modulus(s, e, 1e-9) / (16.0 * e / eps));
  }
  CheckResult above = check_le("omega(e) <= 16 e/eps for e >= eps^2/32 (max ratio)", ratio_above, 1.0 + 1e-6,
                               "outside the range where the linear lower bound applies");
  above.informational = true;
  rep.add(above);
  return rep;
}

CheckReport verify_f_integral(double eps, std::size_t draws, std::size_t mc_draws, std::uint64_t seed) {
  CheckReport rep{"f(v, w) integral", {}};
  Rng rng(seed, 0x4649u);

  double min_f = std::numeric_limits<double>::infinity();
  double min_self = std::numeric_limits<double>::infinity();
  double max_decomp = 0.0;
  for (std::size_t k = 0; k < draws; ++k) {
    const StepParams v = random_step_params(eps, rng);
    const StepParams w = random_step_params(eps, rng);
    const auto r = f_integral(v.v, w.v, eps);
    min_f = std::min(min_f, r.value);
    min_self = std::min(min_self, f_integral(v.v, v.v, eps).value);
    if (k < 20) {
      double g = 0.0;
      for (std::size_t i = 0; i < v.v.size(); ++i) g += g_batch(v.v[i], w.v[i], eps);
      max_decomp = std::max(max_decomp, std::abs(r.value - 1.0 - g));
    }
  }
  rep.add(check_ge("f(v,w) >= 1 - 1e-9 over independent draws (min f)", min_f, 1.0 - 1e-9,
                   std::to_string(draws) + " draws, eps=" + fmt(eps)));
  CheckResult self = check_ge("f(v,v) >= 1 (min f)", min_self, 1.0 - 1e-9, std::to_string(draws) + " draws");
  self.informational = true;
  rep.add(self);
  rep.add(check_le("f - 1 = sum of per-batch g_i", max_decomp, 1e-9, "20 draws"));

  // Monte Carlo mean of g via the per-batch decomposition (exact sum, cheaper than full quadrature)
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t k = 0; k < mc_draws; ++k) {
    const StepParams v = random_step_params(eps, rng);
    const StepParams w = random_step_params(eps, rng);
    double g = 0.0;
    for (std::size_t i = 0; i < v.v.size(); ++i) g += g_batch(v.v[i], w.v[i], eps);
    sum += g;
    sum2 += g * g;
  }
  const double nd = static_cast<double>(mc_draws);
  const double mean = sum / nd;
  const double se = std::sqrt(std::max(0.0, sum2 / nd - mean * mean) / (nd - 1.0));
  rep.add(check_le("|mean g| / standard error", std::abs(mean) / se, 4.0,
                   "mean=" + fmt(mean) + " se=" + fmt(se) + " over " + std::to_string(mc_draws) + " draws"));

  // scaling of max g_i with eps
  std::vector<double> lx, ly;
  for (double e : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 400; ++k) best = std::max(best, g_batch(rng.uniform() * e / 2, rng.uniform() * e / 2, e));
    if (best > 0.0) {
      lx.push_back(std::log(e));
      ly.push_back(std::log(best));
    }
  }
  double slope = std::numeric_limits<double>::quiet_NaN();
  if (lx.size() == 3) {
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int k = 0; k < 3; ++k) {
      sxy += (lx[k] - mx) * (ly[k] - my);
      sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    slope = sxy / sxx;
  }
  rep.add({"scaling exponent of max g_i in eps", slope >= 2.7, slope, 2.7, "eps in {1/8, 1/16, 1/32}"});
  return rep;
}

CheckReport verify_dv(std::uint64_t seed) {
  CheckReport rep{"modified symmetric uniform", {}};
  Rng rng(seed, 0x4456u);
  double max_id = 0.0, min_bound_slack = std::numeric_limits<double>::infinity();
  double max_lin_T = 0.0, max_lin_half = 0.0;
  for (int T : {2, 3, 4, 8}) {
    const DvParams p = random_dv_params(T, rng);
    const DensityModel d = dv_uniform(p);
    const auto h = [&](double s) { return sq_hellinger(d, d.shifted(s), 1e-11).value; };
    const auto tv = [&](double s) { return tv_distance(d, d.shifted(s), 1e-11).value; };
    for (int k = 1; k <= 16; ++k) {
      const double s = (0.5 / T) * k / 16.0;
      const double hs = h(s);
      max_id = std::max(max_id, std::abs(hs - tv(s)));
      min_bound_slack = std::min(min_bound_slack, (4.0 * T + 2.0) * s - hs);
    }
    for (int j = 0; j < T; ++j) {
      const double a = static_cast<double>(j) / T, b = static_cast<double>(j + 1) / T;
      max_lin_T = std::max(max_lin_T, std::abs(tv(0.5 * (a + b)) - 0.5 * (tv(a) + tv(b))));
    }
    for (int j = 0; j < 2 * T; ++j) {
      const double a = static_cast<double>(j) / (2.0 * T), b = static_cast<double>(j + 1) / (2.0 * T);
      for (double f : {0.25, 0.5, 0.75}) {
        const double s = a + f * (b - a);
        max_lin_half = std::max(max_lin_half, std::abs(tv(s) - ((1 - f) * tv(a) + f * tv(b))));
      }
    }
  }
  rep.add(check_le("d_h^2 = TV for 0/1 densities (max gap)", max_id, kSlack, "T in {2,3,4,8}"));
  rep.add(check_ge("d_h^2 <= (4T+2) delta for delta <= 1/(2T) (min slack)", min_bound_slack, -kSlack));
  rep.add(check_le("TV linear between multiples of 1/T (max midpoint gap)", max_lin_T, kSlack));
  CheckResult half = check_le("TV linear between multiples of 1/(2T) (max gap)", max_lin_half, kSlack);
  half.informational = true;
  rep.add(half);
  return rep;
}

CheckReport verify_all(double eps, std::uint64_t seed) {
  CheckReport all{"lowerbound", {}};
  Rng rng(seed, 0x4c42u);
  std::vector<double> grid{0.0, 1.5};
  while (grid.size() < 64) grid.push_back(-1.6 + 3.2 * rng.uniform());
  const StepParams p = random_step_params(eps, rng);
  for (CheckReport r : {verify_unbiased_marginal(eps, grid), verify_pushforward(eps, p),
                        verify_step_modulus_bounds(eps, 100, seed), verify_f_integral(eps, 200, 2000, seed),
                        verify_dv(seed)}) {
    for (auto& c : r.checks) {
      c.name = r.title + ": " + c.name;
      all.add(std::move(c));
    }
  }
  return all;
}

}  // namespace locest::lowerbound

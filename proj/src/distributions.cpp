#include "locest/distributions.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "locest/errors.hpp"

namespace locest {

namespace detail {

// Exact cdf/quantile for densities that are linear between consecutive knots.
struct PiecewiseLinear {
  std::vector<double> knots;
  std::vector<double> a;     // density at the left knot (right limit)
  std::vector<double> b;     // slope
  std::vector<double> cum;   // mass left of knot j, cum.size() == knots.size()
  double total = 1.0;

  double mass_to(std::size_t j, double t) const {
    const double h = t - knots[j];
    return cum[j] + h * (a[j] + 0.5 * b[j] * h);
  }

  double cdf(double t) const {
    if (t <= knots.front()) return 0.0;
    if (t >= knots.back()) return 1.0;
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - knots.begin()) - 1;
    return std::clamp(mass_to(j, t) / total, 0.0, 1.0);
  }

  double quantile(double u) const {
    const double target = u * total;
    if (target <= 0.0) {
      auto first = std::upper_bound(cum.begin(), cum.end(), 0.0);
      return knots[static_cast<std::size_t>(first - cum.begin()) - 1];
    }
    if (target >= total) {
      auto last = std::lower_bound(cum.begin(), cum.end(), cum.back());
      return knots[static_cast<std::size_t>(last - cum.begin())];
    }
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    const std::size_t j = static_cast<std::size_t>(it - cum.begin()) - 1;
    const double r = target - cum[j];
    const double h = knots[j + 1] - knots[j];
    double t;
    if (std::abs(b[j]) * h <= 1e-14 * std::max(a[j], 1e-300)) {
      t = a[j] > 0.0 ? r / a[j] : 0.0;
    } else {
      const double disc = std::max(0.0, a[j] * a[j] + 2.0 * b[j] * r);
      const double denom = a[j] + std::sqrt(disc);
      t = denom > 0.0 ? 2.0 * r / denom : h;
    }
    return knots[j] + std::clamp(t, 0.0, h);
  }
};

}  // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = std::numbers::sqrt2;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double Phi(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double log_sum_exp(const std::vector<double>& xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

// Batch index i with i*width <= a < (i+1)*width, consistent with the knot
// positions computed as i*width.
std::size_t batch_of(double a, double width, std::size_t count) {
  auto i = static_cast<long long>(std::floor(a / width));
  if (i < 0) i = 0;
  while (i > 0 && static_cast<double>(i) * width > a) --i;
  while (static_cast<double>(i + 1) * width <= a) ++i;
  return std::min(static_cast<std::size_t>(i), count - 1);
}

double step_batch_arg(double a, std::size_t i, double eps) {
  return std::clamp(static_cast<double>(i + 1) * eps - a, 0.0, eps);
}

double tri_tail(double a, double eps, std::size_t K) {
  // shared by Mod-Tri and Mod-Step for |x| >= 1/2
  if (a < 1.0) return 1.0 - a;
  if (a >= 1.5) return 0.0;
  const std::size_t i = batch_of(a - 1.0, eps, K);
  return 0.5 - static_cast<double>(i + 1) * eps;
}

double step_pdf(const StepParams& p, double a) {
  if (a >= 1.0) return 0.0;
  if (a >= 0.5) return 1.0 - a;
  const std::size_t i = batch_of(a, p.eps, p.batches());
  return 1.0 - static_cast<double>(i + 1) * p.eps + s_w_eval(p.v[i], p.eps, step_batch_arg(a, i, p.eps));
}

double mod_tri_pdf(double eps, double a) {
  const auto K = static_cast<std::size_t>(std::llround(0.5 / eps));
  if (a >= 0.5) return tri_tail(a, eps, K);
  const std::size_t i = batch_of(a, eps, K);
  return 0.5 + static_cast<double>(i + 1) * eps - a;
}

double mod_step_pdf(const StepParams& p, double a) {
  const std::size_t K = p.batches();
  if (a >= 0.5) return tri_tail(a, p.eps, K);
  const std::size_t i = batch_of(a, p.eps, K);
  return 0.5 + s_w_eval(p.v[i], p.eps, step_batch_arg(a, i, p.eps));
}

double dv_pdf(const DvParams& p, double a) {
  if (a >= 1.0) return 0.0;
  const auto T = static_cast<std::size_t>(p.T);
  const std::size_t i = batch_of(a, 1.0 / p.T, T);
  const double mid = static_cast<double>(2 * i + 1) / (2.0 * p.T);
  return a < mid ? p.v[i] : 1 - p.v[i];
}

std::vector<double> mirror(std::vector<double> half) {
  std::vector<double> out;
  out.reserve(2 * half.size());
  for (double x : half) {
    out.push_back(x);
    out.push_back(-x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> step_half_knots(const StepParams& p, bool modified) {
  std::vector<double> k{0.0, 0.5, 1.0};
  const std::size_t K = p.batches();
  for (std::size_t i = 0; i < K; ++i) {
    const double lo = static_cast<double>(i) * p.eps;
    const double top = static_cast<double>(i + 1) * p.eps;
    k.push_back(lo);
    k.push_back(top - p.eps / 2 - p.v[i]);
    k.push_back(top - p.eps / 2 + p.v[i]);
    if (modified) k.push_back(1.0 + lo);
  }
  if (modified) k.push_back(1.5);
  return k;
}

std::vector<double> mod_tri_half_knots(double eps) {
  std::vector<double> k{0.0, 0.5, 1.0, 1.5};
  const auto K = static_cast<std::size_t>(std::llround(0.5 / eps));
  for (std::size_t i = 0; i < K; ++i) {
    k.push_back(static_cast<double>(i) * eps);
    k.push_back(1.0 + static_cast<double>(i) * eps);
  }
  return k;
}

std::vector<double> dv_half_knots(const DvParams& p) {
  std::vector<double> k{0.0, 1.0};
  for (int i = 0; i < p.T; ++i) {
    k.push_back(static_cast<double>(i) / p.T);
    k.push_back(static_cast<double>(2 * i + 1) / (2.0 * p.T));
  }
  return k;
}

template <class Pdf>
std::shared_ptr<const detail::PiecewiseLinear> build_table(std::vector<double> knots, Pdf pdf) {
  auto t = std::make_shared<detail::PiecewiseLinear>();
  t->knots = std::move(knots);
  const std::size_t m = t->knots.size();
  t->a.assign(m, 0.0);
  t->b.assign(m, 0.0);
  t->cum.assign(m, 0.0);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double x0 = t->knots[j];
    const double h = t->knots[j + 1] - x0;
    const double p1 = pdf(x0 + h / 3.0);
    const double p2 = pdf(x0 + 2.0 * h / 3.0);
    const double slope = (p2 - p1) / (h / 3.0);
    t->b[j] = slope;
    t->a[j] = p1 - slope * h / 3.0;
    t->cum[j + 1] = t->cum[j] + h * (t->a[j] + 0.5 * slope * h);
  }
  t->total = t->cum.back();
  return t;
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<double> normalized_weights(std::vector<double> w, std::size_t expected, const char* what) {
  require(!w.empty(), std::string(what) + ": no components");
  require(w.size() == expected, std::string(what) + ": weights and components differ in length");
  double s = 0.0;
  for (double x : w) {
    require(std::isfinite(x) && x >= 0.0, std::string(what) + ": weights must be non-negative");
    s += x;
  }
  require(s > 0.0, std::string(what) + ": weights sum to zero");
  for (double& x : w) x /= s;
  return w;
}

double gaussian_upper(double sigma, double tail) {
  return kSqrt2 * sigma * boost::math::erfc_inv(2.0 * tail);
}

}  // namespace

std::size_t StepParams::batches() const {
  return static_cast<std::size_t>(std::llround(0.5 / eps));
}

void StepParams::validate() const {
  require(std::isfinite(eps) && eps > 0.0 && eps <= 0.5, "step: eps must lie in (0, 1/2]");
  const double k = 0.5 / eps;
  require(std::abs(k - std::round(k)) <= 1e-9 * k, "step: 1/(2 eps) must be a positive integer");
  require(v.size() == batches(), "step: v must have length 1/(2 eps)");
  for (double x : v) require(x >= 0.0 && x <= eps / 2, "step: each v_i must lie in [0, eps/2]");
}

void DvParams::validate() const {
  require(T >= 1, "dv_uniform: T must be a positive integer");
  require(v.size() == static_cast<std::size_t>(T), "dv_uniform: v must have length T");
  for (int b : v) require(b == 0 || b == 1, "dv_uniform: entries of v must be 0 or 1");
}

StepParams random_step_params(double eps, Rng& rng) {
  StepParams p;
  p.eps = eps;
  p.v.resize(static_cast<std::size_t>(std::llround(0.5 / eps)));
  for (double& x : p.v) x = rng.uniform() * eps / 2;
  p.validate();
  return p;
}

DvParams random_dv_params(int T, Rng& rng) {
  DvParams p;
  p.T = T;
  p.v.resize(static_cast<std::size_t>(T));
  for (int& b : p.v) b = static_cast<int>(rng.next_u64() >> 63);
  return p;
}

double s_w_eval(double w, double eps, double x) {
  if (!(x >= 0.0 && x <= eps)) throw DomainError("s_w: argument outside [0, eps]");
  if (x < eps / 2 - w) return 0.0;
  if (x <= eps / 2 + w) return eps / 2;
  return eps;
}

DensityModel::DensityModel(Family family, double center) : family_(std::move(family)), center_(center) {
  require(std::isfinite(center_), "center must be finite");
  std::visit(
      overloaded{
          [](family::Gaussian& f) { require(positive_finite(f.sigma), "gaussian: sigma must be positive"); },
          [](family::Uniform& f) {
            require(positive_finite(f.half_width), "uniform: half_width must be positive");
          },
          [](family::Semicircle& f) { require(positive_finite(f.radius), "semicircle: radius must be positive"); },
          [](family::Mixture& f) {
            f.weights = normalized_weights(std::move(f.weights), f.components.size(), "mixture");
          },
          [](family::UnifGaussConv& f) {
            require(positive_finite(f.half_width) && positive_finite(f.sigma),
                    "unif_gauss_conv: half_width and sigma must be positive");
          },
          [](family::GaussianScaleMixture& f) {
            f.weights = normalized_weights(std::move(f.weights), f.sigmas.size(), "gaussian_scale_mixture");
            for (double s : f.sigmas) require(positive_finite(s), "gaussian_scale_mixture: sigmas must be positive");
          },
          [](family::Triangle&) {},
          [this](family::Step& f) {
            f.params.validate();
            const StepParams p = f.params;
            table_ = build_table(mirror(step_half_knots(p, false)),
                                 [p](double t) { return step_pdf(p, std::abs(t)); });
          },
          [this](family::ModTriangle& f) {
            StepParams probe{f.eps, std::vector<double>(static_cast<std::size_t>(std::max(1LL, std::llround(0.5 / f.eps))), 0.0)};
            probe.validate();
            const double eps = f.eps;
            table_ = build_table(mirror(mod_tri_half_knots(eps)),
                                 [eps](double t) { return mod_tri_pdf(eps, std::abs(t)); });
          },
          [this](family::ModStep& f) {
            f.params.validate();
            const StepParams p = f.params;
            table_ = build_table(mirror(step_half_knots(p, true)),
                                 [p](double t) { return mod_step_pdf(p, std::abs(t)); });
          },
          [this](family::DvUniform& f) {
            f.params.validate();
            const DvParams p = f.params;
            table_ = build_table(mirror(dv_half_knots(p)), [p](double t) { return dv_pdf(p, std::abs(t)); });
          },
      },
      family_);
  if (std::holds_alternative<family::Triangle>(family_)) {
    table_ = build_table({-1.0, 0.0, 1.0}, [](double t) { return std::max(0.0, 1.0 - std::abs(t)); });
  }
}

std::string DensityModel::kind() const {
  static const char* names[] = {"gaussian", "uniform",  "semicircle", "mixture",  "unif_gauss_conv", "gaussian_scale_mixture",
                                "triangle", "step",     "mod_triangle", "mod_step", "dv_uniform"};
  return names[family_.index()];
}

DensityModel DensityModel::shifted(double mu) const {
  DensityModel out = *this;
  out.center_ = center_ + mu;
  return out;
}

DensityModel shift(const DensityModel& model, double mu) { return model.shifted(mu); }

double DensityModel::pdf0(double t) const {
  return std::visit(
      overloaded{
          [t](const family::Gaussian& f) { return phi(t / f.sigma) / f.sigma; },
          [t](const family::Uniform& f) { return std::abs(t) <= f.half_width ? 0.5 / f.half_width : 0.0; },
          [t](const family::Semicircle& f) {
            const double r2 = f.radius * f.radius - t * t;
            return r2 > 0.0 ? 2.0 * std::sqrt(r2) / (std::numbers::pi * f.radius * f.radius) : 0.0;
          },
          [t](const family::Mixture& f) {
            double s = 0.0;
            for (std::size_t i = 0; i < f.components.size(); ++i) s += f.weights[i] * f.components[i].pdf(t);
            return s;
          },
          [t](const family::UnifGaussConv& f) {
            const double a = std::abs(t);
            // upper-tail form keeps precision away from the center
            const double hi = 0.5 * std::erfc((a - f.half_width) / (f.sigma * kSqrt2));
            const double lo = 0.5 * std::erfc((a + f.half_width) / (f.sigma * kSqrt2));
            return (hi - lo) / (2.0 * f.half_width);
          },
          [t](const family::GaussianScaleMixture& f) {
            double s = 0.0;
            for (std::size_t i = 0; i < f.sigmas.size(); ++i) s += f.weights[i] * phi(t / f.sigmas[i]) / f.sigmas[i];
            return s;
          },
          [t](const family::Triangle&) { return std::abs(t) <= 1.0 ? 1.0 - std::abs(t) : 0.0; },
          [t](const family::Step& f) { return step_pdf(f.params, std::abs(t)); },
          [t](const family::ModTriangle& f) { return mod_tri_pdf(f.eps, std::abs(t)); },
          [t](const family::ModStep& f) { return mod_step_pdf(f.params, std::abs(t)); },
          [t](const family::DvUniform& f) { return static_cast<double>(dv_pdf(f.params, std::abs(t))); },
      },
      family_);
}

double DensityModel::pdf(double x) const { return pdf0(x - center_); }

double DensityModel::log_pdf(double x) const {
  const double t = x - center_;
  if (const auto* g = std::get_if<family::Gaussian>(&family_)) {
    const double z = t / g->sigma;
    return -0.5 * z * z - std::log(g->sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  if (const auto* g = std::get_if<family::GaussianScaleMixture>(&family_)) {
    std::vector<double> terms;
    for (std::size_t i = 0; i < g->sigmas.size(); ++i) {
      const double z = t / g->sigmas[i];
      terms.push_back(std::log(g->weights[i]) - 0.5 * z * z - std::log(g->sigmas[i]) -
                      0.5 * std::log(2.0 * std::numbers::pi));
    }
    return log_sum_exp(terms);
  }
  if (const auto* m = std::get_if<family::Mixture>(&family_)) {
    std::vector<double> terms;
    for (std::size_t i = 0; i < m->components.size(); ++i)
      terms.push_back(std::log(m->weights[i]) + m->components[i].log_pdf(t));
    return log_sum_exp(terms);
  }
  const double p = pdf0(t);
  return p > 0.0 ? std::log(p) : -kInf;
}

double DensityModel::cdf0(double t) const {
  if (table_) return table_->cdf(t);
  return std::visit(
      overloaded{
          [t](const family::Gaussian& f) { return Phi(t / f.sigma); },
          [t](const family::Uniform& f) { return std::clamp(0.5 + 0.5 * t / f.half_width, 0.0, 1.0); },
          [t](const family::Semicircle& f) {
            const double u = std::clamp(t / f.radius, -1.0, 1.0);
            return std::clamp(0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / std::numbers::pi, 0.0, 1.0);
          },
          [t](const family::Mixture& f) {
            double s = 0.0;
            for (std::size_t i = 0; i < f.components.size(); ++i) s += f.weights[i] * f.components[i].cdf(t);
            return std::min(s, 1.0);
          },
          [t](const family::UnifGaussConv& f) {
            const auto G = [&](double s) {
              const double z = s / f.sigma;
              return f.sigma * (z * Phi(z) + phi(z));
            };
            if (t > 0.0) {
              const double left = (G(-t + f.half_width) - G(-t - f.half_width)) / (2.0 * f.half_width);
              return std::clamp(1.0 - left, 0.0, 1.0);
            }
            return std::clamp((G(t + f.half_width) - G(t - f.half_width)) / (2.0 * f.half_width), 0.0, 1.0);
          },
          [t](const family::GaussianScaleMixture& f) {
            double s = 0.0;
            for (std::size_t i = 0; i < f.sigmas.size(); ++i) s += f.weights[i] * Phi(t / f.sigmas[i]);
            return std::min(s, 1.0);
          },
          [](const auto&) -> double { throw NumericError("piecewise table missing", 0.0); },
      },
      family_);
}

double DensityModel::sf0(double t) const {
  if (const auto* m = std::get_if<family::Mixture>(&family_)) {
    double s = 0.0;
    for (std::size_t i = 0; i < m->components.size(); ++i) s += m->weights[i] * m->components[i].sf(t);
    return std::min(s, 1.0);
  }
  // every other family is symmetric about its center
  return cdf0(-t);
}

double DensityModel::cdf(double x) const { return cdf0(x - center_); }
double DensityModel::sf(double x) const { return sf0(x - center_); }

double DensityModel::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u must lie in [0, 1]");
  if (table_) return center_ + table_->quantile(u);
  if (const auto* g = std::get_if<family::Gaussian>(&family_)) {
    if (u == 0.0) return -kInf;
    if (u == 1.0) return kInf;
    return center_ - kSqrt2 * g->sigma * boost::math::erfc_inv(2.0 * u);
  }
  if (const auto* g = std::get_if<family::Uniform>(&family_)) return center_ + g->half_width * (2.0 * u - 1.0);
  const auto [slo, shi] = support();
  if (u == 0.0) return slo;
  if (u == 1.0) return shi;
  auto [lo, hi] = effective_support(std::min({u, 1.0 - u, 1e-13}) * 0.5);
  while (cdf(lo) > u) lo = center_ - 2.0 * (center_ - lo);
  while (cdf(hi) < u) hi = center_ + 2.0 * (hi - center_);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * lo + 0.5 * hi;
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) < u)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * lo + 0.5 * hi;
}

std::pair<double, double> DensityModel::support() const {
  const double r = std::visit(
      overloaded{
          [](const family::Gaussian&) { return kInf; },
          [](const family::Uniform& f) { return f.half_width; },
          [](const family::Semicircle& f) { return f.radius; },
          [](const family::Mixture&) { return 0.0; },
          [](const family::UnifGaussConv&) { return kInf; },
          [](const family::GaussianScaleMixture&) { return kInf; },
          [](const family::Triangle&) { return 1.0; },
          [](const family::Step&) { return 1.0; },
          [](const family::ModTriangle&) { return 1.5; },
          [](const family::ModStep&) { return 1.5; },
          [](const family::DvUniform&) { return 1.0; },
      },
      family_);
  if (const auto* m = std::get_if<family::Mixture>(&family_)) {
    double lo = kInf, hi = -kInf;
    for (const auto& c : m->components) {
      auto [a, b] = c.support();
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
    return {center_ + lo, center_ + hi};
  }
  return {center_ - r, center_ + r};
}

std::pair<double, double> DensityModel::effective_support(double tail_mass) const {
  if (const auto* g = std::get_if<family::Gaussian>(&family_)) {
    const double r = gaussian_upper(g->sigma, tail_mass);
    return {center_ - r, center_ + r};
  }
  if (const auto* g = std::get_if<family::UnifGaussConv>(&family_)) {
    const double r = g->half_width + gaussian_upper(g->sigma, tail_mass);
    return {center_ - r, center_ + r};
  }
  if (const auto* g = std::get_if<family::GaussianScaleMixture>(&family_)) {
    const double r = gaussian_upper(*std::max_element(g->sigmas.begin(), g->sigmas.end()), tail_mass);
    return {center_ - r, center_ + r};
  }
  if (const auto* m = std::get_if<family::Mixture>(&family_)) {
    double lo = kInf, hi = -kInf;
    for (const auto& c : m->components) {
      auto [a, b] = c.effective_support(tail_mass);
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
    return {center_ + lo, center_ + hi};
  }
  return support();
}

std::vector<double> DensityModel::breakpoints() const {
  std::vector<double> rel;
  if (table_) {
    rel = table_->knots;
  } else {
    std::visit(overloaded{
                   [&](const family::Uniform& f) { rel = {-f.half_width, f.half_width}; },
                   [&](const family::Semicircle& f) { rel = {-f.radius, f.radius}; },
                   [&](const family::Mixture& f) {
                     for (const auto& c : f.components) {
                       auto b = c.breakpoints();
                       rel.insert(rel.end(), b.begin(), b.end());
                     }
                   },
                   [](const auto&) {},
               },
               family_);
  }
  for (double& x : rel) x += center_;
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  return rel;
}

std::vector<double> DensityModel::sqrt_edges() const {
  std::vector<double> out;
  if (const auto* s = std::get_if<family::Semicircle>(&family_)) {
    out = {center_ - s->radius, center_ + s->radius};
  } else if (const auto* m = std::get_if<family::Mixture>(&family_)) {
    for (const auto& c : m->components)
      for (double e : c.sqrt_edges()) out.push_back(e + center_);
  }
  return out;
}

double DensityModel::mode() const {
  if (const auto* m = std::get_if<family::Mixture>(&family_)) {
    // components may sit at different centers; pick the highest component peak
    double best = center_, best_p = -1.0;
    for (const auto& c : m->components) {
      const double x = center_ + c.mode();
      const double p = pdf(x);
      if (p > best_p) {
        best_p = p;
        best = x;
      }
    }
    return best;
  }
  return center_;
}

double DensityModel::draw(Rng& rng) const {
  if (table_) return center_ + table_->quantile(rng.uniform());
  return std::visit(
      overloaded{
          [&](const family::Gaussian& f) { return center_ + f.sigma * rng.normal(); },
          [&](const family::Uniform& f) { return center_ + f.half_width * (2.0 * rng.uniform() - 1.0); },
          [&](const family::Semicircle& f) {
            double u, v;
            do {
              u = 2.0 * rng.uniform() - 1.0;
              v = 2.0 * rng.uniform() - 1.0;
            } while (u * u + v * v > 1.0);
            return center_ + f.radius * u;
          },
          [&](const family::Mixture& f) {
            double u = rng.uniform();
            std::size_t i = 0;
            while (i + 1 < f.weights.size() && u >= f.weights[i]) u -= f.weights[i++];
            return center_ + f.components[i].draw(rng);
          },
          [&](const family::UnifGaussConv& f) {
            const double a = f.half_width * (2.0 * rng.uniform() - 1.0);
            return center_ + a + f.sigma * rng.normal();
          },
          [&](const family::GaussianScaleMixture& f) {
            double u = rng.uniform();
            std::size_t i = 0;
            while (i + 1 < f.weights.size() && u >= f.weights[i]) u -= f.weights[i++];
            return center_ + f.sigmas[i] * rng.normal();
          },
          [](const auto&) -> double { throw NumericError("piecewise table missing", 0.0); },
      },
      family_);
}

DensityModel gaussian(double mu, double sigma) { return DensityModel(family::Gaussian{sigma}, mu); }
DensityModel uniform(double center, double half_width) { return DensityModel(family::Uniform{half_width}, center); }
DensityModel semicircle(double center, double radius) { return DensityModel(family::Semicircle{radius}, center); }
DensityModel mixture(std::vector<double> weights, std::vector<DensityModel> components, double center) {
  return DensityModel(family::Mixture{std::move(weights), std::move(components)}, center);
}
DensityModel unif_gauss_conv(double center, double half_width, double sigma) {
  return DensityModel(family::UnifGaussConv{half_width, sigma}, center);
}
DensityModel gaussian_scale_mixture(double mu, std::vector<double> weights, std::vector<double> sigmas) {
  return DensityModel(family::GaussianScaleMixture{std::move(weights), std::move(sigmas)}, mu);
}
DensityModel triangle(double center) { return DensityModel(family::Triangle{}, center); }
DensityModel step(StepParams params, double center) { return DensityModel(family::Step{std::move(params)}, center); }
DensityModel mod_triangle(double eps, double center) { return DensityModel(family::ModTriangle{eps}, center); }
DensityModel mod_step(StepParams params, double center) {
  return DensityModel(family::ModStep{std::move(params)}, center);
}
DensityModel dv_uniform(DvParams params, double center) {
  return DensityModel(family::DvUniform{std::move(params)}, center);
}

}  // namespace locest

#include "locest/hellinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "locest/errors.hpp"
#include "locest/quadrature.hpp"

namespace locest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Integrand>
HellingerResult integrate_pair(const DensityModel& p, const DensityModel& q, double tol, Integrand g) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const auto [plo, phi] = p.effective_support(kTailTruncation);
  const auto [qlo, qhi] = q.effective_support(kTailTruncation);
  const double lo = std::min(plo, qlo), hi = std::max(phi, qhi);

  std::vector<double> extra = p.breakpoints();
  const auto qb = q.breakpoints();
  extra.insert(extra.end(), qb.begin(), qb.end());
  extra.push_back(p.mode());
  extra.push_back(q.mode());
  std::vector<double> edges = p.sqrt_edges();
  const auto qe = q.sqrt_edges();
  edges.insert(edges.end(), qe.begin(), qe.end());

  const auto r = integrate_panels([&](double x) { return g(p.pdf(x), q.pdf(x)); }, make_cuts(lo, hi, extra), tol,
                                  edges);
  HellingerResult out;
  out.value = std::clamp(r.value, 0.0, 1.0);
  const double dropped = p.cdf(lo) + p.sf(hi) + q.cdf(lo) + q.sf(hi);
  out.est_abs_error = r.abs_error + dropped;
  out.support_truncation = {lo, hi};
  return out;
}

}  // namespace

HellingerResult sq_hellinger(const DensityModel& p, const DensityModel& q, double tol) {
  return integrate_pair(p, q, tol, [](double a, double b) {
    const double d = std::sqrt(a) - std::sqrt(b);
    return 0.5 * d * d;
  });
}

HellingerResult tv_distance(const DensityModel& p, const DensityModel& q, double tol) {
  return integrate_pair(p, q, tol, [](double a, double b) { return 0.5 * std::abs(a - b); });
}

double tensorize(double h, std::size_t n) {
  if (!(h >= 0.0 && h <= 1.0)) throw DomainError("tensorize: h must lie in [0, 1]");
  if (n == 0) throw DomainError("tensorize: n must be at least 1");
  if (h == 0.0) return 0.0;
  // -expm1(n log1p(-h)) = 1 - (1 - h)^n without cancellation for small h
  return -std::expm1(static_cast<double>(n) * std::log1p(-h));
}

std::pair<double, double> tv_bounds(double h) {
  if (!(h >= 0.0 && h <= 1.0)) throw DomainError("tv_bounds: h must lie in [0, 1]");
  return {h, std::min(1.0, std::sqrt(2.0 * h))};
}

double central_mass(const DensityModel& model, double center, double delta) {
  return std::max(0.0, model.cdf(center + delta) - model.cdf(center - delta));
}

ModulusResult modulus_query(const DensityModel& model, double eps, const ModulusOptions& opt) {
  if (!(eps >= 0.0)) throw DomainError("modulus: eps must be non-negative");
  ModulusResult res;
  if (eps == 0.0) return res;

  double delta_max = opt.delta_max;
  if (!(delta_max > 0.0)) {
    const auto [lo, hi] = model.support();
    delta_max = std::isfinite(lo) && std::isfinite(hi) ? 10.0 * (hi - lo) : 1e6;
  }
  const auto d = [&](double delta) {
    ++res.evaluations;
    return sq_hellinger(model, model.shifted(delta), opt.tol).value;
  };

  const auto [elo, ehi] = model.effective_support(kTailTruncation);
  const double scale = std::min(0.5 * (ehi - elo), delta_max);

  // exponential search for a bracket d(lo) <= eps < d(hi)
  double lo = 0.0, hi = scale * 0x1.0p-20;
  while (d(hi) <= eps) {
    lo = hi;
    if (hi >= delta_max) {
      res.delta = kInf;
      return res;
    }
    hi = std::min(2.0 * hi, delta_max);
  }

  // monotonicity spot check on an 8-point grid over [0, hi]
  bool monotone = true;
  double prev = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const double v = d(hi * k / 8.0);
    if (v + opt.tol < prev) monotone = false;
    prev = std::max(prev, v);
  }
  res.monotone_checked = monotone;

  if (!monotone) {
    // sup semantics: largest grid shift still within eps, refined against its right neighbour
    res.used_dense_scan = true;
    const std::size_t m = std::max<std::size_t>(opt.dense_grid, 8);
    std::size_t best = 0;
    for (std::size_t k = 1; k <= m; ++k)
      if (d(delta_max * static_cast<double>(k) / static_cast<double>(m)) <= eps) best = k;
    if (best == m) {
      res.delta = kInf;
      return res;
    }
    lo = delta_max * static_cast<double>(best) / static_cast<double>(m);
    hi = delta_max * static_cast<double>(best + 1) / static_cast<double>(m);
  }

  while (hi - lo > opt.tol_delta) {
    const double mid = 0.5 * lo + 0.5 * hi;
    if (mid <= lo || mid >= hi) break;
    if (d(mid) <= eps)
      lo = mid;
    else
      hi = mid;
  }
  res.delta = lo;
  return res;
}

double modulus(const DensityModel& model, double eps, double tol_delta) {
  ModulusOptions opt;
  opt.tol_delta = tol_delta;
  return modulus_query(model, eps, opt).delta;
}

}  // namespace locest

#include "locest/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "locest/errors.hpp"

namespace locest {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// One Kronrod rule per call (depth 0), bisecting until the absolute target is met.
template <class F>
QuadResult adapt(const F& f, double a, double b, double target, int depth) {
  const double w = b - a;
  // evaluate on [0, 1]: the library's error estimate misbehaves on narrow panels far from the origin
  const auto unit = [&](double t) { return w * f(a + w * t); };
  double err = 0.0, l1 = 0.0;
  const double v = GK::integrate(unit, 0.0, 1.0, 0, 0.0, &err, &l1);
  if (err <= std::max(target, 1e-15 * l1) || depth >= 40 || w <= 1e-15 * std::max(1.0, std::abs(a))) {
    return {v, std::max(err, 4e-16 * l1)};
  }
  const double m = a + 0.5 * w;
  const QuadResult left = adapt(f, a, m, 0.5 * target, depth + 1);
  const QuadResult right = adapt(f, m, b, 0.5 * target, depth + 1);
  return {left.value + right.value, left.abs_error + right.abs_error};
}

}  // namespace

std::vector<double> make_cuts(double lo, double hi, const std::vector<double>& extra) {
  std::vector<double> cuts{lo, hi};
  for (double x : extra)
    if (x > lo && x < hi) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

QuadResult integrate_panels(const std::function<double(double)>& f, std::vector<double> cuts, double tol,
                            const std::vector<double>& sqrt_edges) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  QuadResult out;
  if (cuts.size() < 2) return out;

  const auto checked = [&f](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw NumericError("non-finite integrand", x);
    return y;
  };
  const auto is_edge = [&sqrt_edges](double x) {
    return std::any_of(sqrt_edges.begin(), sqrt_edges.end(), [x](double e) { return e == x; });
  };

  const double panel_target = 1e-2 * tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    if (is_edge(a) || is_edge(b)) {
      static thread_local boost::math::quadrature::tanh_sinh<double> ts(8);
      double err = 0.0, l1 = 0.0;
      const double v = ts.integrate(checked, a, b, 1e-12, &err, &l1);
      out.value += v;
      out.abs_error += err * std::max(l1, std::abs(v));
    } else {
      const QuadResult r = adapt(checked, a, b, panel_target, 0);
      out.value += r.value;
      out.abs_error += r.abs_error;
    }
  }
  return out;
}

}  // namespace locest

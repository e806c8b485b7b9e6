#pragma once

#include <functional>
#include <vector>

namespace locest {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
};

/// Integrates f over [cuts.front(), cuts.back()], one adaptive panel per
/// consecutive pair of cuts. Panels with an endpoint in `sqrt_edges` use a
/// double-exponential rule that tolerates square-root endpoint behavior.
/// Any non-finite integrand value raises NumericError.
QuadResult integrate_panels(const std::function<double(double)>& f, std::vector<double> cuts, double tol,
                            const std::vector<double>& sqrt_edges = {});

/// Sorted unique cut list: [lo, hi] plus every point of `extra` inside it.
std::vector<double> make_cuts(double lo, double hi, const std::vector<double>& extra);

}  // namespace locest

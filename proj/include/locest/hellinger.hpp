#pragma once

#include <cstddef>
#include <utility>

#include "locest/distributions.hpp"

namespace locest {

struct HellingerResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  std::pair<double, double> support_truncation;
};

inline constexpr double kDefaultHellingerTol = 1e-9;
inline constexpr double kTailTruncation = 1e-13;

/// Squared Hellinger distance 1/2 * integral (sqrt p - sqrt q)^2.
HellingerResult sq_hellinger(const DensityModel& p, const DensityModel& q, double tol = kDefaultHellingerTol);

/// Total variation 1/2 * integral |p - q|, same quadrature layout.
HellingerResult tv_distance(const DensityModel& p, const DensityModel& q, double tol = kDefaultHellingerTol);

/// Squared Hellinger distance between n-fold products.
double tensorize(double h, std::size_t n);

/// (h, min(1, sqrt(2h))): the total variation sandwich.
std::pair<double, double> tv_bounds(double h);

/// Probability mass of [center - delta, center + delta].
double central_mass(const DensityModel& model, double center, double delta);

struct ModulusOptions {
  double tol_delta = 1e-7;
  double tol = kDefaultHellingerTol;
  /// 0 selects 10x the support diameter, or 1e6 for unbounded support.
  double delta_max = 0.0;
  std::size_t dense_grid = 2048;
};

struct ModulusResult {
  double delta = 0.0;  // +inf when no shift up to delta_max exceeds eps
  bool monotone_checked = true;
  bool used_dense_scan = false;
  std::size_t evaluations = 0;
};

/// Largest shift whose squared Hellinger distance to the model stays <= eps.
ModulusResult modulus_query(const DensityModel& model, double eps, const ModulusOptions& opt = {});
double modulus(const DensityModel& model, double eps, double tol_delta = 1e-7);

}  // namespace locest

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "locest/rng.hpp"

namespace locest {

class DensityModel;

/// Step-family parameters: batch width eps with 1/(2 eps) batches, one
/// step offset v[i] in [0, eps/2] per batch.
struct StepParams {
  double eps = 0.25;
  std::vector<double> v;

  std::size_t batches() const;
  void validate() const;
};

/// Bit vector of the modified symmetric uniform family.
struct DvParams {
  int T = 1;
  std::vector<int> v;

  void validate() const;
};

/// Draw v_i ~ Unif(0, eps/2) independently.
StepParams random_step_params(double eps, Rng& rng);
DvParams random_dv_params(int T, Rng& rng);

namespace family {

struct Gaussian {
  double sigma = 1.0;
};
struct Uniform {
  double half_width = 1.0;
};
struct Semicircle {
  double radius = 1.0;
};
/// Component centers are relative to the mixture center.
struct Mixture {
  std::vector<double> weights;
  std::vector<DensityModel> components;
};
/// Unif(-half_width, half_width) convolved with N(0, sigma^2).
struct UnifGaussConv {
  double half_width = 1.0;
  double sigma = 1.0;
};
struct GaussianScaleMixture {
  std::vector<double> weights;
  std::vector<double> sigmas;
};
struct Triangle {};
struct Step {
  StepParams params;
};
struct ModTriangle {
  double eps = 0.25;
};
struct ModStep {
  StepParams params;
};
struct DvUniform {
  DvParams params;
};

}  // namespace family

using Family = std::variant<family::Gaussian, family::Uniform, family::Semicircle, family::Mixture,
                            family::UnifGaussConv, family::GaussianScaleMixture, family::Triangle,
                            family::Step, family::ModTriangle, family::ModStep, family::DvUniform>;

namespace detail {
struct PiecewiseLinear;
}

/// A univariate density p(x - center). Immutable once built; parameters are
/// validated on construction.
class DensityModel {
 public:
  DensityModel(Family family, double center = 0.0);

  const Family& family() const noexcept { return family_; }
  double center() const noexcept { return center_; }
  std::string kind() const;

  /// p(x - mu): same shape, center moved by mu.
  DensityModel shifted(double mu) const;

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  /// 1 - cdf(x) without cancellation in the right tail.
  double sf(double x) const;
  double quantile(double u) const;

  /// Closed support; infinite endpoints for unbounded families.
  std::pair<double, double> support() const;
  /// Support trimmed where each tail carries less than tail_mass.
  std::pair<double, double> effective_support(double tail_mass = 1e-13) const;
  /// Points where the density or its derivative jumps, sorted.
  std::vector<double> breakpoints() const;
  /// Points near which the density behaves like a square root (semicircle edges).
  std::vector<double> sqrt_edges() const;
  double mode() const;
  bool symmetric() const noexcept { return true; }

  /// One draw, not sorted.
  double draw(Rng& rng) const;

 private:
  double pdf0(double t) const;
  double cdf0(double t) const;
  double sf0(double t) const;

  Family family_;
  double center_;
  std::shared_ptr<const detail::PiecewiseLinear> table_;
};

DensityModel shift(const DensityModel& model, double mu);

// Builders for the common families.
DensityModel gaussian(double mu, double sigma);
DensityModel uniform(double center, double half_width);
DensityModel semicircle(double center, double radius);
DensityModel mixture(std::vector<double> weights, std::vector<DensityModel> components,
                     double center = 0.0);
DensityModel unif_gauss_conv(double center, double half_width, double sigma);
DensityModel gaussian_scale_mixture(double mu, std::vector<double> weights, std::vector<double> sigmas);
DensityModel triangle(double center = 0.0);
DensityModel step(StepParams params, double center = 0.0);
DensityModel mod_triangle(double eps, double center = 0.0);
DensityModel mod_step(StepParams params, double center = 0.0);
DensityModel dv_uniform(DvParams params, double center = 0.0);

/// Three-step helper of the step family on [0, eps]; s_w(eps) = eps except
/// when w = eps/2, where the closed middle branch reaches eps.
double s_w_eval(double w, double eps, double x);

}  // namespace locest

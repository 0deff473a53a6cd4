// regression.hpp - ordinary least squares with standard errors
#pragma once

#include <span>
#include <utility>
#include <vector>

namespace pagecurve {

struct RegressionResult {
  double intercept = 0.0;
  double intercept_stderr = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> residuals;
};

/// y = intercept + slope * x. Needs >= 3 points with distinct x; throws
/// InputError otherwise. Standard errors use s^2 = SSR / (n - 2).
RegressionResult ordinary_least_squares(std::span<const double> x, std::span<const double> y);

/// Regression of an observable against x = 1/M; the intercept is the
/// thermodynamic-limit extrapolation.
RegressionResult regress_to_tl(std::span<const std::pair<double, double>> points);

}  // namespace pagecurve

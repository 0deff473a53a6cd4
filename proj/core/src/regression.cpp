// regression.cpp
#include "pagecurve/regression.hpp"

#include <algorithm>
#include <cmath>

#include "pagecurve/errors.hpp"

namespace pagecurve {

RegressionResult ordinary_least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw InputError("regression: x and y differ in length");
  if (n < 3) throw InputError("regression needs at least 3 points");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("regression needs distinct x values");

  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mean_x) * (x[i] - mean_x);
    sxy += (x[i] - mean_x) * (y[i] - mean_y);
    syy += (y[i] - mean_y) * (y[i] - mean_y);
  }
  const double spread = sorted.back() - sorted.front();
  if (!(sxx > 1e-24 * std::max(1.0, spread * spread * n)))
    throw InputError("regression: x values are degenerate");

  RegressionResult r;
  r.x.assign(x.begin(), x.end());
  r.y.assign(y.begin(), y.end());
  r.slope = sxy / sxx;
  r.intercept = mean_y - r.slope * mean_x;
  double ssr = 0.0;
  r.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.residuals[i] = y[i] - (r.intercept + r.slope * x[i]);
    ssr += r.residuals[i] * r.residuals[i];
  }
  const double s2 = ssr / static_cast<double>(n - 2);
  r.slope_stderr = std::sqrt(s2 / sxx);
  r.intercept_stderr = std::sqrt(s2 * (1.0 / n + mean_x * mean_x / sxx));
  r.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return r;
}

RegressionResult regress_to_tl(std::span<const std::pair<double, double>> points) {
  std::vector<double> x, y;
  x.reserve(points.size());
  y.reserve(points.size());
  for (const auto& [px, py] : points) {
    x.push_back(px);
    y.push_back(py);
  }
  return ordinary_least_squares(x, y);
}

}  // namespace pagecurve

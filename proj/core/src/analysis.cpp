// analysis.cpp
#include "pagecurve/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pagecurve/errors.hpp"

namespace pagecurve {
namespace {

// Largest Schmidt value at a position after `from` carrying `sector`; falls
// back to the neighbour at from + 1 when the sector is not among the stored levels.
double branch_value(const std::vector<SchmidtLevel>& levels, std::size_t from, int sector) {
  for (std::size_t j = from + 1; j < levels.size(); ++j)
    if (levels[j].sector == sector) return levels[j].lambda;
  return levels[from + 1].lambda;
}

bool labelled(std::span<const EntanglementRecord> records, std::size_t depth) {
  for (const auto& r : records)
    for (std::size_t j = 0; j < depth && j < r.levels.size(); ++j)
      if (r.levels[j].sector < 0) return false;
  return true;
}

constexpr double kNegligibleLevel = 1e-10;

}  // namespace

std::vector<KinkEvent> detect_kinks(std::span<const EntanglementRecord> records, int pairs) {
  if (pairs < 1) throw InputError("detect_kinks: pairs must be >= 1");
  for (const auto& r : records)
    if (r.levels.size() < 2) throw InputError("detect_kinks needs at least two Schmidt values");
  std::vector<KinkEvent> events;
  if (records.size() < 2) return events;

  std::size_t depth = records.front().levels.size();
  for (const auto& r : records) depth = std::min(depth, r.levels.size());
  const int usable = static_cast<int>(std::min<std::size_t>(pairs, depth - 1));
  const bool sectors = labelled(records, depth);

  for (int p = 0; p < usable; ++p) {
    const auto pos = static_cast<std::size_t>(p);
    std::vector<KinkEvent> found;
    for (std::size_t k = 1; k < records.size(); ++k) {
      const auto& a = records[k - 1].levels;
      const auto& b = records[k].levels;
      if (std::max(a[pos].lambda, b[pos].lambda) < kNegligibleLevel) continue;
      double d0 = 0.0, d1 = 0.0;
      int before = a[pos].sector, after = b[pos].sector;
      if (sectors) {
        if (before == after) continue;
        d0 = a[pos].lambda - branch_value(a, pos, after);
        d1 = branch_value(b, pos, before) - b[pos].lambda;
      } else {
        d0 = a[pos].lambda - a[pos + 1].lambda;
        d1 = b[pos].lambda - b[pos + 1].lambda;
        const bool down = d0 > 0.0 && d1 <= 0.0;
        const bool up = d0 < 0.0 && d1 >= 0.0;
        if (!down && !up) continue;
      }
      const double f = (d0 == d1) ? 0.5 : std::clamp(d0 / (d0 - d1), 0.0, 1.0);
      const auto& ra = records[k - 1];
      const auto& rb = records[k];
      KinkEvent e;
      e.t_c = ra.time + f * (rb.time - ra.time);
      e.decayed_fraction = ra.decayed_fraction + f * (rb.decayed_fraction - ra.decayed_fraction);
      e.upper_level = p + 1;
      e.lower_level = p + 2;
      e.sector_before = before;
      e.sector_after = after;
      e.sample = k;
      found.push_back(e);
    }
    for (std::size_t i = 0; i < found.size(); ++i) found[i].ordinal = static_cast<int>(i) + 1;
    events.insert(events.end(), found.begin(), found.end());
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const KinkEvent& x, const KinkEvent& y) { return x.t_c < y.t_c; });
  return events;
}

std::vector<SlopeKink> detect_slope_kinks(std::span<const double> t, std::span<const double> y,
                                          SlopeKinkOptions options) {
  if (t.size() != y.size()) throw InputError("detect_slope_kinks: t and y differ in length");
  std::vector<SlopeKink> kinks;
  const std::size_t n = t.size();
  if (n < 5) return kinks;

  std::vector<double> d2(n, 0.0);
  for (std::size_t j = 1; j + 1 < n; ++j) d2[j] = std::abs(y[j + 1] - 2.0 * y[j] + y[j - 1]);

  const auto w = static_cast<std::size_t>(std::max(options.window, 2));
  std::vector<bool> flagged(n, false);
  std::vector<double> local;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const std::size_t lo = j > w ? j - w : 1;
    const std::size_t hi = std::min(n - 2, j + w);
    local.assign(d2.begin() + static_cast<std::ptrdiff_t>(lo),
                 d2.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    auto mid = local.begin() + static_cast<std::ptrdiff_t>(local.size() / 2);
    std::nth_element(local.begin(), mid, local.end());
    flagged[j] = d2[j] > options.floor && d2[j] > options.ratio * *mid;
  }

  for (std::size_t j = 1; j + 1 < n;) {
    if (!flagged[j]) {
      ++j;
      continue;
    }
    std::size_t j1 = j;
    while (j1 + 1 < n - 1 && flagged[j1 + 1]) ++j1;
    // Secants strictly outside the flagged cluster.
    const std::size_t l0 = j - 1, l1 = j;
    const std::size_t r0 = j1, r1 = j1 + 1;
    const double ml = (y[l1] - y[l0]) / (t[l1] - t[l0]);
    const double mr = (y[r1] - y[r0]) / (t[r1] - t[r0]);
    SlopeKink k;
    k.slope_jump = mr - ml;
    k.sample = j;
    if (ml != mr) {
      const double tx = (y[r0] - mr * t[r0] - y[l0] + ml * t[l0]) / (ml - mr);
      k.time = std::clamp(tx, t[l0], t[r1]);
    } else {
      k.time = 0.5 * (t[l1] + t[r0]);
    }
    kinks.push_back(k);
    j = j1 + 1;
  }
  return kinks;
}

PageTimeResult detect_page_time(std::span<const double> t, std::span<const double> s_vn, int M) {
  if (t.size() != s_vn.size()) throw InputError("detect_page_time: t and S differ in length");
  if (t.empty()) throw InputError("detect_page_time: empty series");
  if (M < 1) throw InputError("detect_page_time: M must be >= 1");
  PageTimeResult r;
  const auto it = std::max_element(s_vn.begin(), s_vn.end());
  const auto i = static_cast<std::size_t>(it - s_vn.begin());
  r.sample = i;
  r.t_page = t[i];
  r.peak = s_vn[i];
  if (i == 0 || i + 1 == t.size()) {
    r.at_boundary = true;
    r.warning = "entropy maximum lies on the edge of the time window";
  } else {
    const double x0 = t[i - 1], x1 = t[i], x2 = t[i + 1];
    const double y0 = s_vn[i - 1], y1 = s_vn[i], y2 = s_vn[i + 1];
    // Vertex of the interpolating parabola, in coordinates relative to x1.
    const double h0 = x0 - x1, h2 = x2 - x1;
    const double a0 = (y0 - y1) / h0, a2 = (y2 - y1) / h2;
    const double curv = (a2 - a0) / (h2 - h0);
    if (curv < 0.0) {
      const double lin = a0 - curv * h0;
      const double dx = std::clamp(-lin / (2.0 * curv), h0, h2);
      r.t_page = x1 + dx;
      r.peak = y1 + lin * dx + curv * dx * dx;
    }
  }
  r.peak_density = r.peak / M;
  return r;
}

PageTimeResult detect_page_time(std::span<const EntanglementRecord> records, int M) {
  std::vector<double> t, s;
  t.reserve(records.size());
  s.reserve(records.size());
  for (const auto& r : records) {
    t.push_back(r.time);
    s.push_back(r.s_vn);
  }
  return detect_page_time(t, s, M);
}

namespace {

struct Curve {
  std::vector<double> x, y;
};

double interp(const Curve& c, double x) {
  auto it = std::upper_bound(c.x.begin(), c.x.end(), x);
  if (it == c.x.begin()) return c.y.front();
  if (it == c.x.end()) return c.y.back();
  const auto j = static_cast<std::size_t>(it - c.x.begin());
  const double f = (x - c.x[j - 1]) / (c.x[j] - c.x[j - 1]);
  return c.y[j - 1] + f * (c.y[j] - c.y[j - 1]);
}

double median_of(std::vector<double>& v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double collapse_cost(std::span<const CollapseSeries> series, CollapseObservable observable,
                     double x_exponent, double y_exponent, const CollapseOptions& options) {
  if (series.size() < 2) throw InputError("collapse needs at least two curves");
  std::vector<Curve> curves;
  for (const auto& s : series) {
    if (s.time.size() != s.decayed_fraction.size() || s.time.size() != s.s_min.size())
      throw InputError("collapse series columns differ in length");
    const double M = s.M;
    const double xs = std::pow(M, x_exponent), ys = std::pow(M, y_exponent);
    const double tau_c = s.t_c / M;
    Curve c;
    for (std::size_t i = 0; i < s.time.size(); ++i) {
      if (std::abs(s.time[i] - s.t_c) > options.neighborhood) continue;
      const double obs = observable == CollapseObservable::DecayedFraction ? s.decayed_fraction[i]
                                                                           : s.s_min[i] / M;
      c.x.push_back((s.time[i] / M - tau_c) * xs);
      c.y.push_back(obs * ys);
    }
    if (c.x.size() < 2) throw InputError("collapse: fewer than two samples near t_c for M=" +
                                         std::to_string(s.M));
    curves.push_back(std::move(c));
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    lo = std::max(lo, c.x.front());
    hi = std::min(hi, c.x.back());
  }
  if (!(hi > lo)) throw FitError("collapse: rescaled curves share no abscissa range");

  const int npts = std::max(options.grid_points, 3);
  double spread = 0.0, scale = 0.0;
  std::vector<double> column(curves.size());
  for (int g = 0; g < npts; ++g) {
    const double x = lo + (hi - lo) * g / (npts - 1);
    for (std::size_t j = 0; j < curves.size(); ++j) column[j] = interp(curves[j], x);
    std::vector<double> sorted = column;
    const double med = median_of(sorted);
    for (double v : column) spread += (v - med) * (v - med);
    scale += med * med;
  }
  spread /= static_cast<double>(npts * curves.size());
  scale /= npts;
  if (!(scale > 0.0)) throw FitError("collapse: median curve vanishes identically");
  return spread / scale;
}

namespace {

template <class F>
double golden_section(F&& f, double lo, double hi, double tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ScalingFit fit_collapse(std::span<const CollapseSeries> series, CollapseOptions options) {
  if (series.size() < 3) throw InputError("collapse fit needs at least 3 system sizes");
  std::vector<double> lm, ltau;
  ScalingFit fit;
  for (const auto& s : series) {
    if (s.M < 1 || !std::isfinite(s.t_c) || !(s.t_c > 0.0))
      throw FitError("collapse: invalid t_c for M=" + std::to_string(s.M));
    lm.push_back(std::log(static_cast<double>(s.M)));
    ltau.push_back(std::log(s.t_c / s.M));
    fit.sizes.push_back(s.M);
  }
  RegressionResult line;
  try {
    line = ordinary_least_squares(lm, ltau);
  } catch (const InputError& e) {
    throw FitError(std::string("collapse: ") + e.what());
  }
  if (!(line.slope < 0.0)) throw FitError("collapse: t_c/M does not decrease with M");
  fit.c = -1.0 / line.slope;
  const double xe = 1.0 / fit.c;

  auto cost_b = [&](double b) {
    return collapse_cost(series, CollapseObservable::DecayedFraction, xe, b / fit.c, options);
  };
  auto cost_a = [&](double a) {
    return collapse_cost(series, CollapseObservable::MinEntropyDensity, xe, a, options);
  };
  fit.b = golden_section(cost_b, options.exponent_min, options.exponent_max, options.tolerance);
  fit.a = golden_section(cost_a, options.exponent_min, options.exponent_max, options.tolerance);
  fit.cost_b = cost_b(fit.b);
  fit.cost_a = cost_a(fit.a);
  fit.baseline_b = collapse_cost(series, CollapseObservable::DecayedFraction, 0.0, 0.0, options);
  fit.baseline_a = collapse_cost(series, CollapseObservable::MinEntropyDensity, 0.0, 0.0, options);
  return fit;
}

BetaFit fit_beta(std::span<const double> t, std::span<const double> y, double t_c, double window) {
  if (t.size() != y.size()) throw InputError("fit_beta: t and y differ in length");
  if (!(window > 0.0)) throw FitError("fit_beta: window must be positive");
  std::vector<double> x, v;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dx = t[i] - t_c;
    if (dx > 0.0 && dx <= window) {
      x.push_back(dx);
      v.push_back(y[i]);
    }
  }
  if (x.size() < 5) throw FitError("fit_beta: fewer than 5 samples in (t_c, t_c + window]");
  for (double yi : v)
    if (!(yi > 0.0)) throw DomainError("fit_beta: order parameter is not positive in the window");

  BetaFit fit;
  fit.t_c = t_c;
  fit.window = window;
  fit.points = x.size();
  std::vector<double> lx(x.size()), ly(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(v[i]);
  }
  const RegressionResult line = ordinary_least_squares(lx, ly);
  fit.loglog_beta = line.slope;
  fit.loglog_A = std::exp(line.intercept);

  auto ssr = [&](double A, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = A * std::pow(x[i], b) - v[i];
      s += r * r;
    }
    return s;
  };

  // Levenberg-Marquardt on the two parameters.
  double A = fit.loglog_A, beta = fit.loglog_beta, mu = 1e-3;
  double cur = ssr(A, beta);
  bool converged = false;
  for (int iter = 0; iter < 500 && !converged; ++iter) {
    double jaa = 0, jab = 0, jbb = 0, ga = 0, gb = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p = std::pow(x[i], beta);
      const double r = A * p - v[i];
      const double da = p, db = A * p * lx[i];
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    bool improved = false;
    double stepA = 0.0, stepB = 0.0;
    for (int tries = 0; tries < 60 && !improved; ++tries) {
      const double haa = jaa * (1.0 + mu), hbb = jbb * (1.0 + mu);
      const double det = haa * hbb - jab * jab;
      if (!(std::abs(det) > 0.0)) {
        mu *= 10.0;
        continue;
      }
      stepA = -(hbb * ga - jab * gb) / det;
      stepB = -(haa * gb - jab * ga) / det;
      const double next = ssr(A + stepA, beta + stepB);
      if (std::isfinite(next) && next <= cur) {
        A += stepA;
        beta += stepB;
        const double gain = cur - next;
        cur = next;
        mu = std::max(mu * 0.3, 1e-12);
        improved = true;
        converged = gain <= 1e-15 * std::max(cur, 1e-300) ||
                    (std::abs(stepA) <= 1e-14 * std::abs(A) &&
                     std::abs(stepB) <= 1e-14 * std::abs(beta));
      } else {
        mu *= 10.0;
      }
    }
    if (!improved) break;
  }
  if (!std::isfinite(A) || !std::isfinite(beta)) throw FitError("fit_beta: refinement diverged");
  fit.A = A;
  fit.beta = beta;
  fit.residual = std::sqrt(cur / static_cast<double>(x.size()));
  return fit;
}

double ansatz_particle_number(double M, double lambda) {
  const double w0 = (1.0 - lambda) * (1.0 - lambda);
  const double w1 = lambda * lambda;
  return (M * w0 + (M - 1.0) * w1) / (w0 + w1);
}

double ansatz_decayed_fraction(double M, double lambda) {
  const double w0 = (1.0 - lambda) * (1.0 - lambda);
  const double w1 = lambda * lambda;
  return w1 / (M * (w0 + w1));
}

double ansatz_crossing(long long M) {
  if (M < 2) throw RangeError("ansatz_crossing needs M >= 2");
  return ansatz_decayed_fraction(static_cast<double>(M), 0.5);
}

}  // namespace pagecurve

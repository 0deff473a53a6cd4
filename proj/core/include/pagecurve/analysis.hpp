// analysis.hpp - kinks, Page time, finite-size collapse, exponents, ansatz
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pagecurve/entanglement.hpp"
#include "pagecurve/regression.hpp"

namespace pagecurve {

/// A crossing of two adjacent Schmidt values (a level crossing of the
/// entanglement Hamiltonian), i.e. a non-analytic point of S_min when
/// upper_level == 1.
struct KinkEvent {
  double t_c = 0.0;
  double decayed_fraction = 0.0;  // 1 - m(t_c)/M, interpolated
  int upper_level = 1;            // 1-based positions of the crossing pair
  int lower_level = 2;
  int ordinal = 0;                // 1 for the first non-analyticity in time
  int sector_before = -1;         // sector holding upper_level before t_c
  int sector_after = -1;
  std::size_t sample = 0;         // index of the first sample after t_c
};

/// Scans the Schmidt pairs (1,2), ..., (pairs, pairs+1).
///
/// With sector labels, a crossing is a change of the sector that holds the
/// upper position; t_c interpolates the sector-resolved difference linearly.
/// Without labels the stored values are taken as continuous branches and a
/// sign change of lambda_p - lambda_{p+1} marks the crossing. Throws
/// InputError when a record carries fewer than two Schmidt values.
std::vector<KinkEvent> detect_kinks(std::span<const EntanglementRecord> records, int pairs = 1);

/// Slope discontinuity of a sampled curve, located by intersecting the
/// one-sided secant lines around the sample pair that brackets it.
struct SlopeKink {
  double time = 0.0;
  std::size_t sample = 0;
  double slope_jump = 0.0;
};

struct SlopeKinkOptions {
  double ratio = 20.0;   // |second difference| over the local median
  double floor = 1e-9;   // absolute floor on |second difference|
  int window = 25;       // half-width of the median window, in samples
};

/// Cross-check detector on a uniform grid (used on S_min).
std::vector<SlopeKink> detect_slope_kinks(std::span<const double> t, std::span<const double> y,
                                          SlopeKinkOptions options = {});

struct PageTimeResult {
  double t_page = 0.0;
  double peak = 0.0;          // S_vN(t_page)
  double peak_density = 0.0;  // S_vN(t_page) / M
  std::size_t sample = 0;
  bool at_boundary = false;
  std::string warning;
};

/// Discrete argmax refined by the vertex of the parabola through the three
/// samples around it. A maximum on the window edge is returned with a warning.
PageTimeResult detect_page_time(std::span<const double> t, std::span<const double> s_vn, int M);
PageTimeResult detect_page_time(std::span<const EntanglementRecord> records, int M);

/// Raw-time samples of one system size around its first crossing.
struct CollapseSeries {
  int M = 0;
  double t_c = 0.0;
  std::vector<double> time;
  std::vector<double> decayed_fraction;
  std::vector<double> s_min;
};

struct CollapseOptions {
  double neighborhood = 0.5;  // keep |t - t_c| <= neighborhood (raw time)
  int grid_points = 201;
  double exponent_min = 0.0;
  double exponent_max = 3.0;
  double tolerance = 1e-7;
};

struct ScalingFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double cost_a = 0.0;      // spread of the collapsed S_min curves
  double cost_b = 0.0;      // spread of the collapsed order-parameter curves
  double baseline_a = 0.0;  // same costs without any rescaling
  double baseline_b = 0.0;
  std::vector<int> sizes;

  double cost() const noexcept { return cost_a + cost_b; }
};

enum class CollapseObservable { DecayedFraction, MinEntropyDensity };

/// Normalised spread of the curves X = (tau - tau_c) M^{x_exponent},
/// Y = obs M^{y_exponent}, tau = t/M: mean squared deviation from the
/// pointwise median on a shared abscissa, divided by the median's mean square.
double collapse_cost(std::span<const CollapseSeries> series, CollapseObservable observable,
                     double x_exponent, double y_exponent, const CollapseOptions& options = {});

/// tau_c ~ M^{-1/c} from a log-log fit, then b and a by golden-section
/// search on the collapse cost of (1 - m/M) M^{b/c} and (S_min/M) M^a.
/// Throws InputError for fewer than 3 sizes, FitError for degenerate t_c.
ScalingFit fit_collapse(std::span<const CollapseSeries> series, CollapseOptions options = {});

struct BetaFit {
  double beta = 0.0;
  double A = 0.0;
  double t_c = 0.0;
  double window = 0.0;
  std::size_t points = 0;
  double residual = 0.0;  // RMS of y - A (t - t_c)^beta
  double loglog_beta = 0.0;
  double loglog_A = 0.0;
};

/// y = A (t - t_c)^beta on samples with 0 < t - t_c <= window.
///
/// The log-log OLS line seeds a damped Gauss-Newton fit in linear space.
/// Throws FitError for fewer than 5 samples and DomainError for y <= 0.
BetaFit fit_beta(std::span<const double> t, std::span<const double> y, double t_c, double window);

/// Particle number of the two-Schmidt-value strong-coupling ansatz with
/// weights (1 - lambda)^2 (nothing emitted) and lambda^2 (one particle out).
double ansatz_particle_number(double M, double lambda);
/// 1 - m/M of the same ansatz.
double ansatz_decayed_fraction(double M, double lambda);
/// Decayed fraction where the two weights cross (lambda = 1/2): 1/(2M).
/// Throws RangeError for M < 2.
double ansatz_crossing(long long M);

}  // namespace pagecurve

// entanglement.hpp - Schmidt spectra, entropies and the per-step record
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace pagecurve {

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

/// One eigenvalue of the system's reduced density matrix.
/// energy is the entanglement-Hamiltonian level -ln(lambda); sector is the
/// subsystem particle number of the eigenvector, or -1 when unknown.
struct SchmidtLevel {
  double lambda = 0.0;
  double energy = std::numeric_limits<double>::infinity();
  int sector = -1;
};

struct EntropyValues {
  double von_neumann = 0.0;
  double min_entropy = 0.0;
  /// Aligned with the requested orders; order 1 holds S_vN, infinity holds S_min.
  std::vector<double> renyi;
};

struct EntanglementRecord {
  std::int64_t step = 0;
  double time = 0.0;
  double particles = 0.0;         // m(t), particles left in the system
  double decayed_fraction = 0.0;  // 1 - m/M
  double s_vn = 0.0;
  double s_min = 0.0;
  std::vector<double> renyi_orders;  // finite orders other than 1
  std::vector<double> renyi;         // S_n for renyi_orders
  std::vector<SchmidtLevel> levels;  // largest first
};

/// Parses "1,2,inf" style lists. Orders must be positive; "inf" and "min"
/// denote the min-entropy.
std::vector<double> parse_renyi_orders(const std::string& text);

/// Orders that get their own S_n column (drops 1 and infinity, dedups, keeps order).
std::vector<double> extra_renyi_orders(std::span<const double> orders);

/// Entropies of a normalised probability spectrum (any order, zeros allowed).
EntropyValues entropies_from_spectrum(std::span<const double> lambdas,
                                      std::span<const double> orders);

/// Level for a Schmidt value; lambda <= 0 maps to +inf energy.
SchmidtLevel make_level(double lambda, int sector);

/// Column label used in CSV headers: S_2, S_0.5, ...
std::string renyi_label(double order);

}  // namespace pagecurve

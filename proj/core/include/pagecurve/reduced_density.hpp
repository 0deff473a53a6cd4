// reduced_density.hpp - system reduced density matrix, block by particle number
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "pagecurve/entanglement.hpp"
#include "pagecurve/sector_basis.hpp"

namespace pagecurve {

/// Splits every sector basis state into (system pattern, environment pattern).
///
/// For system particle number q the amplitudes form a C(M, q) x C(N, P - q)
/// matrix Psi_q (rows: system patterns, columns: environment patterns, both
/// ranked by the combinatorial number system). rho_q = Psi_q Psi_q^dagger,
/// so entries between different q never exist.
class BipartitionMap {
 public:
  BipartitionMap(const SectorBasis& basis, int system_sites);

  int system_sites() const noexcept { return system_sites_; }
  int total_particles() const noexcept { return total_particles_; }
  int min_sector() const noexcept { return min_q_; }
  int max_sector() const noexcept { return max_q_; }
  std::size_t rows(int q) const noexcept { return rows_[q]; }
  std::size_t cols(int q) const noexcept { return cols_[q]; }

  /// System bit pattern for row r of sector q.
  std::uint64_t system_pattern(int q, std::size_t r) const;

  /// Scatters a state vector into the per-sector amplitude matrices.
  std::vector<Eigen::MatrixXcd> amplitude_blocks(std::span<const std::complex<double>> psi) const;

 private:
  int system_sites_;
  int total_particles_;
  int min_q_;
  int max_q_;
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
  std::vector<std::uint8_t> sector_;
  std::vector<std::uint32_t> row_;
  std::vector<std::uint32_t> col_;
  std::vector<std::vector<std::uint64_t>> row_patterns_;
};

/// Block-diagonal density matrix; blocks[q] acts on the q-particle subspace.
/// Sectors that cannot occur are empty 0 x 0 matrices.
struct BlockDensityMatrix {
  std::vector<Eigen::MatrixXcd> blocks;

  double trace() const;
  std::size_t dimension() const;
};

BlockDensityMatrix reduced_density_matrix(std::span<const std::complex<double>> psi,
                                          const BipartitionMap& map);
BlockDensityMatrix reduced_density_matrix(std::span<const std::complex<double>> psi,
                                          const SectorBasis& basis, int system_sites);

/// Environment-side reduced density matrix (block q here labels the system
/// particle number of the complementary sector). Meant for small chains.
BlockDensityMatrix environment_density_matrix(std::span<const std::complex<double>> psi,
                                              const BipartitionMap& map);

/// Full descending spectrum with sector labels.
/// Throws NumericError for eigenvalues below -1e-10; smaller negatives become 0.
std::vector<SchmidtLevel> labeled_spectrum(const BlockDensityMatrix& rho);

/// Entropies plus the top-k levels. m and time are left for the caller.
EntanglementRecord spectrum_and_entropies(const BlockDensityMatrix& rho,
                                          std::span<const double> orders, int topk);

}  // namespace pagecurve

// hamiltonian.hpp - matrix-free action of the chain Hamiltonian on a sector
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "pagecurve/model.hpp"
#include "pagecurve/sector_basis.hpp"

namespace pagecurve {

using Complex = std::complex<double>;

/// H = V sum_{system bonds} n_i n_{i+1} - sum_b t_b (c_b^dag c_{b+1} + h.c.)
/// restricted to one particle-number sector.
///
/// Jordan-Wigner order is the chain order, so nearest-neighbour hops never
/// pass an occupied site and every off-diagonal element is simply -t_b.
/// Rows are gathered independently, which keeps the parallel product
/// bit-for-bit deterministic.
class SectorHamiltonian {
 public:
  SectorHamiltonian(const ModelParams& params, const SectorBasis& basis);

  void apply(std::span<const Complex> in, std::span<Complex> out) const;

  double diagonal(std::uint64_t pattern) const noexcept;
  std::size_t dimension() const noexcept { return basis_.dimension(); }
  const SectorBasis& basis() const noexcept { return basis_; }

  /// Dense matrix, for small sectors and tests.
  Eigen::MatrixXd dense() const;

  /// <psi|H|psi> (real part).
  double expectation(std::span<const Complex> psi) const;

 private:
  ModelParams params_;
  const SectorBasis& basis_;
  std::uint64_t interaction_mask_ = 0;
  std::vector<double> bond_amplitude_;  // -t_b
};

}  // namespace pagecurve

// free_fermion.hpp - exact V = 0 dynamics through the one-body correlation matrix
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "pagecurve/entanglement.hpp"
#include "pagecurve/model.hpp"

namespace pagecurve {

/// C(i, j) = <c_i^dagger c_j>, L x L Hermitian.
using CorrelationMatrix = Eigen::MatrixXcd;

/// Real symmetric tridiagonal one-body matrix of the quadratic chain.
Eigen::MatrixXd hopping_matrix(const ModelParams& params);

/// Propagates C(t) = U C(0) U^dagger with U = exp(+i h t).
///
/// h is diagonalised once; each time point costs one dense rotation, so any
/// grid step is exact to machine precision independent of the others.
class FreeFermionEngine {
 public:
  /// Throws UnsupportedModelError for V != 0, NumericError if the
  /// eigendecomposition fails.
  FreeFermionEngine(const ModelParams& params, const QuenchGrid& grid);

  CorrelationMatrix correlations_at_time(double t) const;
  CorrelationMatrix correlations(std::int64_t step) const {
    return correlations_at_time(grid_.time(step));
  }

  const ModelParams& params() const noexcept { return params_; }
  const QuenchGrid& grid() const noexcept { return grid_; }

 private:
  ModelParams params_;
  QuenchGrid grid_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd modes_;
};

/// C(t_k) for every grid point k = 0..steps.
std::vector<CorrelationMatrix> evolve_correlations(const ModelParams& params,
                                                   const QuenchGrid& grid);

/// Eigenvalues of the block C[first, first+count) sorted descending, clamped to [0, 1].
/// Throws NumericError when an eigenvalue leaves [0, 1] by more than 1e-10.
std::vector<double> mode_occupations(const CorrelationMatrix& C, int first, int count);

/// S_vN, S_n and S_min of a Gaussian state from its mode occupations.
EntropyValues entropies_from_modes(std::span<const double> nu, std::span<const double> orders);

/// The k largest many-body Schmidt values prod_j x_j, x_j in {nu_j, 1 - nu_j},
/// in descending order, with the number of occupied modes as sector label.
/// Throws RangeError if k < 1 or k > 2^M.
std::vector<SchmidtLevel> schmidt_topk_from_modes(std::span<const double> nu, int k);

/// m = sum_{i < M} Re C(i, i).
double particle_count(const CorrelationMatrix& C, int M);

/// Full per-step record for the system block [0, M).
EntanglementRecord free_fermion_record(const CorrelationMatrix& C, int M, std::int64_t step,
                                       double time, std::span<const double> orders, int topk);

}  // namespace pagecurve

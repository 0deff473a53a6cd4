// ed_engine.hpp - exact many-body dynamics in the M-particle sector
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "pagecurve/entanglement.hpp"
#include "pagecurve/hamiltonian.hpp"
#include "pagecurve/krylov.hpp"
#include "pagecurve/model.hpp"
#include "pagecurve/reduced_density.hpp"
#include "pagecurve/sector_basis.hpp"

namespace pagecurve {

struct EdOptions {
  KrylovOptions krylov;
  std::uint64_t max_states = SectorBasis::kDefaultCapacity;
};

/// Owns the sector basis, the matrix-free Hamiltonian and the evolving state,
/// which starts as the filled-system product state.
class EdEngine {
 public:
  /// Throws CapacityError if C(L, M) exceeds options.max_states.
  EdEngine(const ModelParams& params, const QuenchGrid& grid, EdOptions options = {});

  EdEngine(EdEngine&&) noexcept = default;
  EdEngine& operator=(EdEngine&&) noexcept = default;
  EdEngine(const EdEngine&) = delete;
  EdEngine& operator=(const EdEngine&) = delete;

  /// Advances by one grid step dt.
  const KrylovStepInfo& advance();

  std::int64_t step_index() const noexcept { return step_; }
  double time() const noexcept { return grid_.time(step_); }

  std::span<const Complex> state() const noexcept { return psi_; }
  double norm() const;
  double energy() const;
  double particles_in_system() const;
  double max_norm_defect() const noexcept { return max_norm_defect_; }
  const KrylovStepInfo& last_step() const noexcept { return last_step_; }

  BlockDensityMatrix system_density_matrix() const;
  BlockDensityMatrix environment_density_matrix() const;
  EntanglementRecord record(std::span<const double> orders, int topk) const;

  /// <c_i^dagger c_j> including Jordan-Wigner strings; dense L x L.
  Eigen::MatrixXcd one_body_correlations() const;

  /// Binary restart file: magic, L, M, step, dt, dimension, then the
  /// amplitudes as little-endian (re, im) doubles.
  void save_checkpoint(const std::filesystem::path& path) const;
  /// Throws FileError if the file is unreadable or belongs to another run.
  void load_checkpoint(const std::filesystem::path& path);

  const ModelParams& params() const noexcept { return params_; }
  const QuenchGrid& grid() const noexcept { return grid_; }
  const SectorBasis& basis() const noexcept { return *basis_; }
  const SectorHamiltonian& hamiltonian() const noexcept { return *hamiltonian_; }

 private:
  ModelParams params_;
  QuenchGrid grid_;
  std::unique_ptr<SectorBasis> basis_;
  std::unique_ptr<SectorHamiltonian> hamiltonian_;
  std::unique_ptr<BipartitionMap> bipartition_;
  std::unique_ptr<KrylovPropagator> propagator_;
  std::vector<Complex> psi_;
  std::int64_t step_ = 0;
  KrylovStepInfo last_step_;
  double max_norm_defect_ = 0.0;
};

}  // namespace pagecurve

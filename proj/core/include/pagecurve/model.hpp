// model.hpp - chain geometry, couplings, initial state and time grid
#pragma once

#include <cstdint>

namespace pagecurve {

/// Couplings and sizes of the system + environment chain.
///
/// Sites are 0-based internally: the system occupies [0, M), the environment
/// [M, L). Bond b joins sites b and b+1; bonds inside the system hop with t_s,
/// bond M-1 is the tunnelling link g, environment bonds hop with t_e. The
/// nearest-neighbour interaction V acts only on system bonds. Boundaries are
/// always open.
struct ModelParams {
  int M = 0;
  int N = 0;
  int L = 0;
  double V = 0.0;
  double t_s = 1.0;
  double t_e = 1.0;
  double g = 0.0;

  /// Hopping amplitude on bond b (the Hamiltonian element is its negative).
  double bond_hopping(int bond) const noexcept {
    if (bond < M - 1) return t_s;
    if (bond == M - 1) return g;
    return t_e;
  }
  bool interacting() const noexcept { return V != 0.0; }
};

/// Uniform grid t_k = k * dt for k = 0..steps. Times are always derived from
/// the integer index.
struct QuenchGrid {
  double dt = 0.02;
  double t_max = 40.0;
  std::int64_t steps = 0;

  double time(std::int64_t k) const noexcept { return static_cast<double>(k) * dt; }
};

/// Fully filled system, empty environment.
struct InitialState {
  int L = 0;
  int M = 0;

  bool occupied(int site) const noexcept { return site >= 0 && site < M; }
  std::uint64_t occupation_mask() const noexcept {
    return M >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << M) - 1);
  }
  int particle_number() const noexcept { return M; }
};

struct ModelSetup {
  ModelParams params;
  QuenchGrid grid;

  InitialState initial_state() const noexcept { return {params.L, params.M}; }
};

/// Validates and bundles parameters. Throws ValidationError naming the field.
ModelSetup build_params(int M, int N, double V, double t_s, double t_e, double g, double dt,
                        double t_max);

/// Approximate time at which the fastest environment excitation returns from
/// the far edge; only a heuristic for the usable window.
double reflection_time_estimate(const ModelParams& params) noexcept;

}  // namespace pagecurve

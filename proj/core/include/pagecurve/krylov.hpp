// krylov.hpp - Lanczos approximation of exp(-i H dt) psi
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pagecurve {

using LinearOperator =
    std::function<void(std::span<const std::complex<double>>, std::span<std::complex<double>>)>;

struct KrylovOptions {
  double tolerance = 1e-12;
  int min_dim = 20;
  int max_dim = 60;
};

struct KrylovStepInfo {
  int dimension = 0;
  double error_estimate = 0.0;
  double norm_defect = 0.0;  // | ||psi'|| - 1 | before renormalisation
  bool invariant_subspace = false;
};

/// Propagates a normalised state by exp(-i H dt) in a Lanczos subspace.
///
/// The subspace starts at min_dim vectors (fewer if it becomes invariant) and
/// grows one vector at a time until beta_m |[exp(-i T dt) e_1]_m| drops below
/// the tolerance. Every new vector is fully reorthogonalised (two Gram-Schmidt
/// passes). Reaching max_dim without convergence throws StepSizeError.
class KrylovPropagator {
 public:
  KrylovPropagator(LinearOperator op, std::size_t dimension, KrylovOptions options = {});

  KrylovStepInfo step(std::span<std::complex<double>> psi, double dt);

  const KrylovOptions& options() const noexcept { return options_; }

 private:
  LinearOperator op_;
  std::size_t dimension_;
  KrylovOptions options_;
  std::vector<std::vector<std::complex<double>>> basis_;
  std::vector<std::complex<double>> work_;
};

}  // namespace pagecurve

// krylov.cpp
#include "pagecurve/krylov.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "pagecurve/errors.hpp"
#include "vector_ops.hpp"

namespace pagecurve {

namespace {

using Complex = std::complex<double>;

/// exp(-i T dt) e_1 for the real symmetric tridiagonal T = tri(beta, alpha, beta).
Eigen::VectorXcd tridiagonal_propagator(const std::vector<double>& alpha,
                                        const std::vector<double>& beta, int m, double dt) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  if (solver.info() != Eigen::Success) throw NumericError("Lanczos tridiagonal eigensolve failed");
  const Eigen::MatrixXd& q = solver.eigenvectors();
  Eigen::VectorXcd coeff(m);
  for (int k = 0; k < m; ++k) coeff(k) = std::polar(1.0, -solver.eigenvalues()(k) * dt) * q(0, k);
  return q.cast<Complex>() * coeff;
}

}  // namespace

KrylovPropagator::KrylovPropagator(LinearOperator op, std::size_t dimension,
                                   KrylovOptions options)
    : op_(std::move(op)), dimension_(dimension), options_(options), work_(dimension) {
  if (options_.min_dim < 1 || options_.max_dim < options_.min_dim)
    throw std::invalid_argument("Krylov dimensions must satisfy 1 <= min_dim <= max_dim");
}

KrylovStepInfo KrylovPropagator::step(std::span<Complex> psi, double dt) {
  KrylovStepInfo info;
  const int cap = static_cast<int>(std::min<std::size_t>(options_.max_dim, dimension_));
  std::vector<double> alpha, beta;
  alpha.reserve(cap);
  beta.reserve(cap);

  auto vector_at = [&](int j) -> std::vector<Complex>& {
    if (static_cast<int>(basis_.size()) <= j) basis_.emplace_back(dimension_);
    return basis_[j];
  };

  const double psi_norm = vec::norm(psi);
  if (!(psi_norm > 0.0)) throw NumericError("cannot propagate a zero state");
  {
    auto& v0 = vector_at(0);
    std::copy(psi.begin(), psi.end(), v0.begin());
    vec::scale(1.0 / psi_norm, v0);
  }

  double scale = 1.0;
  Eigen::VectorXcd y;
  int m = 0;
  for (int j = 0;; ++j) {
    const auto& vj = vector_at(j);
    op_(vj, work_);
    // Full reorthogonalisation, classical Gram-Schmidt applied twice; the
    // first pass's overlap with v_j is the Lanczos alpha.
    const auto count = static_cast<std::size_t>(j) + 1;
    alpha.push_back(vec::project_out(basis_, count, work_)[count - 1].real());
    vec::project_out(basis_, count, work_);
    const double b = vec::norm(work_);
    scale = std::max({scale, std::abs(alpha[j]), b});
    m = j + 1;

    if (b <= 1e-13 * scale || m == static_cast<int>(dimension_)) {
      y = tridiagonal_propagator(alpha, beta, m, dt);
      info.invariant_subspace = true;
      info.error_estimate = 0.0;
      break;
    }
    if (m >= options_.min_dim || m == cap) {
      y = tridiagonal_propagator(alpha, beta, m, dt);
      info.error_estimate = b * std::abs(y(m - 1));
      if (info.error_estimate < options_.tolerance) break;
      if (m == cap)
        throw StepSizeError("Krylov propagation did not converge in " + std::to_string(m) +
                            " vectors (error estimate " + std::to_string(info.error_estimate) +
                            "); reduce dt");
    }
    beta.push_back(b);
    auto& next = vector_at(j + 1);
    std::copy(work_.begin(), work_.end(), next.begin());
    vec::scale(1.0 / b, next);
  }

  std::fill(psi.begin(), psi.end(), Complex{});
  for (int i = 0; i < m; ++i) vec::axpy(psi_norm * y(i), basis_[i], psi);
  const double new_norm = vec::norm(psi);
  info.dimension = m;
  info.norm_defect = std::abs(new_norm - 1.0);
  vec::scale(1.0 / new_norm, psi);
  return info;
}

}  // namespace pagecurve

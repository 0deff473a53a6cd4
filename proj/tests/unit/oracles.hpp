// Independent reference implementations used only by the tests.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "pagecurve/model.hpp"

namespace oracle {

using Complex = std::complex<double>;

/// Dense Hamiltonian on the whole 2^L Fock space from explicit Jordan-Wigner
/// creation/annihilation matrices.
inline Eigen::MatrixXd fock_hamiltonian(const pagecurve::ModelParams& p) {
  const int L = p.L;
  const int D = 1 << L;
  auto annihilate = [&](int site) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(D, D);
    for (int x = 0; x < D; ++x) {
      if (!((x >> site) & 1)) continue;
      const int below = std::popcount(static_cast<unsigned>(x) & ((1u << site) - 1));
      c(x ^ (1 << site), x) = (below % 2) ? -1.0 : 1.0;
    }
    return c;
  };
  std::vector<Eigen::MatrixXd> c;
  for (int i = 0; i < L; ++i) c.push_back(annihilate(i));
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(D, D);
  for (int b = 0; b + 1 < L; ++b) {
    const double t = b < p.M - 1 ? p.t_s : (b == p.M - 1 ? p.g : p.t_e);
    const Eigen::MatrixXd hop = c[b].transpose() * c[b + 1];
    h -= t * (hop + hop.transpose());
    if (b < p.M - 1) {
      const Eigen::MatrixXd ni = c[b].transpose() * c[b];
      const Eigen::MatrixXd nj = c[b + 1].transpose() * c[b + 1];
      h += p.V * ni * nj;
    }
  }
  return h;
}

/// Restriction of a Fock-space matrix to the states with `particles` set bits,
/// ordered by increasing integer value.
inline Eigen::MatrixXd restrict_to_sector(const Eigen::MatrixXd& h, int L, int particles) {
  std::vector<int> states;
  for (int x = 0; x < (1 << L); ++x)
    if (std::popcount(static_cast<unsigned>(x)) == particles) states.push_back(x);
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = h(states[i], states[j]);
  return out;
}

/// exp(-i H t) for real symmetric H via its eigendecomposition.
inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -t)).array().exp();
  const Eigen::MatrixXcd v = es.eigenvectors().cast<Complex>();
  return v * phases.asDiagonal() * v.adjoint();
}

/// Squared singular values of the (system pattern) x (environment pattern)
/// amplitude matrix; system = lowest M bits.
inline std::vector<double> schmidt_by_svd(const std::vector<std::uint64_t>& patterns,
                                          const std::vector<Complex>& psi, int L, int M) {
  const int N = L - M;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(1 << M, 1 << N);
  for (std::size_t i = 0; i < patterns.size(); ++i)
    a(static_cast<Eigen::Index>(patterns[i] & ((1u << M) - 1)),
      static_cast<Eigen::Index>(patterns[i] >> M)) = psi[i];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    out.push_back(svd.singularValues()(i) * svd.singularValues()(i));
  return out;
}

/// All 2^M products prod_j x_j, x_j in {nu_j, 1 - nu_j}, sorted descending.
inline std::vector<double> all_mode_products(const std::vector<double>& nu) {
  const std::size_t M = nu.size();
  std::vector<double> out;
  for (std::uint64_t mask = 0; mask < (1ull << M); ++mask) {
    double v = 1.0;
    for (std::size_t j = 0; j < M; ++j) v *= ((mask >> j) & 1) ? nu[j] : 1.0 - nu[j];
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double von_neumann(const std::vector<double>& lambdas) {
  double s = 0.0;
  for (double l : lambdas)
    if (l > 0.0) s -= l * std::log(l);
  return s;
}

}  // namespace oracle

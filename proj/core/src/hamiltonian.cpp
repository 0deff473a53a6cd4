// hamiltonian.cpp
#include "pagecurve/hamiltonian.hpp"

#include <bit>
#include <vector>

#include "pagecurve/errors.hpp"
#include "vector_ops.hpp"

namespace pagecurve {

SectorHamiltonian::SectorHamiltonian(const ModelParams& params, const SectorBasis& basis)
    : params_(params), basis_(basis) {
  if (basis.sites() != params.L)
    throw ValidationError("L", "basis size does not match the model");
  // Pair (i, i+1) interacts when both sites lie inside the system, i <= M-2.
  if (params.M >= 2) interaction_mask_ = (std::uint64_t{1} << (params.M - 1)) - 1;
  bond_amplitude_.resize(static_cast<std::size_t>(std::max(params.L - 1, 0)));
  for (int b = 0; b + 1 < params.L; ++b) bond_amplitude_[b] = -params.bond_hopping(b);
}

double SectorHamiltonian::diagonal(std::uint64_t pattern) const noexcept {
  return params_.V * std::popcount(pattern & (pattern >> 1) & interaction_mask_);
}

void SectorHamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
  const auto patterns = basis_.patterns();
  const BinomialTable& binom = basis_.binomials();
  const int L = params_.L;
  const std::int64_t dim = static_cast<std::int64_t>(patterns.size());
  const std::uint64_t top = std::uint64_t{1} << (L - 1);
  const double* amp = bond_amplitude_.data();

#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < dim; ++i) {
    const std::uint64_t x = patterns[i];
    Complex acc = diagonal(x) * in[i];
    std::uint64_t rest = x;
    int j = 0;
    while (rest) {
      const int p = std::countr_zero(rest);
      rest &= rest - 1;
      const std::uint64_t bit = std::uint64_t{1} << p;
      // particle j hops right: index grows by C(p, j)
      if (bit != top && !(x & (bit << 1))) acc += amp[p] * in[i + binom(p, j)];
      // particle j hops left: index shrinks by C(p-1, j)
      if (p > 0 && !(x & (bit >> 1))) acc += amp[p - 1] * in[i - binom(p - 1, j)];
      ++j;
    }
    out[i] = acc;
  }
}

Eigen::MatrixXd SectorHamiltonian::dense() const {
  const std::size_t dim = dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<Complex> e(dim), col(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::fill(e.begin(), e.end(), Complex{});
    e[c] = 1.0;
    apply(e, col);
    for (std::size_t r = 0; r < dim; ++r) h(r, c) = col[r].real();
  }
  return h;
}

double SectorHamiltonian::expectation(std::span<const Complex> psi) const {
  std::vector<Complex> h_psi(psi.size());
  apply(psi, h_psi);
  return vec::dot(psi, h_psi).real();
}

}  // namespace pagecurve

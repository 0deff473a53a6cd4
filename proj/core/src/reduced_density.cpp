// reduced_density.cpp
#include "pagecurve/reduced_density.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "pagecurve/errors.hpp"

namespace pagecurve {

BipartitionMap::BipartitionMap(const SectorBasis& basis, int system_sites)
    : system_sites_(system_sites), total_particles_(basis.particles()) {
  const int L = basis.sites();
  const int env_sites = L - system_sites;
  if (system_sites < 1 || system_sites > 24 || env_sites < 0)
    throw ValidationError("M", "system size must lie in [1, min(24, L)]");
  const int P = total_particles_;
  min_q_ = std::max(0, P - env_sites);
  max_q_ = std::min(P, system_sites);

  const BinomialTable& binom = basis.binomials();
  rows_.assign(system_sites + 1, 0);
  cols_.assign(system_sites + 1, 0);
  row_patterns_.assign(system_sites + 1, {});
  for (int q = min_q_; q <= max_q_; ++q) {
    rows_[q] = binom(system_sites, q);
    cols_[q] = binom(env_sites, P - q);
    if (cols_[q] > UINT32_MAX) throw CapacityError(env_sites, P - q, cols_[q], UINT32_MAX);
  }
  // Row patterns enumerated in rank order for each q.
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << system_sites); ++s) {
    const int q = std::popcount(s);
    if (q >= min_q_ && q <= max_q_) row_patterns_[q].push_back(s);
  }

  const std::uint64_t system_mask = (std::uint64_t{1} << system_sites) - 1;
  const std::size_t dim = basis.dimension();
  sector_.resize(dim);
  row_.resize(dim);
  col_.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint64_t x = basis.pattern(i);
    const std::uint64_t s = x & system_mask;
    const std::uint64_t e = x >> system_sites;
    sector_[i] = static_cast<std::uint8_t>(std::popcount(s));
    row_[i] = static_cast<std::uint32_t>(combinatorial_rank(s, binom));
    col_[i] = static_cast<std::uint32_t>(combinatorial_rank(e, binom));
  }
}

std::uint64_t BipartitionMap::system_pattern(int q, std::size_t r) const {
  return row_patterns_.at(q).at(r);
}

std::vector<Eigen::MatrixXcd> BipartitionMap::amplitude_blocks(
    std::span<const std::complex<double>> psi) const {
  std::vector<Eigen::MatrixXcd> blocks(system_sites_ + 1);
  for (int q = min_q_; q <= max_q_; ++q)
    blocks[q] = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_[q]),
                                       static_cast<Eigen::Index>(cols_[q]));
  for (std::size_t i = 0; i < psi.size(); ++i) blocks[sector_[i]](row_[i], col_[i]) = psi[i];
  return blocks;
}

double BlockDensityMatrix::trace() const {
  double t = 0.0;
  for (const auto& b : blocks) t += b.trace().real();
  return t;
}

std::size_t BlockDensityMatrix::dimension() const {
  std::size_t d = 0;
  for (const auto& b : blocks) d += static_cast<std::size_t>(b.rows());
  return d;
}

BlockDensityMatrix reduced_density_matrix(std::span<const std::complex<double>> psi,
                                          const BipartitionMap& map) {
  BlockDensityMatrix rho;
  auto amplitudes = map.amplitude_blocks(psi);
  rho.blocks.resize(amplitudes.size());
  for (std::size_t q = 0; q < amplitudes.size(); ++q) {
    const auto& a = amplitudes[q];
    if (a.size() == 0) continue;
    rho.blocks[q] = a * a.adjoint();
  }
  return rho;
}

BlockDensityMatrix reduced_density_matrix(std::span<const std::complex<double>> psi,
                                          const SectorBasis& basis, int system_sites) {
  return reduced_density_matrix(psi, BipartitionMap(basis, system_sites));
}

BlockDensityMatrix environment_density_matrix(std::span<const std::complex<double>> psi,
                                              const BipartitionMap& map) {
  BlockDensityMatrix rho;
  auto amplitudes = map.amplitude_blocks(psi);
  rho.blocks.resize(amplitudes.size());
  for (std::size_t q = 0; q < amplitudes.size(); ++q) {
    const auto& a = amplitudes[q];
    if (a.size() == 0) continue;
    rho.blocks[q] = a.transpose() * a.conjugate();
  }
  return rho;
}

std::vector<SchmidtLevel> labeled_spectrum(const BlockDensityMatrix& rho) {
  std::vector<SchmidtLevel> levels;
  levels.reserve(rho.dimension());
  for (std::size_t q = 0; q < rho.blocks.size(); ++q) {
    const auto& block = rho.blocks[q];
    if (block.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericError("eigendecomposition of a density-matrix block failed");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      double lambda = solver.eigenvalues()(i);
      if (lambda < -1e-10)
        throw NumericError("negative Schmidt value " + std::to_string(lambda) + " in sector " +
                           std::to_string(q));
      lambda = std::max(lambda, 0.0);
      levels.push_back(make_level(lambda, static_cast<int>(q)));
    }
  }
  std::stable_sort(levels.begin(), levels.end(), [](const SchmidtLevel& a, const SchmidtLevel& b) {
    return a.lambda != b.lambda ? a.lambda > b.lambda : a.sector > b.sector;
  });
  return levels;
}

EntanglementRecord spectrum_and_entropies(const BlockDensityMatrix& rho,
                                          std::span<const double> orders, int topk) {
  const std::vector<SchmidtLevel> levels = labeled_spectrum(rho);
  std::vector<double> lambdas(levels.size());
  std::transform(levels.begin(), levels.end(), lambdas.begin(),
                 [](const SchmidtLevel& l) { return l.lambda; });
  EntanglementRecord rec;
  rec.renyi_orders = extra_renyi_orders(orders);
  const EntropyValues s = entropies_from_spectrum(lambdas, rec.renyi_orders);
  rec.s_vn = s.von_neumann;
  rec.renyi = s.renyi;
  rec.s_min = levels.empty() ? 0.0 : levels.front().energy;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(topk, 0)), levels.size());
  rec.levels.assign(levels.begin(), levels.begin() + static_cast<std::ptrdiff_t>(k));
  return rec;
}

}  // namespace pagecurve

// free_fermion.cpp
#include "pagecurve/free_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <set>

#include "pagecurve/errors.hpp"

namespace pagecurve {

namespace {

constexpr double kOccupationTolerance = 1e-10;

// Eigenvalues can stray outside [0, 1] by rounding.
double clamp_occupation(double nu) { return std::clamp(nu, 0.0, 1.0); }

double x_log_x(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

Eigen::MatrixXd hopping_matrix(const ModelParams& params) {
  const int L = params.L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(L, L);
  for (int b = 0; b + 1 < L; ++b) {
    h(b, b + 1) = -params.bond_hopping(b);
    h(b + 1, b) = -params.bond_hopping(b);
  }
  return h;
}

FreeFermionEngine::FreeFermionEngine(const ModelParams& params, const QuenchGrid& grid)
    : params_(params), grid_(grid) {
  if (params.interacting())
    throw UnsupportedModelError("free-fermion engine requires V = 0 (got V = " +
                                std::to_string(params.V) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hopping_matrix(params));
  if (solver.info() != Eigen::Success)
    throw NumericError("eigendecomposition of the hopping matrix failed");
  energies_ = solver.eigenvalues();
  modes_ = solver.eigenvectors();
}

CorrelationMatrix FreeFermionEngine::correlations_at_time(double t) const {
  const int L = params_.L;
  const int M = params_.M;
  // U = V diag(exp(i e t)) V^T; C(0) projects on the first M sites, so
  // C(t) = U[:, :M] U[:, :M]^dagger.
  Eigen::VectorXcd phases(L);
  for (int k = 0; k < L; ++k) phases(k) = std::polar(1.0, energies_(k) * t);
  const Eigen::MatrixXcd left = modes_.cast<std::complex<double>>() * phases.asDiagonal();
  const Eigen::MatrixXcd columns =
      left * modes_.topRows(M).transpose().cast<std::complex<double>>();
  return columns * columns.adjoint();
}

std::vector<CorrelationMatrix> evolve_correlations(const ModelParams& params,
                                                   const QuenchGrid& grid) {
  FreeFermionEngine engine(params, grid);
  std::vector<CorrelationMatrix> out;
  out.reserve(static_cast<std::size_t>(grid.steps + 1));
  for (std::int64_t k = 0; k <= grid.steps; ++k) out.push_back(engine.correlations(k));
  return out;
}

std::vector<double> mode_occupations(const CorrelationMatrix& C, int first, int count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(C.block(first, first, count, count),
                                                          Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericError("eigendecomposition of the subsystem correlation block failed");
  std::vector<double> nu(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  for (double& v : nu) {
    if (v < -kOccupationTolerance || v > 1.0 + kOccupationTolerance)
      throw NumericError("mode occupation outside [0, 1]: " + std::to_string(v));
    v = std::clamp(v, 0.0, 1.0);
  }
  std::sort(nu.begin(), nu.end(), std::greater<>());
  return nu;
}

EntropyValues entropies_from_modes(std::span<const double> nu, std::span<const double> orders) {
  EntropyValues out;
  for (double raw : nu) {
    const double v = clamp_occupation(raw);
    out.von_neumann -= x_log_x(v) + x_log_x(1.0 - v);
    out.min_entropy -= std::log(std::max(v, 1.0 - v));
  }
  out.renyi.reserve(orders.size());
  for (double n : orders) {
    if (n == 1.0) {
      out.renyi.push_back(out.von_neumann);
    } else if (std::isinf(n)) {
      out.renyi.push_back(out.min_entropy);
    } else {
      double s = 0.0;
      for (double raw : nu) {
        const double v = clamp_occupation(raw);
        s += std::log(std::pow(v, n) + std::pow(1.0 - v, n));
      }
      out.renyi.push_back(s / (1.0 - n));
    }
  }
  return out;
}

std::vector<SchmidtLevel> schmidt_topk_from_modes(std::span<const double> nu, int k) {
  const int modes = static_cast<int>(nu.size());
  if (modes > 62) throw RangeError("schmidt_topk_from_modes supports at most 62 modes");
  const std::uint64_t total = std::uint64_t{1} << modes;
  if (k < 1 || static_cast<std::uint64_t>(k) > total)
    throw RangeError("k = " + std::to_string(k) + " outside [1, 2^" + std::to_string(modes) + "]");

  // Start from the dominant choice x_j = max(nu_j, 1 - nu_j) and explore
  // single-mode flips best first; the flipped set is the dedup key.
  std::vector<double> dominant(modes), flip_ratio(modes);
  std::vector<bool> dominant_occupied(modes);
  double top = 1.0;
  for (int j = 0; j < modes; ++j) {
    const double v = clamp_occupation(nu[j]);
    dominant_occupied[j] = v >= 0.5;
    dominant[j] = std::max(v, 1.0 - v);
    flip_ratio[j] = (1.0 - dominant[j]) / dominant[j];
    top *= dominant[j];
  }
  auto sector_of = [&](std::uint64_t flipped) {
    int occupied = 0;
    for (int j = 0; j < modes; ++j)
      if (dominant_occupied[j] != static_cast<bool>((flipped >> j) & 1u)) ++occupied;
    return occupied;
  };

  using Entry = std::pair<double, std::uint64_t>;
  auto order = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(order)> heap(order);
  std::set<std::uint64_t> seen;
  heap.emplace(top, 0);
  seen.insert(0);

  std::vector<SchmidtLevel> out;
  out.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(out.size()) < k) {
    const auto [value, flipped] = heap.top();
    heap.pop();
    out.push_back(make_level(value, sector_of(flipped)));
    for (int j = 0; j < modes; ++j) {
      if ((flipped >> j) & 1u) continue;
      const std::uint64_t next = flipped | (std::uint64_t{1} << j);
      if (seen.insert(next).second) heap.emplace(value * flip_ratio[j], next);
    }
  }
  return out;
}

double particle_count(const CorrelationMatrix& C, int M) {
  double m = 0.0;
  for (int i = 0; i < M; ++i) m += C(i, i).real();
  return m;
}

EntanglementRecord free_fermion_record(const CorrelationMatrix& C, int M, std::int64_t step,
                                       double time, std::span<const double> orders, int topk) {
  const std::vector<double> nu = mode_occupations(C, 0, M);
  EntanglementRecord rec;
  rec.step = step;
  rec.time = time;
  rec.particles = particle_count(C, M);
  rec.decayed_fraction = 1.0 - rec.particles / M;
  rec.renyi_orders = extra_renyi_orders(orders);
  const EntropyValues s = entropies_from_modes(nu, rec.renyi_orders);
  rec.s_vn = s.von_neumann;
  rec.s_min = s.min_entropy;
  rec.renyi = s.renyi;
  const int available = M >= 31 ? topk : static_cast<int>(std::min<std::int64_t>(topk, std::int64_t{1} << M));
  rec.levels = schmidt_topk_from_modes(nu, available);
  return rec;
}

}  // namespace pagecurve

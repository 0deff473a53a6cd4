// ed_engine.cpp
#include "pagecurve/ed_engine.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "pagecurve/errors.hpp"
#include "vector_ops.hpp"

namespace pagecurve {

namespace {

constexpr char kMagic[8] = {'P', 'C', 'C', 'K', 'P', 'T', '0', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)] = {};
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw FileError("checkpoint truncated");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
  if constexpr (std::is_same_v<T, double>) {
    return std::bit_cast<double>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

}  // namespace

EdEngine::EdEngine(const ModelParams& params, const QuenchGrid& grid, EdOptions options)
    : params_(params), grid_(grid) {
  basis_ = std::make_unique<SectorBasis>(params.L, params.M, options.max_states);
  hamiltonian_ = std::make_unique<SectorHamiltonian>(params, *basis_);
  bipartition_ = std::make_unique<BipartitionMap>(*basis_, params.M);
  const SectorHamiltonian* h = hamiltonian_.get();
  propagator_ = std::make_unique<KrylovPropagator>(
      [h](std::span<const Complex> in, std::span<Complex> out) { h->apply(in, out); },
      basis_->dimension(), options.krylov);
  psi_.assign(basis_->dimension(), Complex{});
  psi_[basis_->rank(InitialState{params.L, params.M}.occupation_mask())] = 1.0;
}

const KrylovStepInfo& EdEngine::advance() {
  last_step_ = propagator_->step(psi_, grid_.dt);
  max_norm_defect_ = std::max(max_norm_defect_, last_step_.norm_defect);
  ++step_;
  return last_step_;
}

double EdEngine::norm() const { return vec::norm(psi_); }

double EdEngine::energy() const { return hamiltonian_->expectation(psi_); }

double EdEngine::particles_in_system() const {
  const std::uint64_t system_mask = InitialState{params_.L, params_.M}.occupation_mask();
  const auto patterns = basis_->patterns();
  double m = 0.0;
  for (std::size_t i = 0; i < psi_.size(); ++i)
    m += std::norm(psi_[i]) * std::popcount(patterns[i] & system_mask);
  return m;
}

BlockDensityMatrix EdEngine::system_density_matrix() const {
  return reduced_density_matrix(psi_, *bipartition_);
}

BlockDensityMatrix EdEngine::environment_density_matrix() const {
  return pagecurve::environment_density_matrix(psi_, *bipartition_);
}

EntanglementRecord EdEngine::record(std::span<const double> orders, int topk) const {
  EntanglementRecord rec = spectrum_and_entropies(system_density_matrix(), orders, topk);
  rec.step = step_;
  rec.time = time();
  rec.particles = particles_in_system();
  rec.decayed_fraction = 1.0 - rec.particles / params_.M;
  return rec;
}

Eigen::MatrixXcd EdEngine::one_body_correlations() const {
  const int L = params_.L;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(L, L);
  const auto patterns = basis_->patterns();
  for (std::size_t idx = 0; idx < psi_.size(); ++idx) {
    const std::uint64_t x = patterns[idx];
    for (int j = 0; j < L; ++j) {
      if (!((x >> j) & 1u)) continue;
      for (int i = 0; i < L; ++i) {
        if (i != j && ((x >> i) & 1u)) continue;
        const std::uint64_t y = (x & ~(std::uint64_t{1} << j)) | (std::uint64_t{1} << i);
        const int lo = std::min(i, j), hi = std::max(i, j);
        const std::uint64_t between =
            hi - lo > 1 ? (x >> (lo + 1)) & ((std::uint64_t{1} << (hi - lo - 1)) - 1) : 0;
        const double sign = (std::popcount(between) % 2) ? -1.0 : 1.0;
        c(i, j) += sign * std::conj(psi_[basis_->rank(y)]) * psi_[idx];
      }
    }
  }
  return c;
}

void EdEngine::save_checkpoint(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write checkpoint " + path.string());
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(params_.L));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(params_.M));
  put_le<std::int64_t>(out, step_);
  put_le<double>(out, grid_.dt);
  put_le<std::uint64_t>(out, psi_.size());
  for (const Complex& a : psi_) {
    put_le<double>(out, a.real());
    put_le<double>(out, a.imag());
  }
  if (!out) throw FileError("failed writing checkpoint " + path.string());
}

void EdEngine::load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open checkpoint " + path.string());
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw FileError("not a pagecurve checkpoint: " + path.string());
  const auto L = get_le<std::uint32_t>(in);
  const auto M = get_le<std::uint32_t>(in);
  const auto step = get_le<std::int64_t>(in);
  const auto dt = get_le<double>(in);
  const auto dim = get_le<std::uint64_t>(in);
  if (static_cast<int>(L) != params_.L || static_cast<int>(M) != params_.M || dt != grid_.dt ||
      dim != psi_.size() || step < 0 || step > grid_.steps)
    throw FileError("checkpoint " + path.string() + " does not match this run");
  std::vector<Complex> psi(dim);
  for (auto& a : psi) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    a = Complex(re, im);
  }
  psi_ = std::move(psi);
  step_ = step;
}

}  // namespace pagecurve

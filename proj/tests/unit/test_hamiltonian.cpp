#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pagecurve/hamiltonian.hpp"
#include "pagecurve/model.hpp"
#include "pagecurve/sector_basis.hpp"

using namespace pagecurve;

TEST(SectorHamiltonian, TwoSitesSingleParticle) {
  const ModelParams p{1, 1, 2, 0.0, 1.0, 1.0, 0.37};
  const SectorBasis b(2, 1);
  const Eigen::MatrixXd h = SectorHamiltonian(p, b).dense();
  // Basis {site 0, site 1}.
  EXPECT_EQ(h(0, 0), 0.0);
  EXPECT_EQ(h(1, 1), 0.0);
  EXPECT_EQ(h(0, 1), -0.37);
  EXPECT_EQ(h(1, 0), -0.37);
}

TEST(SectorHamiltonian, ThreeSitesHandEvaluation) {
  // System sites 0, 1 (bond with t_s, interaction V), then g to site 2.
  const ModelParams p{2, 1, 3, 0.9, 1.3, 1.0, 0.45};
  const SectorBasis b(3, 2);
  const SectorHamiltonian h(p, b);
  const std::uint64_t s110 = 0b011, s101 = 0b101, s011 = 0b110;  // bit i = site i
  const Eigen::MatrixXd d = h.dense();
  EXPECT_DOUBLE_EQ(h.diagonal(s110), 0.9);
  EXPECT_DOUBLE_EQ(d(b.rank(s110), b.rank(s110)), 0.9);
  EXPECT_DOUBLE_EQ(d(b.rank(s101), b.rank(s110)), -0.45);  // site 1 -> 2 across g
  EXPECT_DOUBLE_EQ(d(b.rank(s011), b.rank(s101)), -1.3);   // site 0 -> 1 inside the system
  EXPECT_DOUBLE_EQ(d(b.rank(s011), b.rank(s110)), 0.0);
  EXPECT_DOUBLE_EQ(d(b.rank(s101), b.rank(s101)), 0.0);
  EXPECT_DOUBLE_EQ(d(b.rank(s011), b.rank(s011)), 0.0);  // bond (1,2) is not a system bond
}

TEST(SectorHamiltonian, MatchesFockSpaceJordanWigner) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int L = 2; L <= 8; ++L)
    for (int M = 1; M < L; ++M) {
      const ModelParams p{M, L - M, L, u(rng), u(rng), u(rng), u(rng)};
      const Eigen::MatrixXd ref = oracle::restrict_to_sector(oracle::fock_hamiltonian(p), L, M);
      const SectorBasis b(L, M);
      const Eigen::MatrixXd h = SectorHamiltonian(p, b).dense();
      ASSERT_EQ(h.rows(), ref.rows());
      EXPECT_LT((h - ref).cwiseAbs().maxCoeff(), 1e-14) << "L=" << L << " M=" << M;
    }
}

TEST(SectorHamiltonian, SymmetricAndDeterministic) {
  const ModelParams p{4, 8, 12, 0.8, 1.0, 1.0, 0.5};
  const SectorBasis b(12, 4);
  const SectorHamiltonian h(p, b);
  const Eigen::MatrixXd d = h.dense();
  EXPECT_EQ((d - d.transpose()).cwiseAbs().maxCoeff(), 0.0);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  std::vector<Complex> in(b.dimension()), a(b.dimension()), c(b.dimension());
  for (auto& z : in) z = {n(rng), n(rng)};
  h.apply(in, a);
  h.apply(in, c);
  EXPECT_EQ(a, c);
}

TEST(SectorHamiltonian, ExpectationIsReal) {
  const ModelParams p{3, 5, 8, 0.4, 1.0, 1.0, 0.5};
  const SectorBasis b(8, 3);
  const SectorHamiltonian h(p, b);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::vector<Complex> psi(b.dimension());
  for (auto& z : psi) z = {n(rng), n(rng)};
  Eigen::VectorXcd v(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
  const Complex ref = v.dot(h.dense().cast<Complex>() * v);
  EXPECT_NEAR(h.expectation(psi), ref.real(), 1e-10);
  EXPECT_NEAR(ref.imag(), 0.0, 1e-10);
}

#include <gtest/gtest.h>

#include <filesystem>

#include "pagecurve/ed_engine.hpp"
#include "pagecurve/errors.hpp"
#include "pagecurve/free_fermion.hpp"

using namespace pagecurve;

namespace {
const std::vector<double> kOrders{1.0, 2.0, kInfiniteOrder};
}

TEST(EdEngine, CapacityCheckedUpFront) {
  const ModelSetup s = build_params(7, 43, 0.8, 1, 1, 0.5, 0.02, 1);
  EXPECT_THROW(EdEngine(s.params, s.grid), CapacityError);
}

TEST(EdEngine, OneBodyCorrelationsMatchFreeEngine) {
  const ModelSetup s = build_params(3, 11, 0, 1, 1, 0.5, 0.02, 5);
  EdEngine ed(s.params, s.grid);
  while (ed.step_index() < s.grid.steps) ed.advance();
  const FreeFermionEngine free(s.params, s.grid);
  const CorrelationMatrix ref = free.correlations(s.grid.steps);
  const Eigen::MatrixXcd c = ed.one_body_correlations();
  EXPECT_LT((c - ref).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(EdEngine, RecordsMatchFreeEngineAtZeroInteraction) {
  const ModelSetup s = build_params(3, 11, 0, 1, 1, 0.5, 0.02, 3);
  EdEngine ed(s.params, s.grid);
  const FreeFermionEngine free(s.params, s.grid);
  for (std::int64_t k = 0; k <= s.grid.steps; ++k) {
    if (k > 0) ed.advance();
    const auto a = ed.record(kOrders, 4);
    const auto b = free_fermion_record(free.correlations(k), 3, k, s.grid.time(k), kOrders, 4);
    ASSERT_NEAR(a.s_vn, b.s_vn, 1e-8) << "k=" << k;
    ASSERT_NEAR(a.s_min, b.s_min, 1e-8);
    ASSERT_NEAR(a.particles, b.particles, 1e-8);
    ASSERT_NEAR(a.renyi[0], b.renyi[0], 1e-8);
    for (int i = 0; i < 4; ++i) ASSERT_NEAR(a.levels[i].lambda, b.levels[i].lambda, 1e-8);
    EXPECT_EQ(a.levels[0].sector, b.levels[0].sector);
  }
}

TEST(EdEngine, NormAndEnergyConserved) {
  const ModelSetup s = build_params(4, 8, 1.2, 1, 1, 0.5, 0.02, 4);
  EdEngine ed(s.params, s.grid);
  const double e0 = ed.energy();
  EXPECT_NEAR(e0, 1.2 * 3, 1e-14);  // three occupied system bonds
  while (ed.step_index() < s.grid.steps) {
    const auto& info = ed.advance();
    EXPECT_LT(info.norm_defect, 1e-11);
    EXPECT_NEAR(ed.norm(), 1.0, 1e-9);
    EXPECT_NEAR(ed.energy(), e0, 1e-8);
  }
  EXPECT_LT(ed.max_norm_defect(), 1e-11);
}

TEST(EdEngine, RecordInvariants) {
  const ModelSetup s = build_params(4, 8, 0.8, 1, 1, 0.5, 0.02, 2);
  EdEngine ed(s.params, s.grid);
  while (ed.step_index() < s.grid.steps) {
    ed.advance();
    const auto r = ed.record(kOrders, 16);
    EXPECT_EQ(r.s_min, r.levels[0].energy);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      sum += r.levels[i].lambda;
      if (i) EXPECT_GE(r.levels[i].energy, r.levels[i - 1].energy);
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);  // 16 = 2^4 levels is the full spectrum
    EXPECT_NEAR(r.decayed_fraction, 1.0 - r.particles / 4.0, 1e-15);
    EXPECT_EQ(r.time, ed.time());
  }
}

TEST(EdEngine, SystemAndEnvironmentEntropiesAgree) {
  const ModelSetup s = build_params(3, 7, 0.8, 1, 1, 0.5, 0.05, 3);
  EdEngine ed(s.params, s.grid);
  while (ed.step_index() < s.grid.steps) {
    ed.advance();
    const auto sys = spectrum_and_entropies(ed.system_density_matrix(), kOrders, 4);
    const auto env = spectrum_and_entropies(ed.environment_density_matrix(), kOrders, 4);
    EXPECT_NEAR(sys.s_vn, env.s_vn, 1e-8);
    EXPECT_NEAR(sys.s_min, env.s_min, 1e-8);
  }
}

TEST(EdEngine, CheckpointRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "pagecurve_ckpt_test";
  std::filesystem::create_directories(dir);
  const ModelSetup s = build_params(3, 7, 0.8, 1, 1, 0.5, 0.02, 1);
  EdEngine a(s.params, s.grid);
  for (int i = 0; i < 10; ++i) a.advance();
  a.save_checkpoint(dir / "a.ckpt");
  EdEngine b(s.params, s.grid);
  b.load_checkpoint(dir / "a.ckpt");
  EXPECT_EQ(b.step_index(), 10);
  for (int i = 0; i < 5; ++i) {
    a.advance();
    b.advance();
  }
  ASSERT_EQ(a.state().size(), b.state().size());
  for (std::size_t i = 0; i < a.state().size(); ++i) EXPECT_EQ(a.state()[i], b.state()[i]);

  const ModelSetup other = build_params(4, 6, 0.8, 1, 1, 0.5, 0.02, 1);
  EdEngine c(other.params, other.grid);
  EXPECT_THROW(c.load_checkpoint(dir / "a.ckpt"), FileError);
  EXPECT_THROW(c.load_checkpoint(dir / "missing.ckpt"), FileError);
  std::filesystem::remove_all(dir);
}

TEST(EdEngine, StrongInteractionFreezesSmallChain) {
  const ModelSetup s = build_params(3, 9, 5.0, 1, 1, 0.5, 0.02, 10);
  EdEngine ed(s.params, s.grid);
  double worst = 0.0;
  while (ed.step_index() < s.grid.steps) {
    ed.advance();
    worst = std::max(worst, 1.0 - ed.particles_in_system() / 3.0);
  }
  EXPECT_LT(worst, 0.05);
}

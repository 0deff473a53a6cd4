#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "pagecurve/errors.hpp"
#include "pagecurve/model.hpp"

using namespace pagecurve;

TEST(BuildParams, PaperSizedChain) {
  const ModelSetup s = build_params(5, 45, 0.8, 1, 1, 0.5, 0.02, 40);
  EXPECT_EQ(s.params.L, 50);
  EXPECT_EQ(s.grid.steps, 2000);
  EXPECT_DOUBLE_EQ(s.params.V, 0.8);
  EXPECT_DOUBLE_EQ(s.params.g, 0.5);
}

TEST(BuildParams, SmallChain) {
  const ModelSetup s = build_params(4, 10, 0, 1, 1, 1, 0.05, 5);
  EXPECT_EQ(s.params.L, 14);
  EXPECT_EQ(s.grid.steps, 100);
}

TEST(BuildParams, EmptyEnvironmentRejected) {
  try {
    build_params(3, 0, 0, 1, 1, 0.5, 0.02, 1);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "N");
  }
}

TEST(BuildParams, NamesOffendingField) {
  auto field = [](auto&& f) {
    try {
      f();
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("none");
  };
  EXPECT_EQ(field([] { build_params(0, 4, 0, 1, 1, 1, 0.1, 1); }), "M");
  EXPECT_EQ(field([] { build_params(2, 4, 0, 1, 1, 1, 0.0, 1); }), "dt");
  EXPECT_EQ(field([] { build_params(2, 4, 0, 1, 1, 1, -0.1, 1); }), "dt");
  EXPECT_EQ(field([] { build_params(2, 4, NAN, 1, 1, 1, 0.1, 1); }), "V");
  EXPECT_EQ(field([] { build_params(2, 4, 0, INFINITY, 1, 1, 0.1, 1); }), "t_s");
  EXPECT_EQ(field([] { build_params(2, 4, 0, 1, 1, NAN, 0.1, 1); }), "g");
  EXPECT_EQ(field([] { build_params(2, 4, 0, 1, 1, 1, 0.1, 0.05); }), "t_max");
}

TEST(QuenchGrid, TimesComeFromTheIndex) {
  const ModelSetup s = build_params(3, 3, 0, 1, 1, 1, 0.1, 1000);
  EXPECT_EQ(s.grid.time(s.grid.steps), static_cast<double>(s.grid.steps) * 0.1);
  EXPECT_DOUBLE_EQ(s.grid.time(s.grid.steps), 1000.0);
}

TEST(ModelParams, BondHoppings) {
  ModelParams p{3, 4, 7, 0.5, 1.5, 0.7, 0.25};
  EXPECT_EQ(p.bond_hopping(0), 1.5);
  EXPECT_EQ(p.bond_hopping(1), 1.5);
  EXPECT_EQ(p.bond_hopping(2), 0.25);
  EXPECT_EQ(p.bond_hopping(3), 0.7);
  EXPECT_EQ(p.bond_hopping(5), 0.7);
}

TEST(InitialState, FillsTheSystemOnly) {
  for (int M = 1; M <= 10; ++M) {
    const ModelSetup s = build_params(M, 7, 0, 1, 1, 0.5, 0.1, 1);
    const InitialState init = s.initial_state();
    EXPECT_EQ(std::popcount(init.occupation_mask()), M);
    EXPECT_EQ(init.particle_number(), M);
    for (int i = 0; i < s.params.L; ++i) EXPECT_EQ(init.occupied(i), i < M);
    EXPECT_EQ(init.occupation_mask() >> M, 0u);
  }
}

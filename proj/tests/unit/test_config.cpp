#include <gtest/gtest.h>

#include <cmath>

#include "pagecurve/config.hpp"
#include "pagecurve/errors.hpp"
#include "pagecurve/run.hpp"

using namespace pagecurve;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Config, ParsesSweep) {
  const auto c = parse_config(
      "# free sweep\n"
      "M = 3..5, 7\n"
      "L = 50   # fixed chain\n"
      "\n"
      "V = 0, 0.4\n"
      "g = 0.5\n"
      "dt = 0.05\n"
      "t_max = 10\n"
      "engine = ed\n"
      "renyi = 1, 2, 3, inf\n"
      "topk = 6\n"
      "krylov_min_dim = 8\n"
      "kink_pairs = 2\n");
  EXPECT_EQ(c.M, (std::vector<int>{3, 4, 5, 7}));
  EXPECT_EQ(c.L.value(), 50);
  EXPECT_EQ(c.environment_sites(7), 43);
  EXPECT_EQ(c.V, (std::vector<double>{0.0, 0.4}));
  EXPECT_EQ(c.g, (std::vector<double>{0.5}));
  EXPECT_EQ(c.dt, 0.05);
  EXPECT_EQ(c.t_max, 10.0);
  EXPECT_EQ(c.engine, EngineKind::Ed);
  ASSERT_EQ(c.renyi.size(), 4u);
  EXPECT_TRUE(std::isinf(c.renyi[3]));
  EXPECT_EQ(c.topk, 6);
  EXPECT_EQ(c.krylov.min_dim, 8);
  EXPECT_EQ(c.analysis.kink_pairs, 2);
}

TEST(Config, Defaults) {
  const auto c = parse_config("M = 4\nN = 10\ng = 1\n");
  EXPECT_EQ(c.V, (std::vector<double>{0.0}));
  EXPECT_EQ(c.dt, 0.02);
  EXPECT_EQ(c.t_max, 40.0);
  EXPECT_EQ(c.engine, EngineKind::Auto);
  EXPECT_EQ(c.topk, 4);
  EXPECT_EQ(c.jobs, 1);
  EXPECT_EQ(c.environment_sites(4), 10);
  EXPECT_EQ(c.krylov.min_dim, 20);
}

TEST(Config, ErrorsCarryLineNumber) {
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\nbogus = 1\ng = 0.5\n"), 3);
  EXPECT_EQ(parse_error_line("M = 3\n# comment\nL 10\ng = 0.5\n"), 3);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng = 0.5\ndt = fast\n"), 4);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng = 0.5\ng = 0.25\n"), 4);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng =\n"), 3);
  EXPECT_EQ(parse_error_line("M = 5..3\nL = 10\ng = 1\n"), 1);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng = 1\nengine = gpu\n"), 4);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng = 1\nrenyi = 1,-2\n"), 4);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng = 1\ndt = inf\n"), 4);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng = 1\njobs = 0\n"), 4);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\ng = 1\nt_max = 1e999\n"), 4);
}

TEST(Config, MissingRequiredKeys) {
  EXPECT_EQ(parse_error_line("L = 10\ng = 1\n"), 0);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\n"), 0);
  EXPECT_EQ(parse_error_line("M = 3\ng = 1\n"), 0);
  EXPECT_EQ(parse_error_line("M = 3\nL = 10\nN = 6\ng = 1\n"), 2);
  EXPECT_NO_THROW(parse_config("M = 3\nL = 10\nN = 7\ng = 1\n"));
}

TEST(Config, MessageNamesLine) {
  try {
    parse_config("M = 3\nL = 10\ncolour = red\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
}

TEST(Config, ZeroTimeStepIsRejected) {
  const auto c = parse_config("M = 3\nL = 10\ng = 0.5\ndt = 0\n");
  try {
    make_manifest(c, 3, 0.0, 0.5);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "dt");
  }
  EXPECT_THROW(expand_sweep(c), ValidationError);
}

TEST(Config, FormatRoundTrips) {
  const auto c = parse_config(
      "M = 3..5\nL = 20\nV = 0.4, 1.2\ng = 0.25\ndt = 0.01\nengine = ed\nrenyi = 1,0.5,inf\n"
      "output = out/x\nmax_states = 5000\ncheckpoint_every = 10\nbeta_window = 1.5\n");
  const std::string text = format_config(c);
  const auto d = parse_config(text);
  EXPECT_EQ(format_config(d), text);
  EXPECT_EQ(d.M, c.M);
  EXPECT_EQ(d.V, c.V);
  EXPECT_EQ(d.max_states, 5000u);
  EXPECT_EQ(d.checkpoint_every, 10);
  EXPECT_EQ(d.output, c.output);
}

TEST(Config, LoadMissingFile) {
  EXPECT_THROW(load_config("/nonexistent/sweep.cfg"), FileError);
}

TEST(Engine, NamesRoundTrip) {
  for (auto k : {EngineKind::Auto, EngineKind::Free, EngineKind::Ed})
    EXPECT_EQ(parse_engine(engine_name(k)), k);
  EXPECT_THROW(parse_engine("dmrg"), ValidationError);
}

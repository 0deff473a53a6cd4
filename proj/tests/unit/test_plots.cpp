#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pagecurve/config.hpp"
#include "pagecurve/csv.hpp"
#include "pagecurve/errors.hpp"
#include "pagecurve/run.hpp"
#include "pagecurve/sweep_analysis.hpp"

using namespace pagecurve;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "pagecurve_plot_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Plots, CollapsePanelsHaveOneSeriesPerSize) {
  const auto dir = fresh_dir("free");
  auto c = parse_config("M = 3..7\nL = 40\ng = 0.5\nt_max = 20\n");
  c.output = dir;
  run_sweep(c);
  analyze_sweep(dir, c.analysis);
  const auto scripts = emit_plots(dir);
  EXPECT_EQ(scripts.size(), 2u + 5u + 1u + 1u);
  const std::string collapse = slurp(dir / "plots" / "collapse_V0_g0.5.gp");
  for (int M = 3; M <= 7; ++M)
    EXPECT_EQ(occurrences(collapse, "title 'M=" + std::to_string(M) + "'"), 2u) << M;
  EXPECT_EQ(occurrences(collapse, "with lines"), 10u);
  for (const auto& p : scripts) {
    EXPECT_TRUE(fs::exists(p));
    const std::string text = slurp(p);
    // Data is referenced relative to the plots directory.
    for (auto pos = text.find("'../"); pos != std::string::npos; pos = text.find("'../", pos + 1)) {
      const auto end = text.find('\'', pos + 1);
      EXPECT_TRUE(fs::exists(dir / "plots" / text.substr(pos + 1, end - pos - 1)))
          << text.substr(pos, end - pos);
    }
  }
  EXPECT_TRUE(fs::exists(dir / "plots" / "entropy_vs_decayed_fraction.gp"));
  EXPECT_TRUE(fs::exists(dir / "plots" / "entropy_vs_scaled_time.gp"));
  EXPECT_TRUE(fs::exists(dir / "plots" / "regression_V0_g0.5.gp"));
}

TEST(Plots, KinkMarkersAtDetectedCrossings) {
  const auto dir = fresh_dir("ed");
  auto c = parse_config("M = 3\nL = 14\nV = 0.8\ng = 0.5\ndt = 0.05\nt_max = 6\n");
  c.output = dir;
  const auto outcome = run_sweep(c);
  const SweepAnalysis a = analyze_sweep(dir, c.analysis);
  emit_plots(dir);
  ASSERT_EQ(a.runs.size(), 1u);
  std::size_t top = 0;
  std::string expected;
  for (const auto& k : a.runs[0].kinks) {
    if (k.upper_level != 1) continue;
    ++top;
    const std::string tc = format_number(k.t_c);
    expected = "set arrow from " + tc + ", graph 0 to " + tc;
  }
  ASSERT_GE(top, 1u);
  const std::string script =
      slurp(dir / "plots" / ("schmidt_" + outcome[0].directory.filename().string() + ".gp"));
  EXPECT_EQ(occurrences(script, "set arrow from"), top);
  EXPECT_NE(script.find(expected), std::string::npos);
  EXPECT_NE(script.find("'S_min'"), std::string::npos);
}

TEST(Plots, EmptyDirectoryIsFileError) {
  const auto dir = fresh_dir("empty");
  EXPECT_THROW(emit_plots(dir), FileError);
  EXPECT_THROW(emit_plots(dir / "missing"), FileError);
}

TEST(Plots, MissingAnalysisIsFileError) {
  const auto dir = fresh_dir("unanalysed");
  auto c = parse_config("M = 3\nL = 12\ng = 0.5\nt_max = 2\n");
  c.output = dir;
  run_sweep(c);
  EXPECT_THROW(emit_plots(dir), FileError);
}

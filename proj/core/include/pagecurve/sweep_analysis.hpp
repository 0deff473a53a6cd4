// sweep_analysis.hpp - per-run and per-(V, g) summaries of a sweep directory
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pagecurve/analysis.hpp"
#include "pagecurve/config.hpp"
#include "pagecurve/csv.hpp"
#include "pagecurve/regression.hpp"
#include "pagecurve/run.hpp"

namespace pagecurve {

struct RunData {
  RunManifest manifest;
  std::filesystem::path directory;
  Timeseries series;
};

/// Every run directory (manifest.txt + timeseries.csv) below dir, sorted by
/// (V, g, M). Throws FileError if there is none.
std::vector<RunData> load_sweep(const std::filesystem::path& dir);

struct RunSummary {
  int M = 0;
  double V = 0.0;
  double g = 0.0;
  double dt = 0.0;
  std::string directory;  // relative to the sweep directory
  std::vector<KinkEvent> kinks;
  std::optional<KinkEvent> first;  // first crossing of the top pair
  std::optional<double> smin_kink;  // first slope discontinuity of S_min
  PageTimeResult page;
  std::optional<BetaFit> beta;
  std::string beta_note;

  bool kink_matches_crossing() const;  // |smin_kink - t_c| <= dt
  bool crossing_before_page() const;   // t_c <= t_Page
};

struct GroupSummary {
  double V = 0.0;
  double g = 0.0;
  std::vector<int> sizes;
  std::optional<RegressionResult> fraction_regression;  // decayed fraction at t_c vs 1/M
  std::optional<RegressionResult> time_regression;      // t_c / M vs 1/M
  std::optional<ScalingFit> collapse;
  std::optional<double> beta_mean;
  std::optional<double> A_mean;
  std::vector<std::string> notes;
};

struct SweepAnalysis {
  std::vector<RunSummary> runs;
  std::vector<GroupSummary> groups;
};

SweepAnalysis analyze_runs(const std::vector<RunData>& runs, const AnalysisOptions& options);

/// Options stored in dir/sweep.cfg, or defaults when there is none.
AnalysisOptions sweep_analysis_options(const std::filesystem::path& dir);

/// Loads, analyses and writes kinks.csv, kink_check.csv, page_times.csv,
/// regression.csv, regression_points.csv, exponents.csv, beta.csv and
/// beta_per_M.csv into dir.
SweepAnalysis analyze_sweep(const std::filesystem::path& dir, const AnalysisOptions& options);

/// Names of the files analyze_sweep writes.
const std::vector<std::string>& analysis_files();

/// Writes gnuplot scripts into dir/plots/ referencing the sweep CSVs by
/// relative path; returns the scripts written. Throws FileError when the
/// directory holds no runs or the analysis files are missing.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& dir);

}  // namespace pagecurve

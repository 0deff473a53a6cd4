// config.hpp - flat "key = value" run configuration
#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pagecurve/krylov.hpp"
#include "pagecurve/sector_basis.hpp"

namespace pagecurve {

enum class EngineKind { Auto, Free, Ed };

EngineKind parse_engine(const std::string& text);
std::string engine_name(EngineKind kind);

/// Post-processing knobs shared by simulate and analyze.
struct AnalysisOptions {
  double collapse_window = 0.5;  // |t - t_c| neighbourhood, raw time
  double beta_window = 2.0;      // (t_c, t_c + w] in scaled time t/M
  int kink_pairs = 3;            // Schmidt pairs scanned for crossings
};

/// Everything a config file can set. M, V and g accept comma lists (M also
/// "lo..hi"); every combination is one run. Either L or N fixes the chain
/// length: with L the environment is N = L - M for each M.
struct RunConfig {
  std::vector<int> M;
  std::optional<int> N;
  std::optional<int> L;
  std::vector<double> V{0.0};
  std::vector<double> g;
  double t_s = 1.0;
  double t_e = 1.0;
  double dt = 0.02;
  double t_max = 40.0;

  EngineKind engine = EngineKind::Auto;
  int topk = 4;
  std::vector<double> renyi{1.0, 2.0, std::numeric_limits<double>::infinity()};
  std::filesystem::path output = "output";
  int jobs = 1;
  std::uint64_t max_states = SectorBasis::kDefaultCapacity;
  KrylovOptions krylov;
  std::int64_t checkpoint_every = 0;  // steps between ED checkpoints, 0 = off
  AnalysisOptions analysis;

  /// N for a given system size.
  int environment_sites(int m) const;
};

/// Parses configuration text. Throws ParseError (with the 1-based line) for
/// malformed lines, unknown or repeated keys and bad values, and for missing
/// required keys (M, g, one of L/N).
RunConfig parse_config(const std::string& text);

/// Reads and parses a file; relative output paths resolve against the
/// current directory. Throws FileError if unreadable.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text of a config, re-parseable by parse_config.
std::string format_config(const RunConfig& config);

}  // namespace pagecurve

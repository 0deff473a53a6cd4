// run.hpp - run manifests, single runs and parameter sweeps
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pagecurve/config.hpp"
#include "pagecurve/entanglement.hpp"
#include "pagecurve/model.hpp"

namespace pagecurve {

/// One fully specified simulation. engine is never Auto after resolution.
struct RunManifest {
  std::string id;  // 16 hex digits, FNV-1a of the canonical description
  EngineKind engine = EngineKind::Free;
  ModelSetup setup;
  std::vector<double> renyi_orders;
  int topk = 4;
  KrylovOptions krylov;
  std::uint64_t max_states = 0;
  std::int64_t checkpoint_every = 0;

  /// Stable text that the id hashes; also the body of manifest.txt.
  std::string describe() const;
  /// M{M}_V{V}_g{g}-{first 8 hex digits of id}
  std::string directory_name() const;
};

/// Free iff V == 0 for Auto; Free with V != 0 throws UnsupportedModelError.
EngineKind resolve_engine(EngineKind requested, double V);

std::string fnv1a_hex(const std::string& text);

/// Builds and validates one manifest (ValidationError, UnsupportedModelError).
RunManifest make_manifest(const RunConfig& config, int M, double V, double g);

/// Every (M, V, g) combination in config order. Validates all of them and
/// checks ED sector sizes against max_states before returning, so a sweep
/// fails before any run starts (CapacityError names L and M).
std::vector<RunManifest> expand_sweep(const RunConfig& config);

/// Runs one manifest in memory and returns a record per grid point.
std::vector<EntanglementRecord> simulate(const RunManifest& manifest);

struct RunOutcome {
  RunManifest manifest;
  std::filesystem::path directory;
  bool reused = false;  // complete output with a matching manifest was already present
};

using ProgressCallback = std::function<void(const std::string&)>;

/// Runs one manifest into out_dir/<directory_name>/, writing timeseries.csv
/// and manifest.txt. An existing complete run with the same id is reused; an
/// ED checkpoint with the same id resumes the trajectory.
RunOutcome execute_run(const RunManifest& manifest, const std::filesystem::path& out_dir,
                       const ProgressCallback& progress = {});

/// Expands, validates and executes the sweep on `jobs` workers. The config is
/// stored as sweep.cfg in the output directory. Results follow sweep order.
std::vector<RunOutcome> run_sweep(const RunConfig& config, const ProgressCallback& progress = {});

/// Reads manifest.txt back. Throws FileError on malformed content.
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace pagecurve

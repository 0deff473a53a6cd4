// run.cpp
#include "pagecurve/run.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "pagecurve/csv.hpp"
#include "pagecurve/ed_engine.hpp"
#include "pagecurve/errors.hpp"
#include "pagecurve/free_fermion.hpp"
#include "pagecurve/sector_basis.hpp"

namespace pagecurve {

namespace fs = std::filesystem;

EngineKind resolve_engine(EngineKind requested, double V) {
  if (requested == EngineKind::Auto) return V == 0.0 ? EngineKind::Free : EngineKind::Ed;
  if (requested == EngineKind::Free && V != 0.0)
    throw UnsupportedModelError("the free-fermion engine needs V = 0 (got V = " +
                                format_number(V) + "); use engine = ed or auto");
  return requested;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunManifest::describe() const {
  const auto& p = setup.params;
  const auto& g = setup.grid;
  std::ostringstream o;
  o << "engine = " << engine_name(engine) << '\n'
    << "M = " << p.M << '\n'
    << "N = " << p.N << '\n'
    << "L = " << p.L << '\n'
    << "V = " << format_number(p.V) << '\n'
    << "t_s = " << format_number(p.t_s) << '\n'
    << "t_e = " << format_number(p.t_e) << '\n'
    << "g = " << format_number(p.g) << '\n'
    << "dt = " << format_number(g.dt) << '\n'
    << "t_max = " << format_number(g.t_max) << '\n'
    << "steps = " << g.steps << '\n'
    << "topk = " << topk << '\n'
    << "renyi = ";
  for (std::size_t i = 0; i < renyi_orders.size(); ++i)
    o << (i ? "," : "") << format_number(renyi_orders[i]);
  o << '\n';
  if (engine == EngineKind::Ed) {
    o << "krylov_tol = " << format_number(krylov.tolerance) << '\n'
      << "krylov_min_dim = " << krylov.min_dim << '\n'
      << "krylov_max_dim = " << krylov.max_dim << '\n';
  }
  return o.str();
}

std::string RunManifest::directory_name() const {
  const auto& p = setup.params;
  return "M" + std::to_string(p.M) + "_V" + format_number(p.V) + "_g" + format_number(p.g) + "-" +
         id.substr(0, 8);
}

RunManifest make_manifest(const RunConfig& config, int M, double V, double g) {
  RunManifest m;
  m.setup = build_params(M, config.environment_sites(M), V, config.t_s, config.t_e, g, config.dt,
                         config.t_max);
  m.engine = resolve_engine(config.engine, V);
  m.renyi_orders = config.renyi;
  m.topk = config.topk;
  m.krylov = config.krylov;
  m.max_states = config.max_states;
  m.checkpoint_every = config.checkpoint_every;
  m.id = fnv1a_hex(m.describe());
  return m;
}

std::vector<RunManifest> expand_sweep(const RunConfig& config) {
  std::vector<RunManifest> runs;
  for (int M : config.M)
    for (double V : config.V)
      for (double g : config.g) runs.push_back(make_manifest(config, M, V, g));
  for (const auto& r : runs) {
    const auto& p = r.setup.params;
    if (p.L > 63) throw ValidationError("L", "at most 63 sites are supported");
    if (r.engine == EngineKind::Ed) {
      const std::uint64_t dim = binomial(p.L, p.M);
      if (dim > r.max_states) throw CapacityError(p.L, p.M, dim, r.max_states);
    }
  }
  return runs;
}

namespace {

template <class Sink>
void run_free(const RunManifest& m, Sink&& sink) {
  const FreeFermionEngine engine(m.setup.params, m.setup.grid);
  for (std::int64_t k = 0; k <= m.setup.grid.steps; ++k)
    sink(free_fermion_record(engine.correlations(k), m.setup.params.M, k, m.setup.grid.time(k),
                             m.renyi_orders, m.topk));
}

EdOptions ed_options(const RunManifest& m) {
  EdOptions o;
  o.krylov = m.krylov;
  o.max_states = m.max_states;
  return o;
}

// Keeps the header and the first `rows` data lines of a partial CSV; false if
// the file holds fewer complete rows.
bool truncate_rows(const fs::path& path, std::int64_t rows) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string kept, line;
  for (std::int64_t i = 0; i <= rows; ++i) {
    if (!std::getline(in, line) || in.eof()) return false;
    kept += line + '\n';
  }
  in.close();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << kept;
  return static_cast<bool>(out);
}

std::int64_t count_rows(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::int64_t n = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n - 1;
}

std::string manifest_text(const RunManifest& m) { return "id = " + m.id + "\n" + m.describe(); }

}  // namespace

std::vector<EntanglementRecord> simulate(const RunManifest& m) {
  std::vector<EntanglementRecord> out;
  out.reserve(static_cast<std::size_t>(m.setup.grid.steps) + 1);
  if (m.engine == EngineKind::Free) {
    run_free(m, [&](EntanglementRecord r) { out.push_back(std::move(r)); });
  } else {
    EdEngine engine(m.setup.params, m.setup.grid, ed_options(m));
    out.push_back(engine.record(m.renyi_orders, m.topk));
    while (engine.step_index() < m.setup.grid.steps) {
      engine.advance();
      out.push_back(engine.record(m.renyi_orders, m.topk));
    }
  }
  return out;
}

RunManifest read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw FileError(path.string() + ": missing '" + key + "'");
    return it->second;
  };
  try {
    RunManifest m;
    m.engine = parse_engine(get("engine"));
    m.setup = build_params(std::stoi(get("M")), std::stoi(get("N")), std::stod(get("V")),
                           std::stod(get("t_s")), std::stod(get("t_e")), std::stod(get("g")),
                           std::stod(get("dt")), std::stod(get("t_max")));
    m.topk = std::stoi(get("topk"));
    m.renyi_orders = parse_renyi_orders(get("renyi"));
    if (m.engine == EngineKind::Ed) {
      m.krylov.tolerance = std::stod(get("krylov_tol"));
      m.krylov.min_dim = std::stoi(get("krylov_min_dim"));
      m.krylov.max_dim = std::stoi(get("krylov_max_dim"));
    }
    m.id = get("id");
    return m;
  } catch (const FileError&) {
    throw;
  } catch (const std::exception& e) {
    throw FileError(path.string() + ": " + e.what());
  }
}

RunOutcome execute_run(const RunManifest& m, const fs::path& out_dir,
                       const ProgressCallback& progress) {
  RunOutcome outcome{m, out_dir / m.directory_name(), false};
  const fs::path dir = outcome.directory;
  const fs::path csv = dir / "timeseries.csv";
  const fs::path partial = dir / "timeseries.csv.partial";
  const fs::path manifest = dir / "manifest.txt";
  const fs::path checkpoint = dir / "state.ckpt";
  const std::int64_t steps = m.setup.grid.steps;
  auto say = [&](const std::string& s) {
    if (progress) progress(m.directory_name() + ": " + s);
  };

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw FileError("cannot create " + dir.string() + ": " + ec.message());

  if (fs::exists(csv) && fs::exists(manifest)) {
    try {
      if (read_manifest(manifest).id == m.id && count_rows(csv) == steps + 1) {
        outcome.reused = true;
        say("up to date");
        return outcome;
      }
    } catch (const FileError&) {
    }
  }
  {
    std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
    out << manifest_text(m);
    if (!out) throw FileError("cannot write " + manifest.string());
  }

  if (m.engine == EngineKind::Free) {
    say("free engine, " + std::to_string(steps) + " steps");
    TimeseriesWriter w(partial, m.renyi_orders, m.topk);
    run_free(m, [&](const EntanglementRecord& r) { w.write(r); });
    w.close();
  } else {
    EdEngine engine(m.setup.params, m.setup.grid, ed_options(m));
    say("ed engine, dimension " + std::to_string(engine.basis().dimension()) + ", " +
        std::to_string(steps) + " steps");
    bool resumed = false;
    if (m.checkpoint_every > 0 && fs::exists(checkpoint)) {
      try {
        engine.load_checkpoint(checkpoint);
        resumed = truncate_rows(partial, engine.step_index() + 1);
      } catch (const FileError&) {
        resumed = false;
      }
      if (!resumed) engine = EdEngine(m.setup.params, m.setup.grid, ed_options(m));
      else say("resumed at step " + std::to_string(engine.step_index()));
    }
    std::ofstream out;
    if (resumed) {
      out.open(partial, std::ios::binary | std::ios::app);
    } else {
      out.open(partial, std::ios::binary | std::ios::trunc);
      std::string header;
      for (const auto& h : timeseries_header(m.renyi_orders, m.topk))
        header += (header.empty() ? "" : ",") + h;
      out << header << '\n' << timeseries_row(engine.record(m.renyi_orders, m.topk), m.topk) << '\n';
    }
    if (!out) throw FileError("cannot write " + partial.string());
    while (engine.step_index() < steps) {
      engine.advance();
      out << timeseries_row(engine.record(m.renyi_orders, m.topk), m.topk) << '\n';
      if (m.checkpoint_every > 0 && engine.step_index() % m.checkpoint_every == 0 &&
          engine.step_index() < steps) {
        out.flush();
        const fs::path tmp = dir / "state.ckpt.tmp";
        engine.save_checkpoint(tmp);
        fs::rename(tmp, checkpoint);
        say("checkpoint at step " + std::to_string(engine.step_index()));
      }
    }
    out.flush();
    if (!out) throw FileError("write failed: " + partial.string());
    out.close();
    fs::remove(checkpoint, ec);
  }
  fs::rename(partial, csv);
  say("done");
  return outcome;
}

std::vector<RunOutcome> run_sweep(const RunConfig& config, const ProgressCallback& progress) {
  const std::vector<RunManifest> runs = expand_sweep(config);
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec) throw FileError("cannot create " + config.output.string() + ": " + ec.message());
  {
    std::ofstream out(config.output / "sweep.cfg", std::ios::binary | std::ios::trunc);
    out << format_config(config);
    if (!out) throw FileError("cannot write sweep.cfg");
  }

  std::vector<RunOutcome> outcomes(runs.size());
  std::vector<std::exception_ptr> errors(runs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  ProgressCallback locked;
  if (progress)
    locked = [&](const std::string& s) {
      std::lock_guard<std::mutex> lock(log_mutex);
      progress(s);
    };
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        outcomes[i] = execute_run(runs[i], config.output, locked);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto jobs = static_cast<std::size_t>(std::max(1, config.jobs));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::min(jobs, runs.size()); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return outcomes;
}

}  // namespace pagecurve

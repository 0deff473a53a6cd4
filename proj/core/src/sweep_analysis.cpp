// sweep_analysis.cpp
#include "pagecurve/sweep_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "pagecurve/errors.hpp"

namespace pagecurve {

namespace fs = std::filesystem;

std::vector<RunData> load_sweep(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FileError("not a directory: " + dir.string());
  std::vector<RunData> runs;
  std::vector<fs::path> entries;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory()) entries.push_back(e.path());
  std::sort(entries.begin(), entries.end());
  for (const auto& sub : entries) {
    if (!fs::exists(sub / "manifest.txt") || !fs::exists(sub / "timeseries.csv")) continue;
    RunData r;
    r.manifest = read_manifest(sub / "manifest.txt");
    r.directory = sub;
    r.series = read_timeseries(sub / "timeseries.csv");
    runs.push_back(std::move(r));
  }
  if (runs.empty()) throw FileError("no completed runs in " + dir.string());
  std::stable_sort(runs.begin(), runs.end(), [](const RunData& a, const RunData& b) {
    const auto& p = a.manifest.setup.params;
    const auto& q = b.manifest.setup.params;
    return std::tie(p.V, p.g, p.M) < std::tie(q.V, q.g, q.M);
  });
  return runs;
}

bool RunSummary::kink_matches_crossing() const {
  return first && smin_kink && std::abs(*smin_kink - first->t_c) <= dt * (1.0 + 1e-9);
}

bool RunSummary::crossing_before_page() const { return first && first->t_c <= page.t_page; }

namespace {

std::string csv_safe(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  return text;
}

RunSummary summarize(const RunData& run, const AnalysisOptions& options) {
  const auto& p = run.manifest.setup.params;
  const auto& records = run.series.records;
  RunSummary s;
  s.M = p.M;
  s.V = p.V;
  s.g = p.g;
  s.dt = run.manifest.setup.grid.dt;
  s.directory = run.directory.filename().string();
  if (run.series.topk >= 2) {
    s.kinks = detect_kinks(records, std::min(options.kink_pairs, run.series.topk - 1));
    for (const auto& k : s.kinks)
      if (k.upper_level == 1) {
        s.first = k;
        break;
      }
  }
  std::vector<double> t, smin, y;
  for (const auto& r : records) {
    t.push_back(r.time);
    smin.push_back(r.s_min);
    y.push_back(r.decayed_fraction);
  }
  const auto slope = detect_slope_kinks(t, smin);
  if (!slope.empty()) s.smin_kink = slope.front().time;
  s.page = detect_page_time(records, p.M);
  if (s.first) {
    std::vector<double> tau(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) tau[i] = t[i] / p.M;
    try {
      s.beta = fit_beta(tau, y, s.first->t_c / p.M, options.beta_window);
    } catch (const Error& e) {
      s.beta_note = e.what();
    }
  } else {
    s.beta_note = "no crossing of the two largest Schmidt values";
  }
  return s;
}

}  // namespace

SweepAnalysis analyze_runs(const std::vector<RunData>& runs, const AnalysisOptions& options) {
  SweepAnalysis out;
  std::map<std::pair<double, double>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.runs.push_back(summarize(runs[i], options));
    groups[{out.runs.back().V, out.runs.back().g}].push_back(i);
  }

  for (const auto& [key, members] : groups) {
    GroupSummary g;
    g.V = key.first;
    g.g = key.second;
    std::vector<double> x, frac, tcm;
    std::vector<CollapseSeries> series;
    double beta_sum = 0.0, A_sum = 0.0;
    int beta_count = 0;
    for (std::size_t i : members) {
      const RunSummary& s = out.runs[i];
      g.sizes.push_back(s.M);
      if (s.beta) {
        beta_sum += s.beta->beta;
        A_sum += s.beta->A;
        ++beta_count;
      }
      if (!s.first) {
        g.notes.push_back("M=" + std::to_string(s.M) + ": no crossing in the time window");
        continue;
      }
      x.push_back(1.0 / s.M);
      frac.push_back(s.first->decayed_fraction);
      tcm.push_back(s.first->t_c / s.M);
      CollapseSeries c;
      c.M = s.M;
      c.t_c = s.first->t_c;
      for (const auto& r : runs[i].series.records) {
        c.time.push_back(r.time);
        c.decayed_fraction.push_back(r.decayed_fraction);
        c.s_min.push_back(r.s_min);
      }
      series.push_back(std::move(c));
    }
    if (beta_count > 0) {
      g.beta_mean = beta_sum / beta_count;
      g.A_mean = A_sum / beta_count;
    }
    if (x.size() >= 3) {
      try {
        g.fraction_regression = ordinary_least_squares(x, frac);
        g.time_regression = ordinary_least_squares(x, tcm);
      } catch (const Error& e) {
        g.notes.push_back(std::string("regression: ") + e.what());
      }
      try {
        CollapseOptions co;
        co.neighborhood = options.collapse_window;
        g.collapse = fit_collapse(series, co);
      } catch (const Error& e) {
        g.notes.push_back(std::string("collapse: ") + e.what());
      }
    } else {
      g.notes.push_back("fewer than 3 system sizes with a crossing; no regression or collapse");
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

AnalysisOptions sweep_analysis_options(const fs::path& dir) {
  const fs::path cfg = dir / "sweep.cfg";
  if (!fs::exists(cfg)) return {};
  return load_config(cfg).analysis;
}

const std::vector<std::string>& analysis_files() {
  static const std::vector<std::string> files{
      "kinks.csv",      "kink_check.csv", "page_times.csv", "regression.csv",
      "regression_points.csv", "exponents.csv", "beta.csv", "beta_per_M.csv"};
  return files;
}

SweepAnalysis analyze_sweep(const fs::path& dir, const AnalysisOptions& options) {
  const SweepAnalysis a = analyze_runs(load_sweep(dir), options);
  const auto num = [](double v) { return format_number(v); };
  const auto flag = [](bool b) { return std::string(b ? "1" : "0"); };

  CsvTable kinks({"M", "V", "g", "ordinal", "upper_level", "lower_level", "t_c",
                  "decayed_fraction", "sector_before", "sector_after"});
  CsvTable check({"M", "V", "g", "dt", "t_c", "smin_kink_t", "difference", "within_dt"});
  CsvTable page({"M", "V", "g", "t_page", "peak", "peak_density", "at_boundary", "first_t_c",
                 "tc_before_page"});
  CsvTable beta_m({"V", "g", "M", "beta", "A", "points", "residual", "loglog_beta", "note"});
  for (const auto& s : a.runs) {
    for (const auto& k : s.kinks)
      kinks.add({std::to_string(s.M), num(s.V), num(s.g), std::to_string(k.ordinal),
                 std::to_string(k.upper_level), std::to_string(k.lower_level), num(k.t_c),
                 num(k.decayed_fraction), std::to_string(k.sector_before),
                 std::to_string(k.sector_after)});
    const double tc = s.first ? s.first->t_c : NAN;
    const double sk = s.smin_kink.value_or(NAN);
    check.add({std::to_string(s.M), num(s.V), num(s.g), num(s.dt), num(tc), num(sk),
               num(std::abs(sk - tc)), flag(s.kink_matches_crossing())});
    page.add({std::to_string(s.M), num(s.V), num(s.g), num(s.page.t_page), num(s.page.peak),
              num(s.page.peak_density), flag(s.page.at_boundary), num(tc),
              flag(s.crossing_before_page())});
    if (s.beta)
      beta_m.add({num(s.V), num(s.g), std::to_string(s.M), num(s.beta->beta), num(s.beta->A),
                  std::to_string(s.beta->points), num(s.beta->residual), num(s.beta->loglog_beta),
                  ""});
    else
      beta_m.add({num(s.V), num(s.g), std::to_string(s.M), "nan", "nan", "0", "nan", "nan",
                  csv_safe(s.beta_note)});
  }

  CsvTable reg({"V", "g", "observable", "intercept", "intercept_stderr", "slope", "slope_stderr",
                "r_squared", "points"});
  CsvTable points({"V", "g", "M", "inv_M", "decayed_fraction_at_tc", "tc_over_M"});
  CsvTable expo({"V", "g", "c", "b", "a", "cost", "baseline_cost"});
  CsvTable beta({"V", "g", "beta", "A", "sizes"});
  for (const auto& g : a.groups) {
    auto add_reg = [&](const char* name, const std::optional<RegressionResult>& r) {
      if (!r) return;
      reg.add({num(g.V), num(g.g), name, num(r->intercept), num(r->intercept_stderr),
               num(r->slope), num(r->slope_stderr), num(r->r_squared),
               std::to_string(r->x.size())});
    };
    add_reg("decayed_fraction_at_tc", g.fraction_regression);
    add_reg("tc_over_M", g.time_regression);
    if (g.collapse)
      expo.add({num(g.V), num(g.g), num(g.collapse->c), num(g.collapse->b), num(g.collapse->a),
                num(g.collapse->cost()),
                num(g.collapse->baseline_a + g.collapse->baseline_b)});
    if (g.beta_mean) {
      std::string sizes;
      for (int m : g.sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(m);
      beta.add({num(g.V), num(g.g), num(*g.beta_mean), num(*g.A_mean), sizes});
    }
  }
  for (const auto& s : a.runs)
    if (s.first)
      points.add({num(s.V), num(s.g), std::to_string(s.M), num(1.0 / s.M),
                  num(s.first->decayed_fraction), num(s.first->t_c / s.M)});

  kinks.save(dir / "kinks.csv");
  check.save(dir / "kink_check.csv");
  page.save(dir / "page_times.csv");
  reg.save(dir / "regression.csv");
  points.save(dir / "regression_points.csv");
  expo.save(dir / "exponents.csv");
  beta.save(dir / "beta.csv");
  beta_m.save(dir / "beta_per_M.csv");
  return a;
}

}  // namespace pagecurve

// pagecurve command-line driver
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "pagecurve/analysis.hpp"
#include "pagecurve/config.hpp"
#include "pagecurve/csv.hpp"
#include "pagecurve/entanglement.hpp"
#include "pagecurve/errors.hpp"
#include "pagecurve/run.hpp"
#include "pagecurve/sweep_analysis.hpp"

namespace {

using namespace pagecurve;

void report(const SweepAnalysis& a) {
  for (const auto& s : a.runs) {
    if (s.first)
      std::printf("M=%d V=%s g=%s  t_c=%s  decayed=%s  t_page=%s%s\n", s.M,
                  format_number(s.V).c_str(), format_number(s.g).c_str(),
                  format_number(s.first->t_c).c_str(),
                  format_number(s.first->decayed_fraction).c_str(),
                  format_number(s.page.t_page).c_str(),
                  s.crossing_before_page() ? "" : "  [t_c after t_page]");
    else
      std::printf("M=%d V=%s g=%s  no crossing\n", s.M, format_number(s.V).c_str(),
                  format_number(s.g).c_str());
    if (s.page.at_boundary)
      std::printf("  warning: %s\n", s.page.warning.c_str());
  }
  for (const auto& g : a.groups) {
    std::printf("V=%s g=%s\n", format_number(g.V).c_str(), format_number(g.g).c_str());
    if (g.fraction_regression)
      std::printf("  decayed fraction at t_c: intercept %s +- %s, slope %s +- %s, R2 %s\n",
                  format_number(g.fraction_regression->intercept).c_str(),
                  format_number(g.fraction_regression->intercept_stderr).c_str(),
                  format_number(g.fraction_regression->slope).c_str(),
                  format_number(g.fraction_regression->slope_stderr).c_str(),
                  format_number(g.fraction_regression->r_squared).c_str());
    if (g.time_regression)
      std::printf("  t_c/M: intercept %s +- %s, slope %s +- %s, R2 %s\n",
                  format_number(g.time_regression->intercept).c_str(),
                  format_number(g.time_regression->intercept_stderr).c_str(),
                  format_number(g.time_regression->slope).c_str(),
                  format_number(g.time_regression->slope_stderr).c_str(),
                  format_number(g.time_regression->r_squared).c_str());
    if (g.collapse)
      std::printf("  collapse: c %s  b %s  a %s\n", format_number(g.collapse->c).c_str(),
                  format_number(g.collapse->b).c_str(), format_number(g.collapse->a).c_str());
    if (g.beta_mean)
      std::printf("  beta %s  A %s\n", format_number(*g.beta_mean).c_str(),
                  format_number(*g.A_mean).c_str());
    for (const auto& n : g.notes) std::printf("  note: %s\n", n.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quench dynamics and entanglement analysis of a fermion chain coupled to a bath"};
  app.require_subcommand(1);

  int jobs = 0;
  int topk = 0;
  std::string renyi;
  bool quiet = false;

  auto* sim = app.add_subcommand("simulate", "run every (M, V, g) point of a config, then analyze");
  std::string config_path;
  sim->add_option("config", config_path, "configuration file")->required();
  sim->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);
  sim->add_option("--topk", topk, "Schmidt values per record")->check(CLI::PositiveNumber);
  sim->add_option("--renyi", renyi, "Renyi orders, e.g. 1,2,inf");
  sim->add_flag("-q,--quiet", quiet, "no progress output");

  auto* ana = app.add_subcommand("analyze", "recompute the analysis CSVs of a sweep directory");
  std::string sweep_dir;
  ana->add_option("sweep_dir", sweep_dir)->required();

  auto* ans = app.add_subcommand("ansatz", "decayed fraction at the two-Schmidt-value crossing");
  long long ansatz_m = 0;
  ans->add_option("--M", ansatz_m, "system size")->required();

  auto* plt = app.add_subcommand("plots", "write gnuplot scripts for a sweep directory");
  std::string plot_dir;
  plt->add_option("sweep_dir", plot_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sim) {
      RunConfig config = load_config(config_path);
      if (jobs > 0) config.jobs = jobs;
      if (topk > 0) config.topk = topk;
      if (!renyi.empty()) config.renyi = parse_renyi_orders(renyi);
      ProgressCallback progress;
      if (!quiet) progress = [](const std::string& s) { std::cerr << s << '\n'; };
      const auto outcomes = run_sweep(config, progress);
      std::printf("%zu runs in %s\n", outcomes.size(), config.output.string().c_str());
      report(analyze_sweep(config.output, config.analysis));
    } else if (*ana) {
      report(analyze_sweep(sweep_dir, sweep_analysis_options(sweep_dir)));
    } else if (*ans) {
      std::printf("%s\n", format_number(ansatz_crossing(ansatz_m)).c_str());
    } else if (*plt) {
      for (const auto& p : emit_plots(plot_dir)) std::printf("%s\n", p.string().c_str());
    }
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << " (L=" << e.sites() << ", M=" << e.particles()
              << ")\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

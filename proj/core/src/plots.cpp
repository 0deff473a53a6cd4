// plots.cpp - gnuplot scripts for a sweep directory
#include <fstream>
#include <map>
#include <sstream>

#include "pagecurve/errors.hpp"
#include "pagecurve/sweep_analysis.hpp"

namespace pagecurve {

namespace fs = std::filesystem;

namespace {

constexpr const char* kPreamble =
    "# run from this directory: gnuplot -p <script>\n"
    "set datafile separator ','\n"
    "set key outside right\n"
    "set grid\n";

struct RunRef {
  int M;
  double V;
  double g;
  std::string dir;
  int topk;
};

std::string title(const RunRef& r) {
  return "M=" + std::to_string(r.M) + " V=" + format_number(r.V) + " g=" + format_number(r.g);
}

std::string data(const RunRef& r) { return "'../" + r.dir + "/timeseries.csv'"; }

void save(const fs::path& path, const std::string& text, std::vector<fs::path>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw FileError("cannot write " + path.string());
  written.push_back(path);
}

std::string group_tag(double V, double g) {
  return "V" + format_number(V) + "_g" + format_number(g);
}

double cell(const CsvData& d, const std::vector<std::string>& row, const char* name) {
  const int c = d.column(name);
  if (c < 0) throw FileError(std::string("analysis file lacks column ") + name);
  return std::stod(row[static_cast<std::size_t>(c)]);
}

}  // namespace

std::vector<fs::path> emit_plots(const fs::path& dir) {
  const std::vector<RunData> runs = load_sweep(dir);
  for (const auto& f : analysis_files())
    if (!fs::exists(dir / f)) throw FileError("missing " + (dir / f).string() + "; run analyze first");
  const CsvData kinks = read_csv(dir / "kinks.csv");
  const CsvData reg = read_csv(dir / "regression.csv");
  const CsvData expo = read_csv(dir / "exponents.csv");
  const std::string window = format_number(sweep_analysis_options(dir).collapse_window);

  std::vector<RunRef> refs;
  for (const auto& r : runs) {
    const auto& p = r.manifest.setup.params;
    refs.push_back({p.M, p.V, p.g, r.directory.filename().string(), r.series.topk});
  }

  const fs::path out = dir / "plots";
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw FileError("cannot create " + out.string());
  std::vector<fs::path> written;

  {
    std::ostringstream s;
    s << kPreamble << "set xlabel 'decayed fraction 1 - m/M'\nset ylabel 'S / M'\nplot \\\n";
    for (std::size_t i = 0; i < refs.size(); ++i)
      s << "  " << data(refs[i]) << " using 'decayed_fraction':(column('S_vN')/" << refs[i].M
        << ") with lines title '" << title(refs[i]) << "'" << (i + 1 < refs.size() ? ", \\\n" : "\n");
    save(out / "entropy_vs_decayed_fraction.gp", s.str(), written);
  }
  {
    std::ostringstream s;
    s << kPreamble << "set xlabel 't / M'\nset ylabel 'S / M'\nplot \\\n";
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const auto& r = refs[i];
      s << "  " << data(r) << " using (column('t')/" << r.M << "):(column('S_vN')/" << r.M
        << ") with lines title 'S_vN " << title(r) << "', \\\n"
        << "  " << data(r) << " using (column('t')/" << r.M << "):(column('S_min')/" << r.M
        << ") with lines dashtype 2 title 'S_min " << title(r) << "'"
        << (i + 1 < refs.size() ? ", \\\n" : "\n");
    }
    save(out / "entropy_vs_scaled_time.gp", s.str(), written);
  }

  for (const auto& r : refs) {
    std::ostringstream s;
    s << kPreamble << "set multiplot layout 2,1\n";
    s << "set xlabel 't'\nset ylabel 'Schmidt values'\nplot \\\n";
    for (int k = 1; k <= r.topk; ++k)
      s << "  " << data(r) << " using 't':'lambda_" << k << "' with lines title 'lambda_" << k
        << "'" << (k < r.topk ? ", \\\n" : "\n");
    s << "unset arrow\n";
    for (const auto& row : kinks.rows) {
      if (static_cast<int>(cell(kinks, row, "M")) != r.M || cell(kinks, row, "V") != r.V ||
          cell(kinks, row, "g") != r.g || cell(kinks, row, "upper_level") != 1.0)
        continue;
      const std::string tc = format_number(cell(kinks, row, "t_c"));
      s << "set arrow from " << tc << ", graph 0 to " << tc << ", graph 1 nohead dashtype 2\n";
    }
    s << "set ylabel 'S_min'\nplot " << data(r) << " using 't':'S_min' with lines title 'S_min', \\\n"
      << "  " << data(r) << " using 't':'eps_2' with lines title 'eps_2'\n"
      << "unset multiplot\n";
    save(out / ("schmidt_" + r.dir + ".gp"), s.str(), written);
  }

  // Regression lines against 1/M, one script per (V, g) with a fit.
  std::map<std::pair<double, double>, std::vector<const std::vector<std::string>*>> reg_rows;
  for (const auto& row : reg.rows) reg_rows[{cell(reg, row, "V"), cell(reg, row, "g")}].push_back(&row);
  for (const auto& [key, rows] : reg_rows) {
    std::ostringstream s;
    s << kPreamble << "set multiplot layout 1,2\nset xlabel '1/M'\nset xrange [0:*]\n";
    const std::string sel = "(column('V')==" + format_number(key.first) + " && column('g')==" +
                            format_number(key.second) + " ? column('inv_M') : 1/0)";
    for (const auto* row : rows) {
      const int obs = reg.column("observable");
      const std::string name = (*row)[static_cast<std::size_t>(obs)];
      s << "set ylabel '" << name << "'\n"
        << "plot '../regression_points.csv' using " << sel << ":'" << name
        << "' with points pointtype 7 title 'data', \\\n"
        << "  " << format_number(cell(reg, *row, "intercept")) << " + "
        << format_number(cell(reg, *row, "slope")) << "*x with lines title 'OLS'\n";
    }
    s << "unset multiplot\n";
    save(out / ("regression_" + group_tag(key.first, key.second) + ".gp"), s.str(), written);
  }

  for (const auto& row : expo.rows) {
    const double V = cell(expo, row, "V"), g = cell(expo, row, "g");
    const double c = cell(expo, row, "c"), b = cell(expo, row, "b"), a = cell(expo, row, "a");
    std::vector<std::pair<const RunRef*, double>> members;
    for (const auto& k : kinks.rows) {
      if (cell(kinks, k, "V") != V || cell(kinks, k, "g") != g ||
          cell(kinks, k, "upper_level") != 1.0 || cell(kinks, k, "ordinal") != 1.0)
        continue;
      const int M = static_cast<int>(cell(kinks, k, "M"));
      for (const auto& r : refs)
        if (r.M == M && r.V == V && r.g == g) members.push_back({&r, cell(kinks, k, "t_c")});
    }
    std::ostringstream s;
    s << kPreamble << "c = " << format_number(c) << "\nb = " << format_number(b)
      << "\na = " << format_number(a) << "\n"
      << "set multiplot layout 1,2\nset xlabel '(t/M - t_c/M) M^{1/c}'\n";
    for (int panel = 0; panel < 2; ++panel) {
      s << (panel == 0 ? "set ylabel '(1 - m/M) M^{b/c}'\n" : "set ylabel '(S_min/M) M^a'\n")
        << "plot \\\n";
      for (std::size_t i = 0; i < members.size(); ++i) {
        const RunRef& r = *members[i].first;
        const std::string M = std::to_string(r.M);
        const std::string tc = format_number(members[i].second);
        const std::string x = "((column('t') - " + tc + ")/" + M + ")*" + M + "**(1.0/c)";
        const std::string y = panel == 0 ? "column('decayed_fraction')*" + M + "**(b/c)"
                                         : "(column('S_min')/" + M + ")*" + M + "**a";
        s << "  " << data(r) << " using (abs(column('t') - " << tc << ") <= " << window << " ? " << x
          << " : 1/0):(" << y << ") with lines title 'M=" << M << "'"
          << (i + 1 < members.size() ? ", \\\n" : "\n");
      }
    }
    s << "unset multiplot\n";
    save(out / ("collapse_" + group_tag(V, g) + ".gp"), s.str(), written);
  }
  return written;
}

}  // namespace pagecurve

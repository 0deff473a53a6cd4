// csv.cpp
#include "pagecurve/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pagecurve/errors.hpp"

namespace pagecurve {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_row(std::span<const double> values) {
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) row += ',';
    row += format_number(values[i]);
  }
  return row;
}

std::vector<std::string> timeseries_header(std::span<const double> renyi_orders, int topk) {
  std::vector<std::string> h{"step", "t", "m", "decayed_fraction", "S_vN"};
  for (double n : extra_renyi_orders(renyi_orders)) h.push_back(renyi_label(n));
  h.push_back("S_min");
  for (int i = 1; i <= topk; ++i) h.push_back("lambda_" + std::to_string(i));
  for (int i = 1; i <= topk; ++i) h.push_back("eps_" + std::to_string(i));
  for (int i = 1; i <= topk; ++i) h.push_back("sector_" + std::to_string(i));
  return h;
}

std::string timeseries_row(const EntanglementRecord& r, int topk) {
  std::string row = std::to_string(r.step);
  auto cell = [&row](const std::string& s) {
    row += ',';
    row += s;
  };
  cell(format_number(r.time));
  cell(format_number(r.particles));
  cell(format_number(r.decayed_fraction));
  cell(format_number(r.s_vn));
  for (double s : r.renyi) cell(format_number(s));
  cell(format_number(r.s_min));
  const auto k = static_cast<std::size_t>(topk);
  for (std::size_t i = 0; i < k; ++i) cell(format_number(i < r.levels.size() ? r.levels[i].lambda : 0.0));
  for (std::size_t i = 0; i < k; ++i)
    cell(format_number(i < r.levels.size() ? r.levels[i].energy : INFINITY));
  for (std::size_t i = 0; i < k; ++i)
    cell(std::to_string(i < r.levels.size() ? r.levels[i].sector : -1));
  return row;
}

namespace {

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw FileError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

TimeseriesWriter::TimeseriesWriter(const std::filesystem::path& path,
                                   std::span<const double> renyi_orders, int topk)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), topk_(topk) {
  if (!out_) throw FileError("cannot write " + path.string());
  out_ << join(timeseries_header(renyi_orders, topk)) << '\n';
}

void TimeseriesWriter::write(const EntanglementRecord& record) {
  out_ << timeseries_row(record, topk_) << '\n';
}

void TimeseriesWriter::close() {
  out_.flush();
  if (!out_) throw FileError("write failed: " + path_.string());
  out_.close();
}

void write_timeseries(const std::filesystem::path& path,
                      std::span<const EntanglementRecord> records,
                      std::span<const double> renyi_orders, int topk) {
  TimeseriesWriter w(path, renyi_orders, topk);
  for (const auto& r : records) w.write(r);
  w.close();
}

Timeseries read_timeseries(const std::filesystem::path& path) {
  const CsvData data = read_csv(path);
  Timeseries ts;
  ts.header = data.header;
  const auto& h = data.header;
  auto expect = [&](std::size_t i, const char* name) {
    if (i >= h.size() || h[i] != name)
      throw FileError(path.string() + ": expected column '" + name + "'");
  };
  expect(0, "step");
  expect(1, "t");
  expect(2, "m");
  expect(3, "decayed_fraction");
  expect(4, "S_vN");
  std::size_t i = 5;
  for (; i < h.size() && h[i] != "S_min"; ++i) {
    if (h[i].rfind("S_", 0) != 0) throw FileError(path.string() + ": unexpected column " + h[i]);
    ts.renyi_orders.push_back(parse_double(h[i].substr(2), path, 1));
  }
  expect(i, "S_min");
  const std::size_t first_lambda = i + 1;
  const std::size_t rest = h.size() - first_lambda;
  if (rest % 3 != 0) throw FileError(path.string() + ": Schmidt columns are not lambda/eps/sector triples");
  ts.topk = static_cast<int>(rest / 3);
  const auto k = static_cast<std::size_t>(ts.topk);
  for (std::size_t j = 0; j < k; ++j) {
    if (h[first_lambda + j] != "lambda_" + std::to_string(j + 1) ||
        h[first_lambda + k + j] != "eps_" + std::to_string(j + 1) ||
        h[first_lambda + 2 * k + j] != "sector_" + std::to_string(j + 1))
      throw FileError(path.string() + ": malformed Schmidt columns");
  }

  std::size_t line = 1;
  for (const auto& row : data.rows) {
    ++line;
    EntanglementRecord r;
    r.step = static_cast<std::int64_t>(parse_double(row[0], path, line));
    r.time = parse_double(row[1], path, line);
    r.particles = parse_double(row[2], path, line);
    r.decayed_fraction = parse_double(row[3], path, line);
    r.s_vn = parse_double(row[4], path, line);
    r.renyi_orders = ts.renyi_orders;
    for (std::size_t j = 0; j < ts.renyi_orders.size(); ++j)
      r.renyi.push_back(parse_double(row[5 + j], path, line));
    r.s_min = parse_double(row[first_lambda - 1], path, line);
    for (std::size_t j = 0; j < k; ++j) {
      SchmidtLevel lvl;
      lvl.lambda = parse_double(row[first_lambda + j], path, line);
      lvl.energy = parse_double(row[first_lambda + k + j], path, line);
      lvl.sector = static_cast<int>(parse_double(row[first_lambda + 2 * k + j], path, line));
      r.levels.push_back(lvl);
    }
    ts.records.push_back(std::move(r));
  }
  return ts;
}

void CsvTable::add(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InputError("CsvTable: row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string s = join(header_) + '\n';
  for (const auto& r : rows_) s += join(r) + '\n';
  return s;
}

void CsvTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << str();
  out.flush();
  if (!out) throw FileError("cannot write " + path.string());
}

int CsvData::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path.string());
  CsvData data;
  std::string line;
  if (!std::getline(in, line)) throw FileError(path.string() + ": empty file");
  data.header = split(line);
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != data.header.size())
      throw FileError(path.string() + ":" + std::to_string(n) + ": expected " +
                      std::to_string(data.header.size()) + " cells");
    data.rows.push_back(std::move(cells));
  }
  return data;
}

}  // namespace pagecurve

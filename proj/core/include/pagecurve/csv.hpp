// csv.hpp - fixed-format CSV output and the time-series schema
#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "pagecurve/entanglement.hpp"

namespace pagecurve {

/// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double value);

/// Comma-joined row, each value through format_number.
std::string format_row(std::span<const double> values);

/// Header of a time-series file: step, t, m, decayed_fraction, S_vN, S_n...,
/// S_min, lambda_1..k, eps_1..k, sector_1..k.
std::vector<std::string> timeseries_header(std::span<const double> renyi_orders, int topk);

/// One row; Schmidt columns are padded with lambda 0, eps inf, sector -1
/// when a record has fewer than topk levels.
std::string timeseries_row(const EntanglementRecord& record, int topk);

/// Streams rows to a file; the header goes out on construction.
class TimeseriesWriter {
 public:
  TimeseriesWriter(const std::filesystem::path& path, std::span<const double> renyi_orders,
                   int topk);

  void write(const EntanglementRecord& record);
  /// Flushes and throws FileError if any write failed.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  int topk_;
};

void write_timeseries(const std::filesystem::path& path,
                      std::span<const EntanglementRecord> records,
                      std::span<const double> renyi_orders, int topk);

struct Timeseries {
  std::vector<std::string> header;
  std::vector<double> renyi_orders;  // from the S_n columns
  int topk = 0;
  std::vector<EntanglementRecord> records;
};

/// Reads a file written by write_timeseries. Throws FileError on I/O or
/// schema problems.
Timeseries read_timeseries(const std::filesystem::path& path);

/// Plain table with a header row; used for the analysis summaries.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Cells are preformatted strings; the count must match the header.
  void add(std::vector<std::string> cells);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Splits a CSV file with a header into named columns (no quoting support).
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};
CsvData read_csv(const std::filesystem::path& path);

}  // namespace pagecurve

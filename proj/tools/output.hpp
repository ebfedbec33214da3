#pragma once

// Batch artifacts: RFC-4180 CSV tables, two-column plot files and the JSON
// run summary. All numbers are written with format_double so that repeated
// runs are byte-identical.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "affsing/core.hpp"

namespace affsing::tools {

using Json = nlohmann::ordered_json;

/// Quotes a field when it holds a comma, quote, CR or LF; quotes are doubled.
std::string csv_field(const std::string& s);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  CsvTable& row(std::vector<std::string> cells);
  /// Header and rows, CRLF line endings.
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string num(double x);
std::string num(long long x);
std::string num(int x);
std::string num(std::uint64_t x);
std::string bool_str(bool b);
/// Space-separated integer vector, e.g. "3 -1 0".
std::string int_vec(const std::vector<long long>& v);

/// Finite values as JSON numbers; +-inf and NaN as strings.
Json json_num(double x);

/// Collects the files of one run and writes them under a directory.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir);

  /// `role` names what the series checks; it is copied into the summary.
  void csv(const std::string& name, const CsvTable& table, const std::string& role);
  /// Two whitespace-separated columns, preceded by a "# x y" comment line.
  void plot(const std::string& name, const std::string& x_label, const std::string& y_label,
            const std::vector<double>& x, const std::vector<double>& y, const std::string& role);
  void summary(const std::string& name, const Json& j);

  const Json& series() const { return series_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  void write(const std::string& name, const std::string& content);
  std::filesystem::path dir_;
  Json series_ = Json::array();
};

}  // namespace affsing::tools

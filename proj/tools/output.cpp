#include "output.hpp"

#include <cmath>
#include <fstream>

namespace affsing::tools {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw DomainError("CsvTable: row width differs from header");
  rows_.push_back(std::move(cells));
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

std::string num(double x) { return format_double(x); }
std::string num(long long x) { return std::to_string(x); }
std::string num(int x) { return std::to_string(x); }
std::string num(std::uint64_t x) { return std::to_string(x); }
std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string int_vec(const std::vector<long long>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

Json json_num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void ArtifactWriter::write(const std::string& name, const std::string& content) {
  std::ofstream f(dir_ / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + (dir_ / name).string() + "'");
  f << content;
}

void ArtifactWriter::csv(const std::string& name, const CsvTable& table, const std::string& role) {
  write(name, table.str());
  series_.push_back(Json{{"file", name}, {"kind", "csv"}, {"rows", table.rows()}, {"verifies", role}});
}

void ArtifactWriter::plot(const std::string& name, const std::string& x_label, const std::string& y_label,
                          const std::vector<double>& x, const std::vector<double>& y, const std::string& role) {
  std::string out = "# " + x_label + " " + y_label + "\n";
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) out += num(x[i]) + " " + num(y[i]) + "\n";
  write(name, out);
  series_.push_back(Json{{"file", name}, {"kind", "plot"}, {"rows", std::min(x.size(), y.size())}, {"verifies", role}});
}

void ArtifactWriter::summary(const std::string& name, const Json& j) { write(name, j.dump(2) + "\n"); }

}  // namespace affsing::tools

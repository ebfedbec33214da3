#include "affsing/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace affsing::config {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

const KeySpec* find_key(const std::string& key) {
  for (const auto& k : schema()) {
    if (k.name == key) return &k;
  }
  return nullptr;
}

long long parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v[0] == '-') throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
  std::size_t used = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(v, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    return parse_scalar(v, 128).value.convert_to<double>();
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

/// Normalized text of a value of the given type; throws ConfigError.
std::string normalize(const KeySpec& spec, const std::string& raw) {
  const std::string v = trim(raw);
  auto join = [](const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out;
  };
  switch (spec.type) {
    case Type::Int:
      parse_int(spec.name, v);
      return v;
    case Type::UInt:
      parse_u64(spec.name, v);
      return v;
    case Type::Real:
    case Type::Scalar:
      parse_real(spec.name, v);
      return v;
    case Type::Bool:
      return parse_bool(spec.name, v) ? "true" : "false";
    case Type::String:
      return unquote(v);
    case Type::IntList: {
      auto items = split_list(v);
      for (const auto& it : items) parse_int(spec.name, it);
      return join(items);
    }
    case Type::RealList:
    case Type::ScalarList: {
      auto items = split_list(v);
      for (const auto& it : items) parse_real(spec.name, it);
      return join(items);
    }
  }
  return v;
}

}  // namespace

const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> keys = {
      {"n", Type::Int, "ambient dimension; lattices live in R^{n+1}"},
      {"d", Type::Int, "dimension of the affine subspace, 1 <= d < n"},
      {"A", Type::ScalarList, "(d+1) x (n-d) parameter matrix, row-major"},
      {"x", Type::ScalarList, "point of R^n for the systole subcommand"},
      {"seed", Type::UInt, "random seed"},
      {"budget", Type::UInt, "enumeration node budget"},
      {"precision", Type::Int, "working precision in bits"},
      {"out", Type::String, "output directory"},
      {"epsilon", Type::Real, "height function scale, 0 < epsilon <= 1"},
      {"theta", Type::Real, "height function exponent"},
      {"delta", Type::Real, "smoothing rate of the averaged height"},
      {"cutoff_R", Type::Real, "initial enumeration radius"},
      {"cutoff_R_max", Type::Real, "largest enumeration radius"},
      {"T_max", Type::Real, "truncation of the averaged height integral"},
      {"h", Type::Real, "quadrature step of the averaged height integral"},
      {"Q_max", Type::Int, "largest denominator height for omega"},
      {"H_max", Type::Real, "largest hyperplane height (default: matched to Q_max)"},
      {"omega_lo", Type::Real, "first omega of the bound curve"},
      {"omega_hi", Type::Real, "last omega of the bound curve"},
      {"omega_points", Type::Int, "points on the bound curve"},
      {"rho_T", Type::Real, "horizon of the growth-rate estimate"},
      {"rho_grid", Type::Int, "time samples of the growth-rate estimate"},
      {"t_grid", Type::RealList, "times of the systole curve"},
      {"sigma", Type::Real, "systole threshold of the divergence test"},
      {"horizon", Type::Int, "integer times of the divergence fraction"},
      {"step", Type::Real, "spacing of the integer times"},
      {"grid_resolution", Type::Int, "cells per axis of the fibre grid, a power of two"},
      {"ea_t", Type::Real, "time step of the fibre classification"},
      {"horizons", Type::IntList, "horizons of the fibre classification"},
      {"eta", Type::Real, "fraction threshold of the fibre classification"},
      {"fibre_path", Type::String, "factored or direct"},
      {"excursion_t", Type::Real, "time step of the excursion sequences"},
      {"excursion_N", Type::Int, "length of the excursion sequences"},
      {"excursion_M", Type::Real, "excursion threshold (default: from a pilot run)"},
      {"samples", Type::Int, "excursion samples"},
      {"pilot", Type::Int, "pilot samples for the excursion threshold"},
      {"eta_grid", Type::RealList, "excursion fraction thresholds"},
      {"M_factors", Type::RealList, "multiples of the excursion threshold"},
      {"alpha_tilde_step", Type::Real, "quadrature step used by the excursion statistics"},
      {"contraction_samples", Type::Int, "Monte Carlo samples per contraction check"},
      {"contraction_t_grid", Type::RealList, "times of the contraction checks"},
      {"tolerance", Type::Real, "relative slope tolerance of the contraction checks"},
      {"dplus_samples", Type::Int, "Monte Carlo samples per radius"},
      {"dplus_r", Type::RealList, "radii of the small-set measure sweep"},
      {"rank_samples", Type::Int, "random vectors per (d, i) in the rank sweep"},
      {"plucker_samples", Type::Int, "random wedges in the Plucker suite"},
      {"minkowski_samples", Type::Int, "random sublattices in the Minkowski suite"},
  };
  return keys;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  for (const auto& s : out) {
    if (s.empty()) throw ConfigError("empty list item in '" + text + "'");
  }
  return out;
}

Config Config::parse(std::istream& in, const std::string& source) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    bool quoted = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '"') quoted = !quoted;
      if (body[i] == '#' && !quoted) {
        body.resize(i);
        break;
      }
    }
    body = trim(body);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (cfg.has(key)) throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    try {
      cfg.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

Config Config::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in, "<string>");
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in, path);
}

void Config::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError("unknown key '" + key + "'");
  values_[key] = normalize(*spec, value);
}

long long Config::get_int(const std::string& key, long long fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_int(key, it->second);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_u64(key, it->second);
}

double Config::get_real(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_real(key, it->second);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_bool(key, it->second);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::vector<long long> Config::get_int_list(const std::string& key, const std::vector<long long>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<long long> out;
  for (const auto& s : split_list(it->second)) out.push_back(parse_int(key, s));
  return out;
}

std::vector<double> Config::get_real_list(const std::string& key, const std::vector<double>& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& s : split_list(it->second)) out.push_back(parse_real(key, s));
  return out;
}

std::vector<std::string> Config::get_scalar_list(const std::string& key,
                                                  const std::vector<std::string>& fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : split_list(it->second);
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

std::string Config::hash() const { return fnv1a_hex(canonical()); }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace affsing::config

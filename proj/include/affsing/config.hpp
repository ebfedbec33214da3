#pragma once

// Flat typed key = value experiment configuration.
//
//   # comment
//   n = 2
//   A = 355/113, sqrt(2) - 1
//   t_grid = 1, 2, 3
//
// Every key has a declared type and is validated on load; unknown keys and
// malformed values raise ConfigError with the offending line.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "affsing/core.hpp"
#include "affsing/number.hpp"

namespace affsing::config {

enum class Type { Int, UInt, Real, Scalar, IntList, RealList, ScalarList, String, Bool };

struct KeySpec {
  std::string name;
  Type type;
  std::string description;
};

/// The recognized keys, in documentation order.
const std::vector<KeySpec>& schema();

class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in, const std::string& source = "<input>");
  static Config parse_string(const std::string& text);
  static Config load(const std::string& path);

  /// Validates value against the key's type and stores it, replacing any
  /// earlier value.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void erase(const std::string& key) { values_.erase(key); }

  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  double get_real(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<long long> get_int_list(const std::string& key, const std::vector<long long>& fallback) const;
  std::vector<double> get_real_list(const std::string& key, const std::vector<double>& fallback) const;
  /// Raw entries of a scalar list; parse them with parse_scalar at the run precision.
  std::vector<std::string> get_scalar_list(const std::string& key, const std::vector<std::string>& fallback) const;

  /// One "key = value" line per set key, sorted by key, values normalized
  /// (whitespace trimmed, list items separated by ", ").
  std::string canonical() const;
  /// 16 hex digits of the 64-bit FNV-1a hash of canonical().
  std::string hash() const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string fnv1a_hex(const std::string& bytes);

/// Splits on commas at parenthesis depth 0 and trims each item.
std::vector<std::string> split_list(const std::string& text);

}  // namespace affsing::config

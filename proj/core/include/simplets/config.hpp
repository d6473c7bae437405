#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace simplets {

/// Flat key-value configuration read from INI-like text:
///
///   # comment
///   [case]
///   kn = 0.001        ; becomes key "case.kn"
///   solver.dt = 0.01  ; dotted keys may also be written in full
///
/// Keys are case-sensitive. Later assignments override earlier ones.
class Config {
 public:
  /// Throws ConfigError naming the line for malformed input.
  static Config parse(std::string_view text);
  /// Throws ConfigError if the file cannot be read.
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  long get_long(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  std::vector<std::string> keys() const;
  /// Throws ConfigError listing keys not in `known`.
  void check_known(const std::set<std::string>& known) const;

  /// Canonical text form: one `key = value` line per key, sorted by key.
  std::string text() const;

  friend bool operator==(const Config&, const Config&) = default;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace simplets

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace czlab {

/// Flat INI-style configuration: [section] headers, key = value lines,
/// values are whitespace-separated tokens. Every key read (including ones
/// answered by a default) lands in the resolved dump so reports embed the
/// full effective configuration.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_text(const std::string& text);

  /// Applies a --set section.key=value override.
  void set(const std::string& dotted_key, const std::string& value);

  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long get_long(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<std::string> get_strings(const std::string& section, const std::string& key,
                                       const std::vector<std::string>& fallback) const;

  /// INI text of every key accessed so far, sorted.
  std::string resolved_dump() const;
  /// FNV-1a of the resolved dump.
  std::string resolved_hash() const;

 private:
  const std::vector<std::string>* find(const std::string& section, const std::string& key) const;
  void record(const std::string& section, const std::string& key, const std::string& value) const;

  std::map<std::string, std::vector<std::string>> values_;
  mutable std::map<std::string, std::string> resolved_;
};

}  // namespace czlab

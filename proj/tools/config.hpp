#pragma once

// INI run configuration for the command-line tool.
//
// Keys are addressed as "section.name". Every value a command reads, whether
// it came from the file or from a default, is recorded so it can be echoed
// into the outputs.

#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gravsim::cli {

class RunConfig {
 public:
  RunConfig() = default;

  /// Parses an INI file; throws ConfigError on unreadable or malformed input.
  static RunConfig load(const std::filesystem::path& path);

  /// Overrides (or adds) a value, e.g. from a command-line flag.
  void set(const std::string& key, const std::string& value);

  double number(const std::string& key, double fallback);
  double required_number(const std::string& key);
  std::uint64_t count(const std::string& key, std::uint64_t fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key);  // comma-separated; empty if absent
  bool has(const std::string& key) const;

  /// Path relative to the config file's directory; must exist.
  std::filesystem::path file(const std::string& key);

  /// Throws ConfigError naming any key in `sections` that no command read.
  void reject_unknown(const std::vector<std::string>& sections) const;

  /// Every value read so far, as echoed into output headers.
  const std::map<std::string, std::string>& resolved() const { return resolved_; }
  const std::filesystem::path& source() const { return source_; }

 private:
  std::string raw(const std::string& key) const;
  std::string where(const std::string& key) const;

  boost::property_tree::ptree tree_;
  std::filesystem::path source_;
  std::map<std::string, std::string> resolved_;
  mutable std::set<std::string> read_;
};

}  // namespace gravsim::cli

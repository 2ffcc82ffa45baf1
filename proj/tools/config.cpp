#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <sstream>

#include "gravsim/errors.hpp"

namespace gravsim::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto* end = t.data() + t.size();
  const auto res = std::from_chars(t.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

RunConfig RunConfig::load(const std::filesystem::path& path) {
  RunConfig cfg;
  cfg.source_ = path;
  if (!std::filesystem::exists(path)) {
    throw ConfigError(fmt::format("config file '{}' does not exist", path.string()));
  }
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), cfg.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", path.string(), e.line(), e.message()));
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) { tree_.put(key, value); }

bool RunConfig::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

std::string RunConfig::raw(const std::string& key) const {
  read_.insert(key);
  return trim(tree_.get<std::string>(key));
}

std::string RunConfig::where(const std::string& key) const {
  const auto dot = key.find('.');
  const std::string file = source_.empty() ? std::string("config") : source_.string();
  return fmt::format("{}: [{}] {}", file, key.substr(0, dot), key.substr(dot + 1));
}

double RunConfig::number(const std::string& key, double fallback) {
  if (!has(key)) {
    resolved_[key] = fmt::format("{}", fallback);
    return fallback;
  }
  const std::string s = raw(key);
  double v = 0.0;
  if (!parse_double(s, v)) throw ConfigError(fmt::format("{} = '{}' is not a number", where(key), s));
  resolved_[key] = s;
  return v;
}

double RunConfig::required_number(const std::string& key) {
  if (!has(key)) throw ConfigError(fmt::format("{} is required but missing", where(key)));
  return number(key, 0.0);
}

std::uint64_t RunConfig::count(const std::string& key, std::uint64_t fallback) {
  if (!has(key)) {
    resolved_[key] = fmt::format("{}", fallback);
    return fallback;
  }
  const std::string s = raw(key);
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw ConfigError(fmt::format("{} = '{}' is not a non-negative integer", where(key), s));
  }
  resolved_[key] = s;
  return v;
}

bool RunConfig::flag(const std::string& key, bool fallback) {
  if (!has(key)) {
    resolved_[key] = fallback ? "true" : "false";
    return fallback;
  }
  std::string s = raw(key);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  bool v = false;
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    v = true;
  } else if (!(s == "false" || s == "0" || s == "no" || s == "off")) {
    throw ConfigError(fmt::format("{} = '{}' is not a boolean", where(key), s));
  }
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) {
  const std::string v = has(key) ? raw(key) : fallback;
  resolved_[key] = v;
  return v;
}

std::vector<double> RunConfig::numbers(const std::string& key) {
  if (!has(key)) return {};
  const std::string s = raw(key);
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!parse_double(item, v)) {
      throw ConfigError(fmt::format("{}: '{}' in '{}' is not a number", where(key), trim(item), s));
    }
    out.push_back(v);
  }
  resolved_[key] = s;
  return out;
}

std::filesystem::path RunConfig::file(const std::string& key) {
  if (!has(key)) throw ConfigError(fmt::format("{} is required but missing", where(key)));
  std::filesystem::path p = raw(key);
  if (p.is_relative() && !source_.empty()) p = source_.parent_path() / p;
  if (!std::filesystem::exists(p)) {
    throw ConfigError(fmt::format("{} points to '{}', which does not exist", where(key), p.string()));
  }
  resolved_[key] = raw(key);
  return p;
}

void RunConfig::reject_unknown(const std::vector<std::string>& sections) const {
  for (const auto& section : sections) {
    const auto child = tree_.get_child_optional(section);
    if (!child) continue;
    for (const auto& [name, value] : *child) {
      const std::string key = section + "." + name;
      if (!read_.count(key)) throw ConfigError(fmt::format("{} is not a recognised key", where(key)));
    }
  }
}

}  // namespace gravsim::cli

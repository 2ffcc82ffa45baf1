#include "io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gravsim/core.hpp"

namespace gravsim::cli {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

bool parse_row(const std::string& line, double& a, double& b) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  auto parse = [](std::string s, double& v) {
    const auto l = s.find_first_not_of(" \t");
    const auto r = s.find_last_not_of(" \t\r");
    if (l == std::string::npos) return false;
    s = s.substr(l, r - l + 1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  return parse(line.substr(0, comma), a) && parse(line.substr(comma + 1), b);
}

}  // namespace

std::string num(double v) { return fmt::format("{:.14e}", v); }

std::string echo_header(const std::string& command, const RunConfig& config) {
  std::string h = fmt::format("# command = {}\n", command);
  for (const auto& [key, value] : config.resolved()) h += fmt::format("# {} = {}\n", key, value);
  return h;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& data,
               const std::vector<std::size_t>& integer_columns) {
  std::ofstream out = open_out(path);
  out << header;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  const std::size_t rows = data.empty() ? 0 : data.front().size();
  std::string line;
  for (std::size_t r = 0; r < rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < data.size(); ++c) {
      if (c) line += ',';
      const bool integer =
          std::find(integer_columns.begin(), integer_columns.end(), c) != integer_columns.end();
      line += integer ? fmt::format("{:.0f}", data[c][r]) : num(data[c][r]);
    }
    line += '\n';
    out << line;
  }
}

void write_summary(const std::filesystem::path& path, const std::string& header,
                   const Summary& summary) {
  std::ofstream out = open_out(path);
  out << header;
  for (const auto& [key, value] : summary) {
    out << key << ": " << value << '\n';
    std::cout << key << ": " << value << '\n';
  }
}

std::pair<std::vector<double>, std::vector<double>> read_two_columns(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot read '{}'", path.string()));
  std::vector<double> a;
  std::vector<double> b;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double x = 0.0;
    double y = 0.0;
    if (!parse_row(line, x, y)) {
      if (!header_seen && a.empty()) {
        header_seen = true;
        continue;
      }
      throw DataError(fmt::format("{}:{}: expected two numeric columns, got '{}'", path.string(),
                                  line_no, line));
    }
    a.push_back(x);
    b.push_back(y);
  }
  return {std::move(a), std::move(b)};
}

noise::TimeSeries read_series(const std::filesystem::path& path) {
  auto [t, y] = read_two_columns(path);
  if (t.size() < 2) {
    throw InsufficientDataError(fmt::format("'{}' holds {} samples; need at least 2", path.string(), t.size()));
  }
  noise::TimeSeries s;
  s.t0 = t.front();
  s.dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - s.dt) > 1e-6 * s.dt) {
      throw DataError(fmt::format("'{}': samples are not uniformly spaced near row {}", path.string(), i));
    }
  }
  s.samples = std::move(y);
  s.validate();
  return s;
}

noise::Psd read_psd(const std::filesystem::path& path, FrequencyUnit unit, bool two_sided) {
  auto [f, v] = read_two_columns(path);
  noise::Psd psd;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double w = f[i];
    double s = v[i];
    if (unit == FrequencyUnit::Hertz) {
      w *= kTwoPi;
      s /= kTwoPi;
    }
    if (two_sided) s *= 2.0;
    psd.freqs.push_back(w);
    psd.values.push_back(s);
  }
  psd.validate();
  return psd;
}

}  // namespace gravsim::cli

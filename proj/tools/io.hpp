#pragma once

// CSV and summary files for the command-line tool.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "gravsim/noise.hpp"

namespace gravsim::cli {

using Summary = std::vector<std::pair<std::string, std::string>>;

/// Scientific notation with 15 significant digits.
std::string num(double v);

/// "# command = ..." followed by every resolved config value.
std::string echo_header(const std::string& command, const RunConfig& config);

/// Columns listed in integer_columns are written without an exponent.
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& data,
               const std::vector<std::size_t>& integer_columns = {});

/// Writes "key: value" lines after the header and mirrors them to stdout.
void write_summary(const std::filesystem::path& path, const std::string& header,
                   const Summary& summary);

/// Two numeric columns; '#' lines and one non-numeric header row are skipped.
std::pair<std::vector<double>, std::vector<double>> read_two_columns(
    const std::filesystem::path& path);

/// (t, y) with uniform spacing.
noise::TimeSeries read_series(const std::filesystem::path& path);

enum class FrequencyUnit { RadPerSecond, Hertz };

/// Converts a tabulated PSD to the one-sided angular convention.
noise::Psd read_psd(const std::filesystem::path& path, FrequencyUnit unit, bool two_sided);

}  // namespace gravsim::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace siegel::io {

/// CSV document: '#'-prefixed metadata lines, a header row, string cells.
/// Rendering is byte-deterministic for fixed content.
struct CsvTable {
    std::vector<std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
};

/// Fixed "%.15g" rendering used for every numeric cell.
std::string format_double(double x);

/// Empty cell for a missing optional.
std::string format_optional(const std::optional<double>& x);

/// Parsed numeric CSV for plotting: header names plus per-row doubles.
/// Cells that fail to parse are NaN.
struct NumericCsv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Parses CSV text, skipping '#' metadata lines; the first remaining line is
/// the header.  Throws std::runtime_error on structural problems.
NumericCsv parse_numeric_csv(const std::string& text);

}  // namespace siegel::io

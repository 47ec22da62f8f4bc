#pragma once

#include <string>
#include <vector>

namespace frugal::csv {

/// A parsed CSV file: one row per line, fields split on commas.
/// No quoting/escaping; identifiers and numbers only (see README for the
/// file formats this project reads and writes).
struct Table {
    std::vector<std::vector<std::string>> rows;
};

/// Reads a CSV file. Throws ParseError on I/O failure or empty file.
Table read_file(const std::string& path);

/// Parses CSV text. Skips blank lines, strips trailing '\r'.
Table parse(const std::string& text);

/// Joins rows with commas and writes them to path. Throws Error on I/O failure.
void write_file(const std::string& path, const std::vector<std::vector<std::string>>& rows);

/// Renders a double with enough digits to round-trip exactly ("%.17g").
std::string format_exact(double x);

/// Renders a double with 6 significant digits ("%.6g"), the report convention.
std::string format_sig6(double x);

/// Parses a double; throws SchemaError naming row/column on failure.
double parse_double(const std::string& field, std::size_t row, const std::string& column);

} // namespace frugal::csv

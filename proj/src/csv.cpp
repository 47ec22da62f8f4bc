#include "frugal/csv.hpp"

#include "frugal/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace frugal::csv {

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    Table t = parse(buf.str());
    if (t.rows.empty()) throw ParseError("empty file: " + path);
    return t;
}

Table parse(const std::string& text) {
    Table t;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        pos = end + 1;
        if (line.empty()) {
            if (pos > text.size()) break;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t fpos = 0;
        while (true) {
            std::size_t comma = line.find(',', fpos);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(fpos));
                break;
            }
            fields.push_back(line.substr(fpos, comma - fpos));
            fpos = comma + 1;
        }
        t.rows.push_back(std::move(fields));
    }
    return t;
}

void write_file(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

std::string format_exact(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_sig6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

double parse_double(const std::string& field, std::size_t row, const std::string& column) {
    try {
        std::size_t consumed = 0;
        double v = std::stod(field, &consumed);
        if (consumed != field.size()) throw std::invalid_argument("trailing garbage");
        return v;
    } catch (const std::exception&) {
        throw SchemaError("non-numeric cell '" + field + "' at row " + std::to_string(row) +
                          ", column '" + column + "'");
    }
}

} // namespace frugal::csv

#include "siegel/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace siegel::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string format_optional(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

std::string CsvTable::to_string() const {
    std::string out;
    for (const auto& m : metadata) {
        out += "# ";
        out += m;
        out += '\n';
    }
    auto append_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_row(header);
    for (const auto& r : rows)
        append_row(r);
    return out;
}

namespace {

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

NumericCsv parse_numeric_csv(const std::string& text) {
    NumericCsv out;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        auto cells = split_cells(line);
        if (!have_header) {
            out.header = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != out.header.size())
            throw std::runtime_error("csv: row width differs from header");
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const char* s = cells[i].c_str();
            char* end = nullptr;
            double v = std::strtod(s, &end);
            row[i] = (end != s && *end == '\0') ? v : std::nan("");
        }
        out.rows.push_back(std::move(row));
    }
    if (!have_header)
        throw std::runtime_error("csv: missing header row");
    return out;
}

}  // namespace siegel::io

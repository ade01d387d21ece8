#include "mct/pairs_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace mct::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> parse_cell(std::string_view cell, std::size_t line) {
    cell = trim(cell);
    if (cell.empty() || cell == "NA") return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw CsvError(line, "expected a number, empty cell, or NA, got '" + std::string(cell) +
                                 "'");
    }
    return value;
}

}  // namespace

PairedSample parse_pairs_csv_text(std::string_view text) {
    std::vector<RawRecord> records;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (trim(line).empty()) continue;

        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw CsvError(line_no, "expected exactly two comma-separated columns");
        }
        const std::string_view left = line.substr(0, comma);
        const std::string_view right = line.substr(comma + 1);

        if (!saw_header) {
            if (trim(left) != "x1" || trim(right) != "x2") {
                throw CsvError(line_no, "expected header 'x1,x2'");
            }
            saw_header = true;
            continue;
        }
        records.emplace_back(parse_cell(left, line_no), parse_cell(right, line_no));
    }
    if (!saw_header) throw CsvError(1, "missing header 'x1,x2'");
    return build_sample(records);
}

PairedSample parse_pairs_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pairs_csv_text(buffer.str());
}

}  // namespace mct::io

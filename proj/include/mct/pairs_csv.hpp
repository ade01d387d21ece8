#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mct/sample.hpp"

namespace mct::io {

class CsvError : public std::runtime_error {
  public:
    CsvError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Two-column CSV with header `x1,x2`; an empty cell or the literal NA marks
/// a missing component. Plain decimal numbers, no thousands separators.
/// Both-missing rows are dropped and surface in the sample's
/// dropped_records() count. Throws CsvError with the offending line number.
PairedSample parse_pairs_csv_text(std::string_view text);

/// Reads and parses a file; throws std::runtime_error if unreadable.
PairedSample parse_pairs_csv(const std::string& path);

}  // namespace mct::io

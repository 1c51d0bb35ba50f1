#pragma once

#include <stdexcept>
#include <string>

namespace jetforge {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands belong to different coefficient fields (e.g. F_5 vs F_7, or Q vs F_p).
struct field_mismatch_error : error {
    using error::error;
};

/// Operands live over different variable tables or incompatible truncation levels.
struct table_mismatch_error : error {
    using error::error;
};

/// Division by zero, zero denominator, non-prime or oversized modulus.
struct arithmetic_error : error {
    using error::error;
};

/// Contract violations at the variety level: point off the variety, unit
/// ideal where a proper ideal is required, invalid map, level contract, ...
struct domain_error : error {
    using error::error;
};

/// A computation exceeded its configured budget. Never a silent truncation.
struct budget_error : error {
    using error::error;
};

/// Input text rejected by the document parser; carries a 1-based location.
struct parse_error : error {
    int line;
    int column;
    parse_error(const std::string& what, int line_, int column_)
        : error(what + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

} // namespace jetforge

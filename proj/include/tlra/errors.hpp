#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlra {

/// Failure class, used by the CLI to choose an exit code
/// (input -> 2, numeric -> 3, config -> 4).
enum class ErrorCategory { Input, Numeric, Config };

/// Base of all library errors. `tag()` is a short machine-parseable key that
/// prefixes the single-line CLI error output, e.g. "parse: ragged row 5".
class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string tag, const std::string& what)
        : std::runtime_error(what), category_(category), tag_(std::move(tag)) {}

    ErrorCategory category() const noexcept { return category_; }
    const std::string& tag() const noexcept { return tag_; }

private:
    ErrorCategory category_;
    std::string tag_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorCategory::Input, "parse", what) {}
};

struct NegativeEntryError : Error {
    NegativeEntryError(std::ptrdiff_t row, std::ptrdiff_t col, const std::string& what)
        : Error(ErrorCategory::Input, "negative-entry", what), row(row), col(col) {}
    std::ptrdiff_t row;
    std::ptrdiff_t col;
};

struct BlockViolationError : Error {
    BlockViolationError(std::ptrdiff_t row, std::ptrdiff_t block, const std::string& what)
        : Error(ErrorCategory::Input, "block-violation", what), row(row), block(block) {}
    std::ptrdiff_t row;
    std::ptrdiff_t block;
};

struct BlockSpecMismatchError : Error {
    explicit BlockSpecMismatchError(const std::string& what)
        : Error(ErrorCategory::Input, "block-spec-mismatch", what) {}
};

struct UnknownLevelError : Error {
    explicit UnknownLevelError(const std::string& what)
        : Error(ErrorCategory::Input, "unknown-level", what) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& what)
        : Error(ErrorCategory::Input, "dimension-mismatch", what) {}
};

struct WeightError : Error {
    explicit WeightError(const std::string& what) : Error(ErrorCategory::Input, "weights", what) {}
};

/// Operation needs the paired (X, Z) origin of an aggregate table, but the
/// table was loaded directly.
struct MissingOriginError : Error {
    explicit MissingOriginError(const std::string& what)
        : Error(ErrorCategory::Input, "missing-origin", what) {}
};

struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& what)
        : Error(ErrorCategory::Input, "non-finite", what) {}
};

struct ZeroTotalError : Error {
    explicit ZeroTotalError(const std::string& what)
        : Error(ErrorCategory::Numeric, "zero-total", what) {}
};

/// A cell is zero or negative on the exact-log path; callers may fall back to
/// the first-order approximation, which accepts zeros.
struct NonPositiveCellError : Error {
    NonPositiveCellError(std::ptrdiff_t row, std::ptrdiff_t col, const std::string& what)
        : Error(ErrorCategory::Numeric, "non-positive-cell", what), row(row), col(col) {}
    std::ptrdiff_t row;
    std::ptrdiff_t col;
};

struct ZeroMatrixError : Error {
    explicit ZeroMatrixError(const std::string& what)
        : Error(ErrorCategory::Numeric, "zero-matrix", what) {}
};

struct CenteringViolationError : Error {
    explicit CenteringViolationError(const std::string& what)
        : Error(ErrorCategory::Numeric, "centering", what) {}
};

struct AxisOutOfRangeError : Error {
    explicit AxisOutOfRangeError(const std::string& what)
        : Error(ErrorCategory::Config, "axis-range", what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::Config, "config", what) {}
};

}  // namespace tlra

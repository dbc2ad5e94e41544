#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "batchkit/batch_code.hpp"

namespace batchkit {

/// Malformed code file. line and column are 1-based; column 0 means the
/// whole line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

/// Code file layout:
///
///     q n N M t
///     <M lines: 1-based column indices of each bucket>
///     <n lines: N space-separated entries of G, each in [0, q-1]>
///
/// Blank lines and lines starting with '#' are ignored.
LinearBatchCode parse_code_file(std::string_view text);

/// Canonical text: single spaces, one trailing newline per line, no comments.
std::string serialize_code_file(const LinearBatchCode& code);

LinearBatchCode load_code_file(const std::string& path);

}  // namespace batchkit

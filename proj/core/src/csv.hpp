#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace flavorrec::csv {

struct Row {
    std::size_t line = 0;  // 1-based line number in the source
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;

    /// Index of a header column, or npos.
    std::size_t column(std::string_view name) const;
};

/// Comma-separated, no quoting. Fields are whitespace-trimmed, blank lines
/// skipped, '\r' tolerated. Throws ParseError on a missing header or a row
/// whose field count differs from the header's.
Table parse(std::string_view text, std::string_view what);

std::string_view trim(std::string_view s);

/// Whole-field numeric parsing; throw ParseError mentioning `context`.
double parse_double(std::string_view field, std::string_view context);
long long parse_integer(std::string_view field, std::string_view context);

}  // namespace flavorrec::csv

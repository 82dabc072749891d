#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gepc::csv {

using Row = std::vector<std::string>;

/// RFC 4180 parsing: quoted fields, doubled quotes, CRLF or LF records.
std::vector<Row> parse(std::string_view text);

/// Quotes a field when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

/// Fixed-point formatting used by every exported table (default 4 decimals).
std::string fixed(double value, int decimals = 4);

}  // namespace gepc::csv

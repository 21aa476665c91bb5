#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lcameta::csv {

using Row = std::vector<std::string>;

/// A parsed record with the 1-based physical line it started on.
struct Record {
  std::size_t line = 0;
  Row fields;
};

/// RFC 4180 reader: quoted fields, doubled quotes, embedded separators and
/// newlines, CRLF or LF line endings. Blank lines and lines whose first
/// character is '#' are skipped. Throws ParseError on an unterminated quote.
std::vector<Record> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

}  // namespace lcameta::csv

#include "lcameta/csv.hpp"

#include "lcameta/error.hpp"

namespace lcameta {

namespace {
std::string join_diagnostics(const std::vector<std::string>& diagnostics) {
  std::string text = "dataset rejected";
  for (const auto& d : diagnostics) text += "\n  " + d;
  return text;
}
}  // namespace

DatasetError::DatasetError(std::vector<std::string> diagnostics)
    : ValidationError(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace csv {

std::vector<Record> parse(std::string_view text) {
  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  // UTF-8 byte order mark
  if (text.starts_with("\xEF\xBB\xBF")) i = 3;

  while (i < n) {
    if (text[i] == '\n' || text[i] == '\r') {
      if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    if (text[i] == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }

    Record record{line, {}};
    std::string field;
    bool in_quotes = false;
    bool quoted = false;
    const std::size_t start_line = line;
    for (;;) {
      if (i >= n) {
        if (in_quotes) throw ParseError("unterminated quoted field", start_line);
        record.fields.push_back(std::move(field));
        break;
      }
      const char c = text[i];
      if (in_quotes) {
        if (c == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
          } else {
            in_quotes = false;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
          ++i;
        }
        continue;
      }
      if (c == '"' && field.empty() && !quoted) {
        in_quotes = true;
        quoted = true;
        ++i;
      } else if (c == ',') {
        record.fields.push_back(std::move(field));
        field.clear();
        quoted = false;
        ++i;
      } else if (c == '\r' || c == '\n') {
        record.fields.push_back(std::move(field));
        break;
      } else {
        field += c;
        ++i;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_row(const Row& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += escape(row[i]);
  }
  out += '\n';
  return out;
}

}  // namespace csv
}  // namespace lcameta

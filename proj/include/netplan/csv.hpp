#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "netplan/errors.hpp"

namespace netplan {

/// One parsed CSV row plus the 1-based line it started on (quoted fields may
/// span lines, so the number points at the row's first line).
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Minimal RFC-4180-style reader: comma separated, double quotes for fields
/// containing commas/quotes/newlines, "" as an escaped quote, CRLF tolerated.
/// Keeps whitespace as-is; callers trim where their schema allows it.
inline std::vector<CsvRow> parse_csv(std::istream& in, const std::string& path) {
  std::vector<CsvRow> rows;
  std::string field;
  CsvRow row;
  row.line = 1;
  std::size_t line = 1;
  bool in_quotes = false;
  bool row_started = false;
  bool field_was_quoted = false;

  const auto end_field = [&] {
    row.fields.push_back(field);
    field.clear();
    field_was_quoted = false;
  };
  const auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row = CsvRow{};
    row_started = false;
  };

  char c;
  while (in.get(c)) {
    if (!row_started) {
      row.line = line;
      row_started = true;
    }
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw CsvValueError(path, row.line, row.fields.size() + 1,
                              "quote in the middle of an unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;  // swallowed; the '\n' that follows ends the row
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field.push_back(c);
    }
  }
  if (in_quotes) {
    throw CsvValueError(path, row.line, row.fields.size() + 1,
                        "unterminated quoted field at end of file");
  }
  if (row_started || !field.empty()) {
    end_row();  // final row without a trailing newline
  }
  return rows;
}

inline std::vector<CsvRow> parse_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  return parse_csv(in, path);
}

inline std::vector<CsvRow> parse_csv_text(const std::string& text, const std::string& path) {
  std::istringstream in(text);
  return parse_csv(in, path);
}

/// Quotes a value for CSV output only when it needs it.
inline std::string csv_quote(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) {
    return value;
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace netplan

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace netplan {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed textual input (names the offending component in the message).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value is outside its documented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical validity domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// UTM zone mismatch or an unacceptable forced zone.
class ZoneError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument combination (bad ids, mismatched node sets, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Required data is missing (e.g. a node without coordinates).
class DataError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// CSV problem pinned to a file, line, and 1-based column (0 = whole row).
class CsvError : public Error {
 public:
  CsvError(const std::string& path, std::size_t line, std::size_t column,
           const std::string& what)
      : Error(path + ":" + std::to_string(line) +
              (column == 0 ? "" : ":" + std::to_string(column)) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Header does not match the declared schema.
class CsvSchemaError : public CsvError {
 public:
  using CsvError::CsvError;
};

/// A cell fails validation.
class CsvValueError : public CsvError {
 public:
  using CsvError::CsvError;
};

/// Graph is not connected; carries the node names of each component.
class ConnectivityError : public Error {
 public:
  explicit ConnectivityError(std::vector<std::vector<std::string>> components)
      : Error(render(components)), components_(std::move(components)) {}

  const std::vector<std::vector<std::string>>& components() const { return components_; }

 private:
  static std::string render(const std::vector<std::vector<std::string>>& components) {
    std::string msg = "graph is disconnected (" + std::to_string(components.size()) +
                      " components):";
    for (std::size_t i = 0; i < components.size(); ++i) {
      msg += " [" + std::to_string(i + 1) + "]";
      for (std::size_t j = 0; j < components[i].size(); ++j) {
        msg += (j == 0 ? " " : ", ") + components[i][j];
      }
      msg += ";";
    }
    return msg;
  }

  std::vector<std::vector<std::string>> components_;
};

}  // namespace netplan

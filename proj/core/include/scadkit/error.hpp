#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scadkit {

/// A single diagnostic attached to a location in a design, e.g.
/// `strands[2].domains[0]: start must be less than end`.
struct Finding {
  std::string path;
  std::string message;

  bool operator==(const Finding&) const = default;
};

std::string to_string(const Finding& finding);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed JSON whose shape does not match the expected schema.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// An error carrying a list of findings (validation failures, export
/// constraint violations, rejected edits).
class FindingsError : public Error {
 public:
  FindingsError(const std::string& summary, std::vector<Finding> findings);

  const std::vector<Finding>& findings() const noexcept { return findings_; }

 private:
  std::vector<Finding> findings_;
};

class InvalidDesign : public FindingsError {
 public:
  using FindingsError::FindingsError;
};

class EditError : public FindingsError {
 public:
  explicit EditError(const std::string& message);
  using FindingsError::FindingsError;
};

class ExportError : public FindingsError {
 public:
  explicit ExportError(const std::string& message);
  using FindingsError::FindingsError;
};

class SequenceError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Structurally broken cadnano input (dangling neighbor references, ragged
/// arrays, circular strands).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace scadkit

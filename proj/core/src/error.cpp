#include "scadkit/error.hpp"

namespace scadkit {

std::string to_string(const Finding& finding) {
  if (finding.path.empty()) return finding.message;
  return finding.path + ": " + finding.message;
}

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            message),
      line_(line),
      column_(column) {}

SchemaError::SchemaError(std::string path, const std::string& message)
    : Error(path + ": " + message), path_(std::move(path)) {}

namespace {

std::string summarize(const std::string& summary, const std::vector<Finding>& findings) {
  std::string text = summary;
  for (const auto& f : findings) {
    text += "\n  " + to_string(f);
  }
  return text;
}

}  // namespace

FindingsError::FindingsError(const std::string& summary, std::vector<Finding> findings)
    : Error(summarize(summary, findings)), findings_(std::move(findings)) {}

EditError::EditError(const std::string& message) : FindingsError(message, {{"", message}}) {}

ExportError::ExportError(const std::string& message)
    : FindingsError(message, {{"", message}}) {}

}  // namespace scadkit

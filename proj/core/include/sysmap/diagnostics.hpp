#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace sysmap {

enum class Severity { debug, info, warn };

/// One line of the scan log. Rendered as `WARN <path>: <message>`.
struct Diagnostic {
  Severity severity{Severity::warn};
  std::string path;
  std::string message;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

std::string format_diagnostic(const Diagnostic &d);

using DiagnosticLog = std::vector<Diagnostic>;

/// Bad user input: missing roots, duplicate labels, duplicate class names.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A bundle that fails to parse or violates the schema.
class BundleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated on an analysis operation (e.g. limits over an
/// empty class population).
class AnalysisError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace sysmap

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sysmap/bundle.hpp"
#include "sysmap/city.hpp"
#include "sysmap/diagnostics.hpp"

namespace sysmap::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_input_error = 2,
  exit_bundle_error = 3,
  exit_server_error = 4,
};

/// Verbosity from SYSMAP_LOG; unset or unknown means warn.
Severity log_threshold(const char *env_value);

class Logger {
public:
  Logger(std::ostream &err, Severity threshold) : err_(err), threshold_(threshold) {}
  void log(Severity severity, const std::string &message) const;
  void log(const Diagnostic &d) const;
  Severity threshold() const { return threshold_; }

private:
  std::ostream &err_;
  Severity threshold_;
};

struct AnalyzeOptions {
  std::string project_name;
  std::vector<std::pair<std::string, std::filesystem::path>> versions;
  std::filesystem::path output;
  LayoutConfig layout;
  bool timestamp{true};
  unsigned jobs{1};
};

struct ServeOptions {
  std::filesystem::path bundle;
  std::string host{"127.0.0.1"};
  int port{8080};
  std::optional<std::filesystem::path> assets;
};

/// Splits `LABEL=PATH`; throws InputError on a malformed argument.
std::pair<std::string, std::filesystem::path> parse_version_arg(const std::string &arg);

int run_analyze(const AnalyzeOptions &options, std::ostream &out, const Logger &log);
int run_report(const std::filesystem::path &bundle, std::ostream &out,
               const Logger &log);
/// Blocks until SIGINT or SIGTERM arrives; both are blocked in the calling
/// thread for the duration.
int run_serve(const ServeOptions &options, std::ostream &out, const Logger &log);

/// Evolution table for a bundle, one row per version.
std::string format_report(const CityBundle &bundle);

/// Full command line, including the program name in argv[0].
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace sysmap::cli

#include "cli.hpp"

#include <algorithm>
#include <csignal>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sysmap/bundle.hpp"
#include "sysmap/evolution.hpp"
#include "sysmap/pipeline.hpp"
#include "sysmap/version.hpp"

namespace sysmap::cli {

namespace {

const char *severity_tag(Severity s) {
  switch (s) {
  case Severity::debug: return "DEBUG";
  case Severity::info: return "INFO";
  case Severity::warn: return "WARN";
  }
  return "WARN";
}

// Deletes the half-written bundle, then dies of the same signal.
extern "C" void on_interrupt(int sig) {
  remove_pending_temp_file();
  std::signal(sig, SIG_DFL);
  std::raise(sig);
}

class InterruptGuard {
public:
  InterruptGuard() {
    struct sigaction sa {};
    sa.sa_handler = on_interrupt;
    sigemptyset(&sa.sa_mask);
    sigaction(SIGINT, &sa, &old_int_);
    sigaction(SIGTERM, &sa, &old_term_);
  }
  ~InterruptGuard() {
    sigaction(SIGINT, &old_int_, nullptr);
    sigaction(SIGTERM, &old_term_, nullptr);
  }
  InterruptGuard(const InterruptGuard &) = delete;
  InterruptGuard &operator=(const InterruptGuard &) = delete;

private:
  struct sigaction old_int_ {};
  struct sigaction old_term_ {};
};

} // namespace

Severity log_threshold(const char *env_value) {
  if (!env_value)
    return Severity::warn;
  const std::string v(env_value);
  if (v == "debug")
    return Severity::debug;
  if (v == "info")
    return Severity::info;
  return Severity::warn;
}

void Logger::log(Severity severity, const std::string &message) const {
  if (severity < threshold_)
    return;
  err_ << severity_tag(severity) << ' ' << message << '\n';
}

void Logger::log(const Diagnostic &d) const {
  if (d.severity < threshold_)
    return;
  err_ << format_diagnostic(d) << '\n';
}

std::pair<std::string, std::filesystem::path>
parse_version_arg(const std::string &arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
    throw InputError("--version expects LABEL=PATH, got '" + arg + "'");
  return {arg.substr(0, eq), std::filesystem::path(arg.substr(eq + 1))};
}

int run_analyze(const AnalyzeOptions &options, std::ostream &out,
                const Logger &log) {
  try {
    if (options.versions.empty())
      throw InputError("at least one --version is required");
    options.layout.validate();
    for (const auto &[label, root] : options.versions) {
      std::error_code ec;
      if (!std::filesystem::is_directory(root, ec))
        throw InputError("source root does not exist or is not a directory: " +
                         root.string());
    }

    CityBundle bundle;
    bundle.project_name = options.project_name;
    bundle.tool_version = kToolVersion;
    for (const auto &[label, root] : options.versions) {
      DiagnosticLog diags;
      log.log(Severity::info, "analyzing " + label + " from " + root.string());
      VersionSnapshot snap =
          analyze_version(label, root, options.layout, diags, options.jobs);
      for (const auto &d : diags)
        log.log(d);
      log.log(Severity::info,
              label + ": " + std::to_string(snap.aggregates.package_count) +
                  " packages, " + std::to_string(snap.aggregates.class_count) +
                  " classes, " + std::to_string(snap.aggregates.total_loc) +
                  " LOC");
      bundle.snapshots.push_back(std::move(snap));
    }
    bundle.evolution = build_report(bundle.snapshots);
    if (options.timestamp)
      bundle.generated_at = utc_timestamp();

    InterruptGuard guard;
    write_bundle_atomic(bundle, options.output);
    out << "wrote " << options.output.string() << " ("
        << bundle.snapshots.size() << " version"
        << (bundle.snapshots.size() == 1 ? "" : "s") << ")\n";
    return exit_ok;
  } catch (const InputError &e) {
    log.log(Severity::warn, std::string("error: ") + e.what());
    return exit_input_error;
  } catch (const std::filesystem::filesystem_error &e) {
    log.log(Severity::warn, std::string("error: ") + e.what());
    return exit_input_error;
  }
}

std::string format_report(const CityBundle &bundle) {
  const std::vector<std::string> header = {"Version", "Package", "Class", "LOC",
                                           "WMC", "Skyscrapers", "Heavy"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < bundle.evolution.versions.size(); ++i) {
    const auto &v = bundle.evolution.versions[i];
    const auto &d = bundle.evolution.detections[i];
    rows.push_back({v.version_label, std::to_string(v.package_count),
                    std::to_string(v.class_count), std::to_string(v.total_loc),
                    std::to_string(v.total_wmc),
                    std::to_string(d.skyscrapers.size()),
                    std::to_string(d.heavy_classes.size())});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto &r : rows)
      width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string> &cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == 0)
        os << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      else
        os << "  " << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
    }
    os << '\n';
  };
  emit(header);
  for (const auto &r : rows)
    emit(r);
  return os.str();
}

int run_report(const std::filesystem::path &bundle_path, std::ostream &out,
               const Logger &log) {
  try {
    const CityBundle bundle = read_bundle_file(bundle_path);
    out << "Project " << bundle.project_name << '\n' << format_report(bundle);
    return exit_ok;
  } catch (const BundleError &e) {
    log.log(Severity::warn, std::string("error: ") + e.what());
    return exit_bundle_error;
  }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  const Logger log(err, log_threshold(std::getenv("SYSMAP_LOG")));

  CLI::App app{"Analyze Java source trees and build software cities", "sysmap"};
  app.set_version_flag("--version-info", std::string(kToolVersion));
  app.require_subcommand(1);

  AnalyzeOptions analyze;
  std::vector<std::string> version_args;
  bool no_timestamp = false;
  auto *cmd_analyze = app.add_subcommand("analyze", "Analyze versions and write a city bundle");
  cmd_analyze->add_option("--project", analyze.project_name, "Project name")->required();
  cmd_analyze->add_option("--version", version_args, "LABEL=PATH, repeatable, in version order")
      ->required()
      ->take_all();
  cmd_analyze->add_option("-o,--output", analyze.output, "Bundle file to write")->required();
  cmd_analyze->add_flag("--no-timestamp", no_timestamp, "Leave generatedAt null (reproducible output)");
  cmd_analyze->add_option("--min-loc", analyze.layout.min_loc_for_building,
                          "Smallest class (LOC) drawn as a building")
      ->capture_default_str();
  cmd_analyze->add_option("--unit-per-sqrt-loc", analyze.layout.unit_per_sqrt_loc)->capture_default_str();
  cmd_analyze->add_option("--unit-per-wmc", analyze.layout.unit_per_wmc)->capture_default_str();
  cmd_analyze->add_option("--min-height", analyze.layout.min_height)->capture_default_str();
  cmd_analyze->add_option("--building-gap", analyze.layout.building_gap)->capture_default_str();
  cmd_analyze->add_option("--plot-gap", analyze.layout.plot_gap)->capture_default_str();
  cmd_analyze->add_option("-j,--jobs", analyze.jobs, "Parser threads per version")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  std::filesystem::path report_bundle;
  auto *cmd_report = app.add_subcommand("report", "Print the evolution table of a bundle");
  cmd_report->add_option("bundle", report_bundle, "Bundle file")->required();

  ServeOptions serve;
  auto *cmd_serve = app.add_subcommand("serve", "Serve a bundle and the viewer over HTTP");
  cmd_serve->add_option("bundle", serve.bundle, "Bundle file")->required();
  cmd_serve->add_option("--port", serve.port, "TCP port, 0 for any free port")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  cmd_serve->add_option("--host", serve.host)->capture_default_str();
  cmd_serve->add_option("--assets", serve.assets, "Directory with the viewer build");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    std::ostringstream msg;
    const int code = app.exit(e, out, msg);
    err << msg.str();
    return code == 0 ? exit_ok : exit_input_error;
  }

  if (*cmd_analyze) {
    try {
      for (const auto &a : version_args) {
        auto v = parse_version_arg(a);
        for (const auto &[label, _] : analyze.versions)
          if (label == v.first)
            throw InputError("duplicate version label: " + label);
        analyze.versions.push_back(std::move(v));
      }
    } catch (const InputError &e) {
      log.log(Severity::warn, std::string("error: ") + e.what());
      return exit_input_error;
    }
    analyze.timestamp = !no_timestamp;
    return run_analyze(analyze, out, log);
  }
  if (*cmd_report)
    return run_report(report_bundle, out, log);
  return run_serve(serve, out, log);
}

} // namespace sysmap::cli

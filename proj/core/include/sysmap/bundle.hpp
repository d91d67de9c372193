#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sysmap/evolution.hpp"
#include "sysmap/snapshot.hpp"

namespace sysmap {

inline constexpr std::string_view kBundleFormatVersion = "1";

/// Everything the viewer needs: every version's metrics and city plus the
/// evolution report.
struct CityBundle {
  std::string format_version{kBundleFormatVersion};
  std::string project_name;
  std::vector<VersionSnapshot> snapshots;
  EvolutionReport evolution;
  /// ISO-8601 UTC; absent in canonical (timestamp-free) output.
  std::optional<std::string> generated_at;
  std::string tool_version;

  friend bool operator==(const CityBundle &, const CityBundle &) = default;
};

/// Pretty-printed JSON with a trailing newline. Key order is fixed, so equal
/// bundles serialize to identical bytes.
std::string serialize_bundle(const CityBundle &bundle);

/// Parse and schema-check a bundle. Throws BundleError naming the first
/// violation as `<json-pointer>: <problem>`.
CityBundle parse_bundle(std::string_view text);

/// Schema check only.
void validate_bundle(std::string_view text);

CityBundle read_bundle_file(const std::filesystem::path &path);

/// Write through a temporary file in the destination directory, renamed
/// into place only after `write` returns. On any failure the temporary is
/// removed and `path` is left untouched.
void write_file_atomic(const std::filesystem::path &path,
                       const std::function<void(std::ostream &)> &write);

void write_bundle_atomic(const CityBundle &bundle,
                         const std::filesystem::path &path);

/// Unlinks the temporary of an in-flight atomic write. Async-signal-safe;
/// meant for interrupt handlers.
void remove_pending_temp_file() noexcept;

/// Current UTC time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string utc_timestamp();

} // namespace sysmap

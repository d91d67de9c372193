#pragma once

#include <filesystem>
#include <string>

#include "sysmap/city.hpp"
#include "sysmap/diagnostics.hpp"
#include "sysmap/snapshot.hpp"

namespace sysmap {

/// scan → parse → metrics → city for one source tree.
///
/// Per-file problems go to `log`; a missing root or a duplicate class
/// throws InputError.
VersionSnapshot analyze_version(const std::string &version_label,
                                const std::filesystem::path &root,
                                const LayoutConfig &layout, DiagnosticLog &log,
                                unsigned jobs = 1);

/// Same, for a project model that is already built.
VersionSnapshot snapshot_of(const ProjectModel &project,
                            const LayoutConfig &layout, DiagnosticLog &log);

} // namespace sysmap

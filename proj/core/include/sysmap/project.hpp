#pragma once

#include <string>
#include <vector>

#include "sysmap/diagnostics.hpp"
#include "sysmap/java_parser.hpp"
#include "sysmap/model.hpp"
#include "sysmap/source_file.hpp"

namespace sysmap {

/// Parse every file (in parallel when `jobs` > 1) and merge the results.
///
/// Broken units are skipped and reported in `log`. Throws InputError when
/// two files declare the same qualified name.
ProjectModel build_project(const std::vector<SourceFile> &files,
                           std::string version_label, DiagnosticLog &log,
                           unsigned jobs = 1);

/// Merge already-parsed units, in file order.
ProjectModel merge_units(std::vector<ParseResult> units,
                         std::string version_label, DiagnosticLog &log);

} // namespace sysmap

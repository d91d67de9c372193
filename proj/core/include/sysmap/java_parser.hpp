#pragma once

#include <optional>
#include <vector>

#include "sysmap/diagnostics.hpp"
#include "sysmap/model.hpp"
#include "sysmap/source_file.hpp"

namespace sysmap {

struct ParseResult {
  /// Named types in declaration order, outer types before their members.
  std::vector<ClassModel> classes;
  /// Set when the unit was rejected; `classes` is then empty.
  std::optional<Diagnostic> error;
};

/// Structurally parse one compilation unit.
///
/// Anonymous and local classes are folded into the nearest named class:
/// their methods join its method list and their type references join its
/// reference set. Lambda bodies count toward the enclosing method.
ParseResult parse_unit(const SourceFile &file);

} // namespace sysmap

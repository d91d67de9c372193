#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sysmap/diagnostics.hpp"
#include "sysmap/model.hpp"

namespace sysmap {

/// The seven per-class metrics shown on a building.
struct ClassMetrics {
  std::string qualified_name;
  std::size_t loc{1};
  double comment_percentage{0.0};
  std::size_t cbo{0};
  std::size_t lcom{0};
  std::size_t wmc{0};
  std::size_t noc{0};
  std::size_t dit{0};

  friend bool operator==(const ClassMetrics &, const ClassMetrics &) = default;
};

struct VersionAggregates {
  std::string version_label;
  std::size_t package_count{0};
  std::size_t class_count{0};
  std::size_t total_loc{0};
  std::size_t total_wmc{0};

  friend bool operator==(const VersionAggregates &,
                         const VersionAggregates &) = default;
};

std::size_t compute_loc(const ClassModel &cls);
double compute_comment_percentage(const ClassModel &cls);
/// Sum of cyclomatic complexities, 1 + decision points per method.
std::size_t compute_wmc(const ClassModel &cls);
/// LCOM1: pairs sharing no field minus pairs sharing one, floored at 0.
std::size_t compute_lcom(const ClassModel &cls);
/// Distinct other project classes named in references or supertypes.
std::size_t compute_cbo(const ClassModel &cls, const ProjectModel &project);
std::size_t compute_noc(const ClassModel &cls, const ProjectModel &project);
/// Superclass chain length inside the project. A cycle stops at the first
/// revisited class and is reported through `log` when given.
std::size_t compute_dit(const ClassModel &cls, const ProjectModel &project,
                        DiagnosticLog *log = nullptr);

struct MetricsResult {
  std::vector<ClassMetrics> classes; // sorted by qualified name
  VersionAggregates aggregates;
  DiagnosticLog warnings;
};

MetricsResult compute_all(const ProjectModel &project);

/// Aggregates over a metric list; `package_count` comes from the caller.
VersionAggregates aggregate(std::string version_label, std::size_t package_count,
                            const std::vector<ClassMetrics> &classes);

} // namespace sysmap

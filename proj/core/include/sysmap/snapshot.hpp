#pragma once

#include <string>
#include <vector>

#include "sysmap/city.hpp"
#include "sysmap/metrics.hpp"

namespace sysmap {

/// Complete analysis output for one version.
struct VersionSnapshot {
  std::string version_label;
  VersionAggregates aggregates;
  std::vector<ClassMetrics> classes;
  CityModel city;

  friend bool operator==(const VersionSnapshot &,
                         const VersionSnapshot &) = default;
};

} // namespace sysmap

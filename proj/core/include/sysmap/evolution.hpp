#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sysmap/metrics.hpp"
#include "sysmap/snapshot.hpp"

namespace sysmap {

/// Detection limits: twice the version's mean WMC and mean LOC.
struct Thresholds {
  double skyscraper_height_limit{0.0};
  double heavy_base_limit{0.0};
  std::size_t class_count{0};

  friend bool operator==(const Thresholds &, const Thresholds &) = default;
};

struct Detection {
  std::string version_label;
  /// Absent for a version without classes.
  std::optional<Thresholds> thresholds;
  /// Sorted by the exceeded metric descending, then name.
  std::vector<std::string> skyscrapers;
  std::vector<std::string> heavy_classes;

  friend bool operator==(const Detection &, const Detection &) = default;
};

/// The four charted aggregates, in chart order.
enum class ChartMetric : std::size_t { packages, classes, loc, wmc };
inline constexpr std::array<std::string_view, 4> kChartMetricNames = {
    "packageCount", "classCount", "totalLoc", "totalWmc"};

struct ChartEntry {
  std::string version_label;
  std::array<std::size_t, 4> values{};
  /// ln(value), or 0 for a zero value (flagged in `zero`).
  std::array<double, 4> ln_values{};
  std::array<bool, 4> zero{};

  friend bool operator==(const ChartEntry &, const ChartEntry &) = default;
};

struct EvolutionReport {
  std::vector<VersionAggregates> versions;
  std::vector<ChartEntry> chart_series;
  std::vector<Detection> detections;

  friend bool operator==(const EvolutionReport &,
                         const EvolutionReport &) = default;
};

/// 2 × mean WMC. Throws AnalysisError("no classes in version") when empty.
double skyscraper_limit(const std::vector<ClassMetrics> &metrics);
/// 2 × mean LOC. Throws AnalysisError("no classes in version") when empty.
double heavy_limit(const std::vector<ClassMetrics> &metrics);

/// Classes strictly above either limit.
Detection detect(const std::string &version_label,
                 const std::vector<ClassMetrics> &metrics);

ChartEntry chart_entry(const VersionAggregates &aggregates);

/// Throws InputError on an empty list or duplicate labels.
EvolutionReport build_report(const std::vector<VersionSnapshot> &snapshots);

} // namespace sysmap

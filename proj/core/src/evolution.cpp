#include "sysmap/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sysmap/diagnostics.hpp"

namespace sysmap {

namespace {

template <typename Get>
double twice_mean(const std::vector<ClassMetrics> &metrics, Get get) {
  if (metrics.empty())
    throw AnalysisError("no classes in version");
  std::size_t sum = 0;
  for (const auto &m : metrics)
    sum += get(m);
  return 2.0 * static_cast<double>(sum) / static_cast<double>(metrics.size());
}

template <typename Get>
std::vector<std::string> exceeding(const std::vector<ClassMetrics> &metrics,
                                   double limit, Get get) {
  std::vector<const ClassMetrics *> hits;
  for (const auto &m : metrics)
    if (static_cast<double>(get(m)) > limit)
      hits.push_back(&m);
  std::sort(hits.begin(), hits.end(),
            [&](const ClassMetrics *a, const ClassMetrics *b) {
              if (get(*a) != get(*b))
                return get(*a) > get(*b);
              return a->qualified_name < b->qualified_name;
            });
  std::vector<std::string> names;
  names.reserve(hits.size());
  for (const auto *m : hits)
    names.push_back(m->qualified_name);
  return names;
}

} // namespace

double skyscraper_limit(const std::vector<ClassMetrics> &metrics) {
  return twice_mean(metrics, [](const ClassMetrics &m) { return m.wmc; });
}

double heavy_limit(const std::vector<ClassMetrics> &metrics) {
  return twice_mean(metrics, [](const ClassMetrics &m) { return m.loc; });
}

Detection detect(const std::string &version_label,
                 const std::vector<ClassMetrics> &metrics) {
  Detection d;
  d.version_label = version_label;
  Thresholds t;
  t.skyscraper_height_limit = skyscraper_limit(metrics);
  t.heavy_base_limit = heavy_limit(metrics);
  t.class_count = metrics.size();
  d.skyscrapers = exceeding(metrics, t.skyscraper_height_limit,
                            [](const ClassMetrics &m) { return m.wmc; });
  d.heavy_classes = exceeding(metrics, t.heavy_base_limit,
                              [](const ClassMetrics &m) { return m.loc; });
  d.thresholds = t;
  return d;
}

ChartEntry chart_entry(const VersionAggregates &aggregates) {
  ChartEntry e;
  e.version_label = aggregates.version_label;
  e.values = {aggregates.package_count, aggregates.class_count,
              aggregates.total_loc, aggregates.total_wmc};
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    e.zero[k] = e.values[k] == 0;
    e.ln_values[k] = e.zero[k] ? 0.0 : std::log(static_cast<double>(e.values[k]));
  }
  return e;
}

EvolutionReport build_report(const std::vector<VersionSnapshot> &snapshots) {
  if (snapshots.empty())
    throw InputError("evolution report needs at least one version");
  std::set<std::string> labels;
  for (const auto &s : snapshots)
    if (!labels.insert(s.version_label).second)
      throw InputError("duplicate version label: " + s.version_label);

  EvolutionReport report;
  for (const auto &s : snapshots) {
    report.versions.push_back(s.aggregates);
    report.chart_series.push_back(chart_entry(s.aggregates));
    if (s.classes.empty()) {
      Detection empty;
      empty.version_label = s.version_label;
      report.detections.push_back(std::move(empty));
    } else {
      report.detections.push_back(detect(s.version_label, s.classes));
    }
  }
  return report;
}

} // namespace sysmap

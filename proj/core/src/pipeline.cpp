#include "sysmap/pipeline.hpp"

#include "sysmap/metrics.hpp"
#include "sysmap/project.hpp"
#include "sysmap/source_file.hpp"

namespace sysmap {

VersionSnapshot snapshot_of(const ProjectModel &project,
                            const LayoutConfig &layout, DiagnosticLog &log) {
  MetricsResult metrics = compute_all(project);
  log.insert(log.end(), metrics.warnings.begin(), metrics.warnings.end());

  std::vector<std::string> packages;
  for (const auto &[pkg, classes] : project.packages)
    if (!classes.empty())
      packages.push_back(pkg);

  VersionSnapshot snap;
  snap.version_label = project.version_label;
  snap.aggregates = std::move(metrics.aggregates);
  snap.city = build_city(project.version_label, metrics.classes, packages, layout);
  snap.classes = std::move(metrics.classes);
  return snap;
}

VersionSnapshot analyze_version(const std::string &version_label,
                                const std::filesystem::path &root,
                                const LayoutConfig &layout, DiagnosticLog &log,
                                unsigned jobs) {
  layout.validate();
  const auto files = scan_tree(root, log);
  ProjectModel project = build_project(files, version_label, log, jobs);
  project.root_path = root;
  return snapshot_of(project, layout, log);
}

} // namespace sysmap

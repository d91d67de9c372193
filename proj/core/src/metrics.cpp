#include "sysmap/metrics.hpp"

#include <map>
#include <optional>
#include <set>

namespace sysmap {

namespace {

std::optional<std::string> resolved_superclass(const ClassModel &cls,
                                               const ProjectModel &project) {
  if (!cls.superclass_name)
    return std::nullopt;
  auto target = project.resolve(cls, *cls.superclass_name);
  if (target && *target == cls.qualified_name)
    return std::nullopt;
  return target;
}

// Resolved internal parents: superclass plus extended/implemented
// interfaces, without duplicates or self edges.
std::set<std::string> resolved_parents(const ClassModel &cls,
                                       const ProjectModel &project) {
  std::set<std::string> parents;
  if (auto s = resolved_superclass(cls, project))
    parents.insert(*s);
  for (const auto &name : cls.interface_names) {
    auto target = project.resolve(cls, name);
    if (target && *target != cls.qualified_name)
      parents.insert(*target);
  }
  return parents;
}

} // namespace

std::size_t compute_loc(const ClassModel &cls) { return cls.loc_span; }

double compute_comment_percentage(const ClassModel &cls) {
  if (cls.loc_span == 0)
    return 0.0;
  return 100.0 * static_cast<double>(cls.comment_lines_in_span) /
         static_cast<double>(cls.loc_span);
}

std::size_t compute_wmc(const ClassModel &cls) {
  std::size_t total = 0;
  for (const auto &m : cls.methods)
    total += 1 + m.decision_points;
  return total;
}

std::size_t compute_lcom(const ClassModel &cls) {
  const auto &methods = cls.methods;
  std::size_t disjoint = 0;
  std::size_t sharing = 0;
  for (std::size_t a = 0; a < methods.size(); ++a) {
    for (std::size_t b = a + 1; b < methods.size(); ++b) {
      const auto &fa = methods[a].accessed_field_names;
      const auto &fb = methods[b].accessed_field_names;
      bool shared = false;
      for (const auto &f : fa) {
        if (fb.contains(f)) {
          shared = true;
          break;
        }
      }
      ++(shared ? sharing : disjoint);
    }
  }
  return disjoint > sharing ? disjoint - sharing : 0;
}

std::size_t compute_cbo(const ClassModel &cls, const ProjectModel &project) {
  std::set<std::string> coupled;
  auto add = [&](const std::string &name) {
    auto target = project.resolve(cls, name);
    if (target && *target != cls.qualified_name)
      coupled.insert(*target);
  };
  for (const auto &name : cls.referenced_type_names)
    add(name);
  if (cls.superclass_name)
    add(*cls.superclass_name);
  for (const auto &name : cls.interface_names)
    add(name);
  return coupled.size();
}

std::size_t compute_noc(const ClassModel &cls, const ProjectModel &project) {
  std::size_t children = 0;
  for (const ClassModel *other : project.all_classes()) {
    if (other->qualified_name == cls.qualified_name)
      continue;
    if (resolved_parents(*other, project).contains(cls.qualified_name))
      ++children;
  }
  return children;
}

std::size_t compute_dit(const ClassModel &cls, const ProjectModel &project,
                        DiagnosticLog *log) {
  std::set<std::string> visited{cls.qualified_name};
  const ClassModel *cur = &cls;
  std::size_t depth = 0;
  while (auto parent = resolved_superclass(*cur, project)) {
    if (visited.contains(*parent)) {
      if (log)
        log->push_back({Severity::warn, cls.source_path.string(),
                        "inheritance cycle through " + *parent + " from " +
                            cls.qualified_name});
      break;
    }
    visited.insert(*parent);
    ++depth;
    cur = project.find(*parent);
    if (!cur)
      break;
  }
  return depth;
}

VersionAggregates aggregate(std::string version_label, std::size_t package_count,
                            const std::vector<ClassMetrics> &classes) {
  VersionAggregates agg;
  agg.version_label = std::move(version_label);
  agg.package_count = package_count;
  agg.class_count = classes.size();
  for (const auto &c : classes) {
    agg.total_loc += c.loc;
    agg.total_wmc += c.wmc;
  }
  return agg;
}

MetricsResult compute_all(const ProjectModel &project) {
  MetricsResult result;
  const auto classes = project.all_classes();

  std::map<std::string, std::size_t> children;
  for (const ClassModel *cls : classes)
    for (const auto &parent : resolved_parents(*cls, project))
      ++children[parent];

  std::map<std::string, ClassMetrics> by_name;
  for (const ClassModel *cls : classes) {
    ClassMetrics m;
    m.qualified_name = cls->qualified_name;
    m.loc = compute_loc(*cls);
    m.comment_percentage = compute_comment_percentage(*cls);
    m.cbo = compute_cbo(*cls, project);
    m.lcom = compute_lcom(*cls);
    m.wmc = compute_wmc(*cls);
    auto it = children.find(cls->qualified_name);
    m.noc = it == children.end() ? 0 : it->second;
    m.dit = compute_dit(*cls, project, &result.warnings);
    by_name.emplace(m.qualified_name, std::move(m));
  }
  result.classes.reserve(by_name.size());
  for (auto &[_, m] : by_name)
    result.classes.push_back(std::move(m));
  std::size_t package_count = 0;
  for (const auto &[_, pkg_classes] : project.packages)
    if (!pkg_classes.empty())
      ++package_count;
  result.aggregates =
      aggregate(project.version_label, package_count, result.classes);
  return result;
}

} // namespace sysmap

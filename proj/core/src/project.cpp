#include "sysmap/project.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace sysmap {

namespace {

std::vector<std::string> split_dots(std::string_view name) {
  std::vector<std::string> segs;
  std::size_t from = 0;
  for (;;) {
    const std::size_t dot = name.find('.', from);
    segs.emplace_back(name.substr(from, dot - from));
    if (dot == std::string_view::npos)
      break;
    from = dot + 1;
  }
  return segs;
}

std::string_view last_segment(std::string_view name) {
  const std::size_t dot = name.rfind('.');
  return dot == std::string_view::npos ? name : name.substr(dot + 1);
}

} // namespace

std::size_t ProjectModel::class_count() const {
  std::size_t n = 0;
  for (const auto &[_, classes] : packages)
    n += classes.size();
  return n;
}

const ClassModel *ProjectModel::find(std::string_view qualified_name) const {
  auto it = by_qualified_.find(qualified_name);
  if (it == by_qualified_.end())
    return nullptr;
  return &packages.at(it->second.first)[it->second.second];
}

std::vector<const ClassModel *> ProjectModel::all_classes() const {
  std::vector<const ClassModel *> out;
  out.reserve(class_count());
  for (const auto &[_, classes] : packages)
    for (const auto &c : classes)
      out.push_back(&c);
  return out;
}

void ProjectModel::reindex() {
  type_index.clear();
  by_qualified_.clear();
  for (auto &[pkg, classes] : packages) {
    std::sort(classes.begin(), classes.end(),
              [](const ClassModel &a, const ClassModel &b) {
                return a.qualified_name < b.qualified_name;
              });
    for (std::size_t i = 0; i < classes.size(); ++i) {
      by_qualified_.emplace(classes[i].qualified_name, std::make_pair(pkg, i));
      type_index[classes[i].simple_name].push_back(classes[i].qualified_name);
    }
  }
  for (auto &[_, names] : type_index)
    std::sort(names.begin(), names.end());
}

std::optional<std::string>
ProjectModel::resolve_simple(const ClassModel &from,
                             std::string_view name) const {
  const std::string simple(name);
  auto exists = [&](const std::string &q) { return by_qualified_.contains(q); };

  // Enclosing scopes: the class itself, then each outer class.
  std::string scope = from.qualified_name;
  const std::size_t package_len =
      from.package_name.empty() ? 0 : from.package_name.size() + 1;
  while (scope.size() > package_len) {
    if (last_segment(scope) == simple)
      return scope;
    std::string candidate = scope + "." + simple;
    if (exists(candidate))
      return candidate;
    const std::size_t dot = scope.rfind('.');
    if (dot == std::string::npos || dot + 1 <= package_len)
      break;
    scope.resize(dot);
  }

  for (const auto &imp : from.imports) {
    if (imp.ends_with(".*") || last_segment(imp) != simple)
      continue;
    if (exists(imp))
      return imp;
    return std::nullopt; // imported from outside the project
  }

  const std::string same_package =
      from.package_name.empty() ? simple : from.package_name + "." + simple;
  if (exists(same_package))
    return same_package;
  auto idx = type_index.find(simple);
  if (idx != type_index.end()) {
    std::optional<std::string> only;
    std::size_t count = 0;
    for (const auto &q : idx->second) {
      if (find(q)->package_name == from.package_name) {
        only = q;
        ++count;
      }
    }
    if (count == 1)
      return only;
  }

  std::optional<std::string> on_demand;
  std::size_t on_demand_hits = 0;
  for (const auto &imp : from.imports) {
    if (!imp.ends_with(".*"))
      continue;
    std::string candidate = imp.substr(0, imp.size() - 1) + simple;
    if (exists(candidate) && candidate != on_demand) {
      on_demand = std::move(candidate);
      ++on_demand_hits;
    }
  }
  if (on_demand_hits == 1)
    return on_demand;
  if (on_demand_hits > 1)
    return std::nullopt;

  if (idx != type_index.end() && idx->second.size() == 1)
    return idx->second.front();
  return std::nullopt;
}

std::optional<std::string> ProjectModel::resolve(const ClassModel &from,
                                                 std::string_view name) const {
  if (name.empty())
    return std::nullopt;
  if (name.find('.') == std::string_view::npos)
    return resolve_simple(from, name);

  const auto segs = split_dots(name);
  if (auto head = resolve_simple(from, segs.front())) {
    std::string cur = *head;
    for (std::size_t k = 1; k < segs.size(); ++k) {
      std::string nested = cur + "." + segs[k];
      if (!by_qualified_.contains(nested))
        break;
      cur = std::move(nested);
    }
    return cur;
  }
  // Package-qualified: longest prefix naming a class.
  std::string prefix(name);
  for (std::size_t k = segs.size(); k >= 2; --k) {
    if (by_qualified_.contains(prefix))
      return prefix;
    prefix.resize(prefix.rfind('.'));
  }
  return std::nullopt;
}

ProjectModel merge_units(std::vector<ParseResult> units,
                         std::string version_label, DiagnosticLog &log) {
  ProjectModel project;
  project.version_label = std::move(version_label);
  std::map<std::string, std::filesystem::path> seen;
  for (auto &unit : units) {
    if (unit.error) {
      log.push_back(*unit.error);
      continue;
    }
    for (auto &cls : unit.classes) {
      auto [it, inserted] = seen.emplace(cls.qualified_name, cls.source_path);
      if (!inserted)
        throw InputError("duplicate class " + cls.qualified_name + " in " +
                         it->second.string() + " and " +
                         cls.source_path.string());
      project.packages[cls.package_name].push_back(std::move(cls));
    }
  }
  project.reindex();
  return project;
}

ProjectModel build_project(const std::vector<SourceFile> &files,
                           std::string version_label, DiagnosticLog &log,
                           unsigned jobs) {
  std::vector<ParseResult> units(files.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i)
      units[i] = parse_unit(files[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < files.size(); i = next++)
          units[i] = parse_unit(files[i]);
      });
  }
  return merge_units(std::move(units), std::move(version_label), log);
}

} // namespace sysmap

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sysmap {

enum class TypeKind { class_type, interface_type, enum_type };

std::string_view to_string(TypeKind kind);

struct FieldModel {
  std::string name;
  std::string type_name;

  friend bool operator==(const FieldModel &, const FieldModel &) = default;
};

struct MethodModel {
  std::string name;
  /// if, for, while, do, case, catch, ?:, && and ||.
  std::size_t decision_points{0};
  /// Names drawn from the enclosing class's own fields.
  std::set<std::string> accessed_field_names;
  std::size_t loc_span{1};

  friend bool operator==(const MethodModel &, const MethodModel &) = default;
};

struct ClassModel {
  std::string qualified_name;
  /// Empty for the default package.
  std::string package_name;
  std::string simple_name;
  TypeKind kind{TypeKind::class_type};
  /// Names as written in source; resolution happens against a ProjectModel.
  std::optional<std::string> superclass_name;
  std::vector<std::string> interface_names;
  std::vector<MethodModel> methods;
  std::vector<FieldModel> fields;
  std::set<std::string> referenced_type_names;
  std::size_t loc_span{1};
  std::size_t comment_lines_in_span{0};

  // Provenance and resolution context.
  std::filesystem::path source_path;
  std::size_t start_line{0};
  std::size_t end_line{0};
  /// Import declarations of the enclosing compilation unit, as written
  /// (`a.b.C`, `a.b.*`). Static imports are not recorded.
  std::vector<std::string> imports;

  friend bool operator==(const ClassModel &, const ClassModel &) = default;
};

struct ProjectModel {
  std::filesystem::path root_path;
  std::string version_label;
  /// Package name to its classes, sorted by qualified name.
  std::map<std::string, std::vector<ClassModel>> packages;
  /// Simple name to every qualified name carrying it, sorted.
  std::map<std::string, std::vector<std::string>> type_index;

  std::size_t class_count() const;

  /// nullptr if no class has this qualified name.
  const ClassModel *find(std::string_view qualified_name) const;

  /// Every class in (package, qualified name) order.
  std::vector<const ClassModel *> all_classes() const;

  /// Resolve a type name written inside `from` to a project class.
  ///
  /// Order: enclosing scopes of `from`, single-type imports, same package,
  /// on-demand imports, then a single unambiguous project-wide match.
  /// Dotted names first try the longest prefix that is a qualified class
  /// name, then resolve their first segment and descend through nested
  /// types. Returns nullopt for external names.
  std::optional<std::string> resolve(const ClassModel &from,
                                     std::string_view name) const;

  /// Rebuild `type_index` and the lookup tables from `packages`.
  void reindex();

  friend bool operator==(const ProjectModel &a, const ProjectModel &b) {
    return a.root_path == b.root_path && a.version_label == b.version_label &&
           a.packages == b.packages && a.type_index == b.type_index;
  }

private:
  std::map<std::string, std::pair<std::string, std::size_t>, std::less<>>
      by_qualified_;
  std::optional<std::string> resolve_simple(const ClassModel &from,
                                            std::string_view name) const;
};

} // namespace sysmap

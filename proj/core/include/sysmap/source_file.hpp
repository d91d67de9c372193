#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sysmap/diagnostics.hpp"

namespace sysmap {

enum class LineKind : unsigned char { code, comment, blank };

struct SourceFile {
  std::filesystem::path path;
  std::string text;
  std::size_t total_lines{0};
  std::size_t comment_lines{0};
  std::size_t blank_lines{0};
  /// One entry per physical line; index 0 is line 1.
  std::vector<LineKind> line_kinds;
};

/// Classify every physical line of Java source text.
///
/// A line is a comment line when it carries comment text and no code; a
/// whitespace-only line inside a block comment also counts as comment. A
/// trailing fragment without a newline is its own line.
std::vector<LineKind> classify_lines(std::string_view text);

/// Build a SourceFile from in-memory text (used by the scanner and tests).
SourceFile make_source_file(std::filesystem::path path, std::string text);

/// True if `bytes` is well-formed UTF-8.
bool is_valid_utf8(std::string_view bytes);

/// Every `.java` file below `root`, sorted by path. Unreadable or
/// non-UTF-8 files are skipped and reported in `log`.
///
/// Throws InputError if `root` is not a readable directory.
std::vector<SourceFile> scan_tree(const std::filesystem::path &root,
                                  DiagnosticLog &log);

} // namespace sysmap

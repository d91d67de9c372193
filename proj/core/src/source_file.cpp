#include "sysmap/source_file.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <system_error>

namespace sysmap {

std::string format_diagnostic(const Diagnostic &d) {
  const char *level = "WARN";
  switch (d.severity) {
  case Severity::debug:
    level = "DEBUG";
    break;
  case Severity::info:
    level = "INFO";
    break;
  case Severity::warn:
    level = "WARN";
    break;
  }
  std::string out = level;
  out += ' ';
  out += d.path;
  out += ": ";
  out += d.message;
  return out;
}

namespace {

struct LineFlags {
  bool code = false;
  bool comment = false;
};

} // namespace

std::vector<LineKind> classify_lines(std::string_view text) {
  enum class State { code, line_comment, block_comment, string, text_block, chr };

  std::vector<LineKind> kinds;
  LineFlags cur;
  State state = State::code;
  bool pending = false; // characters seen since the last newline

  auto finish_line = [&] {
    if (cur.code)
      kinds.push_back(LineKind::code);
    else if (cur.comment)
      kinds.push_back(LineKind::comment);
    else
      kinds.push_back(LineKind::blank);
    cur = {};
    pending = false;
    // A line that opens inside a block comment belongs to the comment.
    if (state == State::block_comment)
      cur.comment = true;
  };

  const std::size_t n = text.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c == '\n') {
      if (state == State::line_comment)
        state = State::code;
      // Unterminated string literals end at the line break.
      if (state == State::string || state == State::chr)
        state = State::code;
      finish_line();
      continue;
    }
    pending = true;
    const bool space = c == ' ' || c == '\t' || c == '\r' || c == '\f';
    switch (state) {
    case State::code:
      if (space)
        break;
      if (c == '/' && i + 1 < n && text[i + 1] == '/') {
        state = State::line_comment;
        cur.comment = true;
        ++i;
      } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
        state = State::block_comment;
        cur.comment = true;
        ++i;
      } else if (c == '"' && text.substr(i, 3) == "\"\"\"") {
        state = State::text_block;
        cur.code = true;
        i += 2;
      } else if (c == '"') {
        state = State::string;
        cur.code = true;
      } else if (c == '\'') {
        state = State::chr;
        cur.code = true;
      } else {
        cur.code = true;
      }
      break;
    case State::line_comment:
      break;
    case State::block_comment:
      cur.comment = true;
      if (c == '*' && i + 1 < n && text[i + 1] == '/') {
        state = State::code;
        ++i;
      }
      break;
    case State::string:
      if (c == '\\')
        ++i;
      else if (c == '"')
        state = State::code;
      break;
    case State::chr:
      if (c == '\\')
        ++i;
      else if (c == '\'')
        state = State::code;
      break;
    case State::text_block:
      cur.code = true;
      if (c == '\\')
        ++i;
      else if (c == '"' && text.substr(i, 3) == "\"\"\"") {
        state = State::code;
        i += 2;
      }
      break;
    }
  }
  if (pending)
    finish_line();
  return kinds;
}

SourceFile make_source_file(std::filesystem::path path, std::string text) {
  SourceFile f;
  f.path = std::move(path);
  f.text = std::move(text);
  f.line_kinds = classify_lines(f.text);
  f.total_lines = f.line_kinds.size();
  f.comment_lines = static_cast<std::size_t>(
      std::count(f.line_kinds.begin(), f.line_kinds.end(), LineKind::comment));
  f.blank_lines = static_cast<std::size_t>(
      std::count(f.line_kinds.begin(), f.line_kinds.end(), LineKind::blank));
  return f;
}

bool is_valid_utf8(std::string_view bytes) {
  const auto *p = reinterpret_cast<const unsigned char *>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = p[i];
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= n)
      return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((p[i + k] & 0xC0) != 0x80)
        return false;
      cp = (cp << 6) | (p[i + k] & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += extra + 1;
  }
  return true;
}

std::vector<SourceFile> scan_tree(const std::filesystem::path &root,
                                  DiagnosticLog &log) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw InputError("not a readable directory: " + root.string());

  std::vector<fs::path> paths;
  fs::recursive_directory_iterator it(
      root, fs::directory_options::skip_permission_denied, ec);
  if (ec)
    throw InputError("cannot read directory " + root.string() + ": " +
                     ec.message());
  const fs::recursive_directory_iterator end;
  while (it != end) {
    std::error_code fec;
    if (it->is_regular_file(fec) && it->path().extension() == ".java")
      paths.push_back(it->path());
    it.increment(ec);
    if (ec) {
      log.push_back({Severity::warn, root.string(),
                     "directory walk stopped early: " + ec.message()});
      break;
    }
  }
  std::sort(paths.begin(), paths.end());

  std::vector<SourceFile> files;
  files.reserve(paths.size());
  for (const auto &p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
      log.push_back({Severity::warn, p.string(), "unreadable file, skipped"});
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = std::move(ss).str();
    if (!is_valid_utf8(text)) {
      log.push_back({Severity::warn, p.string(), "not valid UTF-8, skipped"});
      continue;
    }
    if (text.starts_with("\xEF\xBB\xBF"))
      text.erase(0, 3);
    files.push_back(make_source_file(p, std::move(text)));
  }
  return files;
}

} // namespace sysmap

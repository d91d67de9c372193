#pragma once

#include <filesystem>

#include "sysmap/bundle.hpp"
#include "sysmap/pipeline.hpp"

namespace sysmap::testing {

inline std::filesystem::path fixture_dir() { return SYSMAP_FIXTURE_DIR; }
inline std::filesystem::path fixture_corpus() { return fixture_dir() / "corpus"; }

// Single-version bundle of the fixture corpus, without timestamp.
inline CityBundle fixture_bundle(const LayoutConfig &layout = {}) {
  DiagnosticLog log;
  CityBundle b;
  b.project_name = "fixture";
  b.tool_version = "test";
  b.snapshots.push_back(analyze_version("1.0", fixture_corpus(), layout, log));
  b.evolution = build_report(b.snapshots);
  return b;
}

} // namespace sysmap::testing

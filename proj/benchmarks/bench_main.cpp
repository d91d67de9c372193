#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "sysmap/city.hpp"
#include "sysmap/evolution.hpp"
#include "sysmap/metrics.hpp"
#include "sysmap/project.hpp"

using namespace sysmap;

namespace {

// A class of roughly `methods * 4` lines with fields, branches and
// references to its neighbours.
std::string synthetic_class(int k, int n, int methods) {
  std::string s = "package gen.p" + std::to_string(k % 20) + ";\n\nimport java.util.*;\n\n";
  s += "public class G" + std::to_string(k);
  if (k > 0)
    s += " extends G" + std::to_string(k / 2);
  s += " {\n  private List<G" + std::to_string((k + 7) % n) + "> peers = new ArrayList<>();\n";
  for (int f = 0; f < methods; ++f) {
    s += "  int f" + std::to_string(f) + ";\n";
    s += "  // method " + std::to_string(f) + "\n";
    s += "  int m" + std::to_string(f) + "(int a) {\n    if (a > f" + std::to_string(f) +
         " && a < 9) { return f" + std::to_string(f) + "; }\n";
    s += "    for (G" + std::to_string((k + f) % n) + " g : peers) a += g.hashCode();\n";
    s += "    return a > 0 ? a : -a;\n  }\n";
  }
  return s + "}\n";
}

std::vector<SourceFile> synthetic_files(int n) {
  std::vector<SourceFile> files;
  for (int k = 0; k < n; ++k)
    files.push_back(make_source_file("G" + std::to_string(k) + ".java", synthetic_class(k, n, 10)));
  return files;
}

void BM_ParseUnit(benchmark::State &state) {
  const SourceFile f = make_source_file("G.java", synthetic_class(3, 100, static_cast<int>(state.range(0))));
  for (auto _ : state)
    benchmark::DoNotOptimize(parse_unit(f));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * f.text.size()));
}
BENCHMARK(BM_ParseUnit)->Arg(10)->Arg(100);

void BM_BuildProject(benchmark::State &state) {
  const auto files = synthetic_files(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    DiagnosticLog log;
    benchmark::DoNotOptimize(build_project(files, "v", log, static_cast<unsigned>(state.range(1))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildProject)->Args({1000, 1})->Args({1000, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_ComputeAll(benchmark::State &state) {
  DiagnosticLog log;
  const auto project = build_project(synthetic_files(static_cast<int>(state.range(0))), "v", log);
  for (auto _ : state)
    benchmark::DoNotOptimize(compute_all(project));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComputeAll)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

std::vector<ClassMetrics> random_metrics(std::size_t n, std::vector<std::string> &packages) {
  std::mt19937 rng(1);
  packages.clear();
  for (int p = 0; p < 40; ++p)
    packages.push_back("org.p" + std::to_string(p));
  std::vector<ClassMetrics> ms(n);
  for (std::size_t i = 0; i < n; ++i) {
    ms[i].qualified_name = packages[rng() % packages.size()] + ".C" + std::to_string(i);
    ms[i].loc = 1 + rng() % 800;
    ms[i].wmc = rng() % 60;
    ms[i].cbo = rng() % 20;
  }
  return ms;
}

void BM_BuildCity(benchmark::State &state) {
  std::vector<std::string> packages;
  const auto ms = random_metrics(static_cast<std::size_t>(state.range(0)), packages);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_city("v", ms, packages, LayoutConfig{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildCity)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State &state) {
  std::vector<std::string> packages;
  const auto ms = random_metrics(static_cast<std::size_t>(state.range(0)), packages);
  for (auto _ : state)
    benchmark::DoNotOptimize(detect("v", ms));
}
BENCHMARK(BM_Detect)->Arg(1000);

} // namespace
BENCHMARK_MAIN();

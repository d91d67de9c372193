#include "sysmap/bundle.hpp"

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fcntl.h>
#include <unistd.h>

#include <json.hpp>

#include "sysmap/diagnostics.hpp"

namespace sysmap {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

// ---- serialization ------------------------------------------------------

ojson point_json(const Point2 &p) {
  return ojson{{"x", p.x.units()}, {"z", p.z.units()}};
}

ojson aggregates_json(const VersionAggregates &a) {
  return ojson{{"packageCount", a.package_count},
               {"classCount", a.class_count},
               {"totalLoc", a.total_loc},
               {"totalWmc", a.total_wmc}};
}

ojson class_json(const ClassMetrics &m) {
  return ojson{{"qualifiedName", m.qualified_name},
               {"loc", m.loc},
               {"commentPercentage", m.comment_percentage},
               {"cbo", m.cbo},
               {"lcom", m.lcom},
               {"wmc", m.wmc},
               {"noc", m.noc},
               {"dit", m.dit}};
}

ojson city_json(const CityModel &city) {
  ojson plots = ojson::array();
  for (const auto &p : city.plots) {
    ojson buildings = ojson::array();
    for (const auto &b : p.buildings)
      buildings.push_back(ojson{{"classRef", b.class_ref},
                                {"baseSide", b.base_side.units()},
                                {"height", b.height.units()},
                                {"position", point_json(b.position)},
                                {"colorFactor", b.color_factor}});
    plots.push_back(ojson{{"packageName", p.package_name},
                          {"origin", point_json(p.origin)},
                          {"width", p.width.units()},
                          {"depth", p.depth.units()},
                          {"buildings", std::move(buildings)}});
  }
  return ojson{{"groundWidth", city.ground_width.units()},
               {"groundDepth", city.ground_depth.units()},
               {"plots", std::move(plots)}};
}

ojson evolution_json(const EvolutionReport &r) {
  ojson versions = ojson::array();
  for (const auto &v : r.versions) {
    ojson entry{{"versionLabel", v.version_label}};
    entry.update(aggregates_json(v));
    versions.push_back(std::move(entry));
  }
  ojson series = ojson::array();
  for (const auto &c : r.chart_series) {
    ojson values = ojson::object();
    ojson ln = ojson::object();
    ojson zero = ojson::object();
    for (std::size_t k = 0; k < kChartMetricNames.size(); ++k) {
      const std::string key(kChartMetricNames[k]);
      values[key] = c.values[k];
      ln[key] = c.ln_values[k];
      zero[key] = c.zero[k];
    }
    series.push_back(ojson{{"versionLabel", c.version_label},
                           {"values", std::move(values)},
                           {"lnValues", std::move(ln)},
                           {"zeroFlags", std::move(zero)}});
  }
  ojson detections = ojson::array();
  for (const auto &d : r.detections) {
    ojson entry{{"versionLabel", d.version_label}};
    if (d.thresholds) {
      entry["skyscraperHeightLimit"] = d.thresholds->skyscraper_height_limit;
      entry["heavyBaseLimit"] = d.thresholds->heavy_base_limit;
      entry["classCount"] = d.thresholds->class_count;
    } else {
      entry["skyscraperHeightLimit"] = nullptr;
      entry["heavyBaseLimit"] = nullptr;
      entry["classCount"] = 0;
    }
    entry["skyscrapers"] = d.skyscrapers;
    entry["heavyClasses"] = d.heavy_classes;
    detections.push_back(std::move(entry));
  }
  return ojson{{"versions", std::move(versions)},
               {"chartSeries", std::move(series)},
               {"detections", std::move(detections)}};
}

// ---- schema checking ----------------------------------------------------

class Checker {
public:
  [[noreturn]] static void fail(const std::string &where,
                                const std::string &what) {
    throw BundleError((where.empty() ? "/" : where) + ": " + what);
  }

  static const json &member(const json &obj, const std::string &where,
                            const char *key) {
    if (!obj.is_object())
      fail(where, "expected object");
    auto it = obj.find(key);
    if (it == obj.end())
      fail(where + "/" + key, "missing");
    return *it;
  }

  static const json &object(const json &obj, const std::string &where,
                            const char *key) {
    const json &v = member(obj, where, key);
    if (!v.is_object())
      fail(where + "/" + key, "expected object");
    return v;
  }

  static const json &array(const json &obj, const std::string &where,
                           const char *key) {
    const json &v = member(obj, where, key);
    if (!v.is_array())
      fail(where + "/" + key, "expected array");
    return v;
  }

  static std::string string(const json &obj, const std::string &where,
                            const char *key, bool non_empty = false) {
    const json &v = member(obj, where, key);
    if (!v.is_string())
      fail(where + "/" + key, "expected string");
    if (non_empty && v.get_ref<const std::string &>().empty())
      fail(where + "/" + key, "must not be empty");
    return v.get<std::string>();
  }

  static std::size_t count(const json &obj, const std::string &where,
                           const char *key, std::size_t min = 0) {
    const json &v = member(obj, where, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      fail(where + "/" + key, "expected non-negative integer");
    const auto n = v.get<std::size_t>();
    if (n < min)
      fail(where + "/" + key, "must be at least " + std::to_string(min));
    return n;
  }

  static double number(const json &obj, const std::string &where,
                       const char *key, double lo, double hi,
                       bool exclusive_lo = false) {
    const json &v = member(obj, where, key);
    if (!v.is_number())
      fail(where + "/" + key, "expected number");
    const double d = v.get<double>();
    if (d < lo || d > hi || (exclusive_lo && d == lo))
      fail(where + "/" + key, "out of range");
    return d;
  }
};

constexpr double kHuge = 1e15;

void check_point(const json &obj, const std::string &where, const char *key) {
  Checker::object(obj, where, key);
  const std::string p = where + "/" + key;
  Checker::number(obj[key], p, "x", 0, kHuge);
  Checker::number(obj[key], p, "z", 0, kHuge);
}

void check_bundle(const json &root) {
  using C = Checker;
  if (!root.is_object())
    C::fail("", "bundle must be a JSON object");
  if (C::string(root, "", "formatVersion") != kBundleFormatVersion)
    C::fail("/formatVersion", "unsupported format version");
  C::string(root, "", "projectName");
  C::string(root, "", "toolVersion");
  const json &ts = C::member(root, "", "generatedAt");
  if (!ts.is_null() && !ts.is_string())
    C::fail("/generatedAt", "expected string or null");

  const json &snaps = C::array(root, "", "snapshots");
  if (snaps.empty())
    C::fail("/snapshots", "must not be empty");
  std::vector<std::string> labels;
  std::set<std::string> seen_labels;
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    const std::string sp = "/snapshots/" + std::to_string(s);
    const json &snap = snaps[s];
    if (!snap.is_object())
      C::fail(sp, "expected object");
    const std::string label = C::string(snap, sp, "versionLabel", true);
    if (!seen_labels.insert(label).second)
      C::fail(sp + "/versionLabel", "duplicate version label");
    labels.push_back(label);

    const json &agg = C::object(snap, sp, "aggregates");
    const std::string ap = sp + "/aggregates";
    C::count(agg, ap, "packageCount");
    const std::size_t class_count = C::count(agg, ap, "classCount");
    const std::size_t total_loc = C::count(agg, ap, "totalLoc");
    const std::size_t total_wmc = C::count(agg, ap, "totalWmc");

    const json &classes = C::array(snap, sp, "classes");
    std::set<std::string> names;
    std::size_t loc_sum = 0;
    std::size_t wmc_sum = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const std::string cp = sp + "/classes/" + std::to_string(c);
      const json &cls = classes[c];
      const std::string name = C::string(cls, cp, "qualifiedName", true);
      if (!names.insert(name).second)
        C::fail(cp + "/qualifiedName", "duplicate class");
      loc_sum += C::count(cls, cp, "loc", 1);
      C::number(cls, cp, "commentPercentage", 0.0, 100.0);
      C::count(cls, cp, "cbo");
      C::count(cls, cp, "lcom");
      wmc_sum += C::count(cls, cp, "wmc");
      C::count(cls, cp, "noc");
      C::count(cls, cp, "dit");
    }
    if (class_count != classes.size())
      C::fail(ap + "/classCount", "does not match the class list");
    if (total_loc != loc_sum)
      C::fail(ap + "/totalLoc", "does not match the class list");
    if (total_wmc != wmc_sum)
      C::fail(ap + "/totalWmc", "does not match the class list");

    const json &city = C::object(snap, sp, "city");
    const std::string gp = sp + "/city";
    C::number(city, gp, "groundWidth", 0, kHuge, true);
    C::number(city, gp, "groundDepth", 0, kHuge, true);
    const json &plots = C::array(city, gp, "plots");
    std::set<std::string> placed;
    for (std::size_t p = 0; p < plots.size(); ++p) {
      const std::string pp = gp + "/plots/" + std::to_string(p);
      const json &plot = plots[p];
      C::string(plot, pp, "packageName");
      check_point(plot, pp, "origin");
      C::number(plot, pp, "width", 0, kHuge, true);
      C::number(plot, pp, "depth", 0, kHuge, true);
      const json &buildings = C::array(plot, pp, "buildings");
      for (std::size_t b = 0; b < buildings.size(); ++b) {
        const std::string bp = pp + "/buildings/" + std::to_string(b);
        const json &bld = buildings[b];
        const std::string ref = C::string(bld, bp, "classRef", true);
        if (!names.contains(ref))
          C::fail(bp + "/classRef", "no metrics entry for " + ref);
        if (!placed.insert(ref).second)
          C::fail(bp + "/classRef", "class placed twice");
        C::number(bld, bp, "baseSide", 0, kHuge, true);
        C::number(bld, bp, "height", 0, kHuge, true);
        check_point(bld, bp, "position");
        C::number(bld, bp, "colorFactor", 0.0, 1.0);
      }
    }
  }

  const json &evo = C::object(root, "", "evolution");
  const json &versions = C::array(evo, "/evolution", "versions");
  const json &series = C::array(evo, "/evolution", "chartSeries");
  const json &detections = C::array(evo, "/evolution", "detections");
  for (const auto &[arr, key] :
       {std::pair{&versions, "versions"}, std::pair{&series, "chartSeries"},
        std::pair{&detections, "detections"}}) {
    const std::string ep = std::string("/evolution/") + key;
    if (arr->size() != labels.size())
      C::fail(ep, "expected one entry per snapshot");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string ip = ep + "/" + std::to_string(i);
      if (C::string((*arr)[i], ip, "versionLabel") != labels[i])
        C::fail(ip + "/versionLabel", "does not match snapshot order");
    }
  }
  for (std::size_t i = 0; i < versions.size(); ++i) {
    const std::string ip = "/evolution/versions/" + std::to_string(i);
    const json &agg = snaps[i]["aggregates"];
    for (const char *key : {"packageCount", "classCount", "totalLoc", "totalWmc"})
      if (C::count(versions[i], ip, key) != agg[key].get<std::size_t>())
        C::fail(ip + "/" + key, "does not match snapshot aggregates");
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string ip = "/evolution/chartSeries/" + std::to_string(i);
    const json &values = C::object(series[i], ip, "values");
    const json &ln = C::object(series[i], ip, "lnValues");
    const json &zero = C::object(series[i], ip, "zeroFlags");
    for (auto name : kChartMetricNames) {
      const std::string key(name);
      C::count(values, ip + "/values", key.c_str());
      C::number(ln, ip + "/lnValues", key.c_str(), 0.0, 1e6);
      const json &z = C::member(zero, ip + "/zeroFlags", key.c_str());
      if (!z.is_boolean())
        C::fail(ip + "/zeroFlags/" + key, "expected boolean");
    }
  }
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const std::string ip = "/evolution/detections/" + std::to_string(i);
    const json &d = detections[i];
    for (const char *key : {"skyscraperHeightLimit", "heavyBaseLimit"}) {
      const json &v = C::member(d, ip, key);
      if (!v.is_null() && !v.is_number())
        C::fail(ip + "/" + key, "expected number or null");
    }
    C::count(d, ip, "classCount");
    const std::set<std::string> known = [&] {
      std::set<std::string> out;
      for (const auto &cls : snaps[i]["classes"])
        out.insert(cls["qualifiedName"].get<std::string>());
      return out;
    }();
    for (const char *key : {"skyscrapers", "heavyClasses"}) {
      const json &list = C::array(d, ip, key);
      for (std::size_t k = 0; k < list.size(); ++k) {
        if (!list[k].is_string() || !known.contains(list[k].get<std::string>()))
          C::fail(ip + "/" + key + "/" + std::to_string(k),
                  "expected a class of this snapshot");
      }
    }
  }
}

// ---- deserialization (input already checked) ----------------------------

Point2 point_from(const json &j) {
  return {Length::from_units(j["x"].get<double>()),
          Length::from_units(j["z"].get<double>())};
}

VersionAggregates aggregates_from(const std::string &label, const json &j) {
  VersionAggregates a;
  a.version_label = label;
  a.package_count = j["packageCount"].get<std::size_t>();
  a.class_count = j["classCount"].get<std::size_t>();
  a.total_loc = j["totalLoc"].get<std::size_t>();
  a.total_wmc = j["totalWmc"].get<std::size_t>();
  return a;
}

CityBundle bundle_from(const json &root) {
  CityBundle b;
  b.format_version = root["formatVersion"].get<std::string>();
  b.project_name = root["projectName"].get<std::string>();
  b.tool_version = root["toolVersion"].get<std::string>();
  if (root["generatedAt"].is_string())
    b.generated_at = root["generatedAt"].get<std::string>();

  for (const auto &js : root["snapshots"]) {
    VersionSnapshot s;
    s.version_label = js["versionLabel"].get<std::string>();
    s.aggregates = aggregates_from(s.version_label, js["aggregates"]);
    std::map<std::string, std::size_t> index;
    for (const auto &jc : js["classes"]) {
      ClassMetrics m;
      m.qualified_name = jc["qualifiedName"].get<std::string>();
      m.loc = jc["loc"].get<std::size_t>();
      m.comment_percentage = jc["commentPercentage"].get<double>();
      m.cbo = jc["cbo"].get<std::size_t>();
      m.lcom = jc["lcom"].get<std::size_t>();
      m.wmc = jc["wmc"].get<std::size_t>();
      m.noc = jc["noc"].get<std::size_t>();
      m.dit = jc["dit"].get<std::size_t>();
      index.emplace(m.qualified_name, s.classes.size());
      s.classes.push_back(std::move(m));
    }
    const json &jcity = js["city"];
    s.city.version_label = s.version_label;
    s.city.ground_width = Length::from_units(jcity["groundWidth"].get<double>());
    s.city.ground_depth = Length::from_units(jcity["groundDepth"].get<double>());
    for (const auto &jp : jcity["plots"]) {
      Plot p;
      p.package_name = jp["packageName"].get<std::string>();
      p.origin = point_from(jp["origin"]);
      p.width = Length::from_units(jp["width"].get<double>());
      p.depth = Length::from_units(jp["depth"].get<double>());
      for (const auto &jb : jp["buildings"]) {
        Building bld;
        bld.class_ref = jb["classRef"].get<std::string>();
        bld.base_side = Length::from_units(jb["baseSide"].get<double>());
        bld.height = Length::from_units(jb["height"].get<double>());
        bld.position = point_from(jb["position"]);
        bld.color_factor = jb["colorFactor"].get<double>();
        bld.metrics = s.classes[index.at(bld.class_ref)];
        p.buildings.push_back(std::move(bld));
      }
      s.city.plots.push_back(std::move(p));
    }
    b.snapshots.push_back(std::move(s));
  }

  const json &evo = root["evolution"];
  for (const auto &jv : evo["versions"])
    b.evolution.versions.push_back(
        aggregates_from(jv["versionLabel"].get<std::string>(), jv));
  for (const auto &jc : evo["chartSeries"]) {
    ChartEntry e;
    e.version_label = jc["versionLabel"].get<std::string>();
    for (std::size_t k = 0; k < kChartMetricNames.size(); ++k) {
      const std::string key(kChartMetricNames[k]);
      e.values[k] = jc["values"][key].get<std::size_t>();
      e.ln_values[k] = jc["lnValues"][key].get<double>();
      e.zero[k] = jc["zeroFlags"][key].get<bool>();
    }
    b.evolution.chart_series.push_back(std::move(e));
  }
  for (const auto &jd : evo["detections"]) {
    Detection d;
    d.version_label = jd["versionLabel"].get<std::string>();
    if (jd["skyscraperHeightLimit"].is_number() &&
        jd["heavyBaseLimit"].is_number()) {
      Thresholds t;
      t.skyscraper_height_limit = jd["skyscraperHeightLimit"].get<double>();
      t.heavy_base_limit = jd["heavyBaseLimit"].get<double>();
      t.class_count = jd["classCount"].get<std::size_t>();
      d.thresholds = t;
    }
    d.skyscrapers = jd["skyscrapers"].get<std::vector<std::string>>();
    d.heavy_classes = jd["heavyClasses"].get<std::vector<std::string>>();
    b.evolution.detections.push_back(std::move(d));
  }
  return b;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    throw BundleError(std::string("/: malformed JSON (") + e.what() + ")");
  }
}

// Path of the temporary file of the atomic write in progress, for the
// interrupt handler.
char g_pending_temp[4096];
std::atomic<bool> g_pending_set{false};

} // namespace

std::string serialize_bundle(const CityBundle &bundle) {
  ojson snapshots = ojson::array();
  for (const auto &s : bundle.snapshots) {
    ojson classes = ojson::array();
    for (const auto &m : s.classes)
      classes.push_back(class_json(m));
    snapshots.push_back(ojson{{"versionLabel", s.version_label},
                              {"aggregates", aggregates_json(s.aggregates)},
                              {"classes", std::move(classes)},
                              {"city", city_json(s.city)}});
  }
  ojson root{{"formatVersion", bundle.format_version},
             {"projectName", bundle.project_name},
             {"toolVersion", bundle.tool_version},
             {"generatedAt", bundle.generated_at ? ojson(*bundle.generated_at)
                                                 : ojson(nullptr)},
             {"snapshots", std::move(snapshots)},
             {"evolution", evolution_json(bundle.evolution)}};
  return root.dump(2) + "\n";
}

void validate_bundle(std::string_view text) { check_bundle(parse_json(text)); }

CityBundle parse_bundle(std::string_view text) {
  const json root = parse_json(text);
  check_bundle(root);
  return bundle_from(root);
}

CityBundle read_bundle_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw BundleError(path.string() + ": cannot open bundle");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bundle(ss.str());
}

void write_file_atomic(const std::filesystem::path &path,
                       const std::function<void(std::ostream &)> &write) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::string tmpl = (dir / ("." + path.filename().string() + ".tmp-XXXXXX")).string();
  const int fd = ::mkstemp(tmpl.data());
  if (fd < 0)
    throw InputError("cannot create temporary file next to " + path.string() +
                     ": " + std::strerror(errno));
  ::close(fd);
  const fs::path tmp(tmpl);
  if (tmpl.size() < sizeof(g_pending_temp)) {
    std::memcpy(g_pending_temp, tmpl.c_str(), tmpl.size() + 1);
    g_pending_set = true;
  }
  auto discard = [&] {
    g_pending_set = false;
    std::error_code ec;
    fs::remove(tmp, ec);
  };
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
        throw InputError("cannot write " + tmp.string());
      write(out);
      out.flush();
      if (!out)
        throw InputError("write failed for " + tmp.string());
    }
    fs::permissions(tmp, fs::perms::owner_read | fs::perms::owner_write |
                             fs::perms::group_read | fs::perms::others_read);
    fs::rename(tmp, path);
    g_pending_set = false;
  } catch (...) {
    discard();
    throw;
  }
}

void write_bundle_atomic(const CityBundle &bundle,
                         const std::filesystem::path &path) {
  const std::string text = serialize_bundle(bundle);
  write_file_atomic(path, [&](std::ostream &out) { out << text; });
}

void remove_pending_temp_file() noexcept {
  if (g_pending_set.load())
    ::unlink(g_pending_temp);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  ::gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace sysmap

#include "sysmap/city.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "sysmap/diagnostics.hpp"

namespace sysmap {

void LayoutConfig::validate() const {
  auto require = [](bool ok, const char *name) {
    if (!ok)
      throw InputError(std::string("layout setting must be positive: ") + name);
  };
  require(min_loc_for_building > 0, "min_loc_for_building");
  require(unit_per_sqrt_loc > 0, "unit_per_sqrt_loc");
  require(unit_per_wmc > 0, "unit_per_wmc");
  require(min_height > 0, "min_height");
  require(building_gap > 0, "building_gap");
  require(plot_gap > 0, "plot_gap");
}

std::size_t CityModel::building_count() const {
  std::size_t n = 0;
  for (const auto &p : plots)
    n += p.buildings.size();
  return n;
}

double color_for_coupling(std::size_t cbo, std::size_t min_cbo,
                          std::size_t max_cbo) {
  if (max_cbo <= min_cbo)
    return 0.0;
  const std::size_t clamped = std::clamp(cbo, min_cbo, max_cbo);
  return static_cast<double>(clamped - min_cbo) /
         static_cast<double>(max_cbo - min_cbo);
}

Length building_side(std::size_t loc, const LayoutConfig &config) {
  const Length side = Length::from_units(
      std::sqrt(static_cast<double>(loc)) * config.unit_per_sqrt_loc);
  return std::max(side, Length::from_millis(1));
}

Length building_height(std::size_t wmc, const LayoutConfig &config) {
  const double h = std::max(static_cast<double>(wmc) * config.unit_per_wmc,
                            config.min_height);
  return std::max(Length::from_units(h), Length::from_millis(1));
}

namespace {

struct Packing {
  std::vector<Point2> positions;
  Length width;
  Length depth;
};

Packing next_fit(std::span<const PackItem> items, Length gap, Length limit) {
  Packing p;
  p.positions.reserve(items.size());
  Length x = gap;
  Length z = gap;
  Length row_depth;
  bool row_open = false;
  Length max_x;
  for (const auto &item : items) {
    if (row_open && x + item.width + gap > limit) {
      z += row_depth + gap;
      x = gap;
      row_depth = Length();
      row_open = false;
    }
    p.positions.push_back({x, z});
    x += item.width + gap;
    row_depth = std::max(row_depth, item.depth);
    row_open = true;
    max_x = std::max(max_x, x);
  }
  p.width = max_x;
  p.depth = z + row_depth + gap;
  return p;
}

} // namespace

PackResult shelf_pack(std::span<const PackItem> items, Length gap) {
  if (items.empty())
    return {{}, gap * 2, gap * 2};

  std::set<Length> limits;
  Length prefix = gap;
  for (const auto &item : items) {
    prefix += item.width + gap;
    limits.insert(prefix);
  }

  std::optional<Packing> best;
  auto key = [](const Packing &p) {
    return std::make_tuple(std::max(p.width, p.depth).millis(),
                           p.width.millis() * p.depth.millis(),
                           p.depth.millis());
  };
  for (Length limit : limits) {
    Packing candidate = next_fit(items, gap, limit);
    if (!best || key(candidate) < key(*best))
      best = std::move(candidate);
  }
  return {std::move(best->positions), best->width, best->depth};
}

Plot build_plot(const std::string &package_name,
                std::vector<ClassMetrics> metrics, const LayoutConfig &config,
                std::size_t min_cbo, std::size_t max_cbo) {
  Plot plot;
  plot.package_name = package_name;

  std::vector<Building> buildings;
  buildings.reserve(metrics.size());
  for (auto &m : metrics) {
    Building b;
    b.class_ref = m.qualified_name;
    b.base_side = building_side(m.loc, config);
    b.height = building_height(m.wmc, config);
    b.color_factor = color_for_coupling(m.cbo, min_cbo, max_cbo);
    b.metrics = std::move(m);
    buildings.push_back(std::move(b));
  }
  std::sort(buildings.begin(), buildings.end(),
            [](const Building &a, const Building &b) {
              if (a.base_side != b.base_side)
                return a.base_side > b.base_side;
              return a.class_ref < b.class_ref;
            });

  std::vector<PackItem> items;
  items.reserve(buildings.size());
  for (const auto &b : buildings)
    items.push_back({b.base_side, b.base_side, b.class_ref});
  const PackResult packed =
      shelf_pack(items, Length::from_units(config.building_gap));
  for (std::size_t i = 0; i < buildings.size(); ++i)
    buildings[i].position = packed.positions[i];
  plot.buildings = std::move(buildings);
  plot.width = packed.width;
  plot.depth = packed.depth;
  return plot;
}

Plot build_plot(const std::string &package_name,
                std::vector<ClassMetrics> metrics, const LayoutConfig &config) {
  std::size_t lo = 0;
  std::size_t hi = 0;
  if (!metrics.empty()) {
    auto [mn, mx] = std::minmax_element(
        metrics.begin(), metrics.end(),
        [](const ClassMetrics &a, const ClassMetrics &b) { return a.cbo < b.cbo; });
    lo = mn->cbo;
    hi = mx->cbo;
  }
  return build_plot(package_name, std::move(metrics), config, lo, hi);
}

std::string package_of(const std::string &qualified_name,
                       const std::vector<std::string> &packages) {
  std::string best;
  for (const auto &pkg : packages) {
    if (pkg.size() > best.size() && qualified_name.size() > pkg.size() &&
        qualified_name.compare(0, pkg.size(), pkg) == 0 &&
        qualified_name[pkg.size()] == '.')
      best = pkg;
  }
  return best;
}

CityModel build_city(std::string version_label,
                     const std::vector<ClassMetrics> &metrics,
                     const std::vector<std::string> &packages,
                     const LayoutConfig &config) {
  config.validate();
  CityModel city;
  city.version_label = std::move(version_label);

  std::vector<ClassMetrics> sorted = metrics;
  std::sort(sorted.begin(), sorted.end(),
            [](const ClassMetrics &a, const ClassMetrics &b) {
              return a.qualified_name < b.qualified_name;
            });
  std::size_t min_cbo = 0;
  std::size_t max_cbo = 0;
  if (!sorted.empty()) {
    min_cbo = max_cbo = sorted.front().cbo;
    for (const auto &m : sorted) {
      min_cbo = std::min(min_cbo, m.cbo);
      max_cbo = std::max(max_cbo, m.cbo);
    }
  }

  std::map<std::string, std::vector<ClassMetrics>> groups;
  for (const auto &pkg : packages)
    groups[pkg];
  for (const auto &m : sorted) {
    auto &group = groups[package_of(m.qualified_name, packages)];
    if (m.loc >= config.min_loc_for_building)
      group.push_back(m);
  }

  std::vector<Plot> plots;
  plots.reserve(groups.size());
  for (auto &[pkg, group] : groups)
    plots.push_back(build_plot(pkg, std::move(group), config, min_cbo, max_cbo));
  std::sort(plots.begin(), plots.end(), [](const Plot &a, const Plot &b) {
    const auto area_a = a.width.millis() * a.depth.millis();
    const auto area_b = b.width.millis() * b.depth.millis();
    if (area_a != area_b)
      return area_a > area_b;
    return a.package_name < b.package_name;
  });

  std::vector<PackItem> items;
  items.reserve(plots.size());
  for (const auto &p : plots)
    items.push_back({p.width, p.depth, p.package_name});
  const PackResult ground = shelf_pack(items, Length::from_units(config.plot_gap));
  for (std::size_t i = 0; i < plots.size(); ++i)
    plots[i].origin = ground.positions[i];
  city.plots = std::move(plots);
  city.ground_width = ground.width;
  city.ground_depth = ground.depth;
  return city;
}

} // namespace sysmap

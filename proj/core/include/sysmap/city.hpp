#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sysmap/length.hpp"
#include "sysmap/metrics.hpp"

namespace sysmap {

struct LayoutConfig {
  std::size_t min_loc_for_building{10};
  double unit_per_sqrt_loc{1.0};
  double unit_per_wmc{1.0};
  double min_height{0.5};
  double building_gap{1.0};
  double plot_gap{2.0};

  /// Throws InputError unless every field is positive.
  void validate() const;

  friend bool operator==(const LayoutConfig &, const LayoutConfig &) = default;
};

struct Building {
  std::string class_ref;
  Length base_side;
  Length height;
  /// Minimum corner of the footprint, relative to the plot origin.
  Point2 position;
  /// 0 is least coupled (cyan), 1 most coupled (yellow).
  double color_factor{0.0};
  ClassMetrics metrics;

  friend bool operator==(const Building &, const Building &) = default;
};

struct Plot {
  std::string package_name;
  std::vector<Building> buildings;
  /// Minimum corner in ground coordinates.
  Point2 origin;
  Length width;
  Length depth;

  friend bool operator==(const Plot &, const Plot &) = default;
};

struct CityModel {
  std::string version_label;
  Length ground_width;
  Length ground_depth;
  std::vector<Plot> plots;

  std::size_t building_count() const;

  friend bool operator==(const CityModel &, const CityModel &) = default;
};

/// Linear position of `cbo` within [min_cbo, max_cbo]; 0 for a flat range.
double color_for_coupling(std::size_t cbo, std::size_t min_cbo,
                          std::size_t max_cbo);

Length building_side(std::size_t loc, const LayoutConfig &config);
Length building_height(std::size_t wmc, const LayoutConfig &config);

/// Footprint to place; `key` breaks ties between equal sizes.
struct PackItem {
  Length width;
  Length depth;
  std::string key;
};

struct PackResult {
  std::vector<Point2> positions; // in input order
  Length width;
  Length depth;
};

/// Shelf packing of items already sorted largest first.
///
/// Items fill rows left to right, a row closing when the next item would
/// cross the row limit. Every row limit that fits a whole prefix of the
/// items on the first row is tried; the packing whose bounding box has the
/// smallest longer side wins, then the smallest area, then the smallest
/// depth. `gap` separates items from each other and from the border.
PackResult shelf_pack(std::span<const PackItem> items, Length gap);

/// Plot for one package. `metrics` must already exclude classes below the
/// building threshold. `min_cbo`/`max_cbo` give the version's coupling range.
Plot build_plot(const std::string &package_name,
                std::vector<ClassMetrics> metrics, const LayoutConfig &config,
                std::size_t min_cbo, std::size_t max_cbo);

/// Plot with the coupling range taken from `metrics` alone.
Plot build_plot(const std::string &package_name,
                std::vector<ClassMetrics> metrics, const LayoutConfig &config);

/// City for one version. `packages` lists every package of the version;
/// packages without qualifying classes still get an (empty) plot.
CityModel build_city(std::string version_label,
                     const std::vector<ClassMetrics> &metrics,
                     const std::vector<std::string> &packages,
                     const LayoutConfig &config);

/// Package part of a qualified class name, given the known package list.
std::string package_of(const std::string &qualified_name,
                       const std::vector<std::string> &packages);

} // namespace sysmap

#pragma once

// Deliberately broken variants of a valid bundle. Each must be rejected.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sysmap::testing {

struct Corruption {
  std::string name;
  std::function<std::string(const std::string &valid)> apply;
};

inline std::vector<Corruption> bundle_corruptions() {
  using nlohmann::ordered_json;
  auto edit = [](std::function<void(ordered_json &)> f) {
    return [f](const std::string &valid) {
      ordered_json j = ordered_json::parse(valid);
      f(j);
      return j.dump(2);
    };
  };
  auto first_building = [](ordered_json &j) -> ordered_json & {
    for (auto &plot : j["snapshots"][0]["city"]["plots"])
      if (!plot["buildings"].empty())
        return plot["buildings"][0];
    throw std::runtime_error("bundle has no buildings");
  };
  return {
      {"truncated", [](const std::string &v) { return v.substr(0, v.size() / 2); }},
      {"format version", edit([](ordered_json &j) { j["formatVersion"] = "2"; })},
      {"no snapshots", edit([](ordered_json &j) { j.erase("snapshots"); })},
      {"dangling classRef",
       edit([=](ordered_json &j) { first_building(j)["classRef"] = "no.such.Class"; })},
      {"class count mismatch",
       edit([](ordered_json &j) {
         j["snapshots"][0]["aggregates"]["classCount"] =
             j["snapshots"][0]["aggregates"]["classCount"].get<int>() + 1;
       })},
      {"negative loc", edit([](ordered_json &j) { j["snapshots"][0]["classes"][0]["loc"] = -5; })},
      {"comment percentage above 100",
       edit([](ordered_json &j) { j["snapshots"][0]["classes"][0]["commentPercentage"] = 150.0; })},
      {"color factor above 1",
       edit([=](ordered_json &j) { first_building(j)["colorFactor"] = 1.5; })},
      {"plot width not a number",
       edit([](ordered_json &j) { j["snapshots"][0]["city"]["plots"][0]["width"] = "wide"; })},
      {"evolution label mismatch",
       edit([](ordered_json &j) { j["evolution"]["versions"][0]["versionLabel"] = "other"; })},
      {"generatedAt not a string",
       edit([](ordered_json &j) { j["generatedAt"] = 12345; })},
      {"missing city", edit([](ordered_json &j) { j["snapshots"][0].erase("city"); })},
  };
}

} // namespace sysmap::testing

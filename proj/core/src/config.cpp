#include "obmo/config.hpp"

#include <json.hpp>

#include "obmo/dataset.hpp"
#include "obmo/errors.hpp"

namespace obmo {

using nlohmann::json;

double default_iou_threshold(std::string_view class_name) noexcept {
  return class_name == "Car" ? 0.7 : 0.5;
}

double ToolConfig::iou_threshold_for(const std::string& class_name) const {
  const auto it = iou_thresholds.find(class_name);
  return it != iou_thresholds.end() ? it->second : default_iou_threshold(class_name);
}

ScoreStrategy parse_strategy(std::string_view name) {
  if (name == "linear" || name == "Linear") return ScoreStrategy::Linear;
  if (name == "iou" || name == "IoU") return ScoreStrategy::IoU;
  throw ContractError("unknown strategy '" + std::string(name) + "' (expected iou or linear)");
}

std::string_view to_string(ScoreStrategy strategy) noexcept {
  return strategy == ScoreStrategy::Linear ? "linear" : "iou";
}

namespace {

GtBoxSource parse_gt_box(const std::string& name) {
  if (name == "reprojected") return GtBoxSource::Reprojected;
  if (name == "annotated") return GtBoxSource::Annotated;
  throw ContractError("unknown gt_box '" + name + "' (expected reprojected or annotated)");
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ContractError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

ToolConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(0, "config: top level must be an object");

  ToolConfig cfg;
  ObmoConfig& o = cfg.obmo;
  for (const auto& [key, value] : doc.items()) {
    if (key == "delta_z_set") {
      o.delta_z_set = get_as<std::vector<double>>(doc, "delta_z_set");
    } else if (key == "strategy") {
      o.strategy = parse_strategy(get_as<std::string>(doc, "strategy"));
    } else if (key == "c") {
      o.c = get_as<double>(doc, "c");
    } else if (key == "lambda") {
      o.lambda = get_as<double>(doc, "lambda");
    } else if (key == "filter_threshold") {
      o.filter_threshold = get_as<double>(doc, "filter_threshold");
    } else if (key == "gt_box") {
      o.gt_box = parse_gt_box(get_as<std::string>(doc, "gt_box"));
    } else if (key == "classes") {
      if (!value.is_object()) throw ContractError("config key 'classes' must be an object");
      for (const auto& [name, section] : value.items()) {
        ClassOverride override_;
        if (section.contains("delta_z_set")) {
          override_.delta_z_set = get_as<std::vector<double>>(section, "delta_z_set");
        }
        if (section.contains("c")) override_.c = get_as<double>(section, "c");
        o.class_overrides[name] = std::move(override_);
      }
    } else if (key == "iou_threshold") {
      if (!value.is_object()) throw ContractError("config key 'iou_threshold' must be an object");
      for (const auto& [name, t] : value.items()) {
        if (!t.is_number()) throw ContractError("iou_threshold." + name + " must be a number");
        cfg.iou_thresholds[name] = t.get<double>();
      }
    } else {
      throw ContractError("unknown config key '" + key + "'");
    }
  }
  o.validate();
  return cfg;
}

ToolConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

std::string to_json(const ToolConfig& config) {
  const ObmoConfig& o = config.obmo;
  json doc;
  doc["delta_z_set"] = o.delta_z_set;
  doc["strategy"] = std::string(to_string(o.strategy));
  doc["c"] = o.c;
  doc["lambda"] = o.lambda;
  doc["filter_threshold"] = o.filter_threshold;
  doc["gt_box"] = o.gt_box == GtBoxSource::Reprojected ? "reprojected" : "annotated";
  json classes = json::object();
  for (const auto& [name, ov] : o.class_overrides) {
    json section = json::object();
    if (ov.delta_z_set) section["delta_z_set"] = *ov.delta_z_set;
    if (ov.c) section["c"] = *ov.c;
    classes[name] = section;
  }
  doc["classes"] = classes;
  doc["iou_threshold"] = config.iou_thresholds;
  return doc.dump(2) + "\n";
}

}  // namespace obmo

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "obmo/pseudo_label.hpp"

namespace obmo {

double default_iou_threshold(std::string_view class_name) noexcept;

struct ToolConfig {
  ObmoConfig obmo;
  std::map<std::string, double> iou_thresholds{
      {"Car", 0.7}, {"Pedestrian", 0.5}, {"Cyclist", 0.5}};

  double iou_threshold_for(const std::string& class_name) const;
};

// JSON document; every key is optional and missing keys keep their
// defaults:
//   {"delta_z_set": [-0.08, ...], "strategy": "linear"|"iou", "c": 4,
//    "lambda": 1, "filter_threshold": 0, "gt_box": "reprojected"|"annotated",
//    "classes": {"Pedestrian": {"delta_z_set": [...], "c": 2}},
//    "iou_threshold": {"Car": 0.7}}
// Throws ParseError for malformed documents and ContractError for invalid
// values.
ToolConfig parse_config(std::string_view json_text);
ToolConfig load_config(const std::filesystem::path& path);
std::string to_json(const ToolConfig& config);

ScoreStrategy parse_strategy(std::string_view name);
std::string_view to_string(ScoreStrategy strategy) noexcept;

}  // namespace obmo

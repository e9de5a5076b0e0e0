#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obmo/calib.hpp"

namespace obmo {

inline constexpr std::string_view kDontCare = "DontCare";

// One line of a KITTI object label file. Location is the bottom-center of
// the 3D box in camera coordinates (Y down, Z forward).
struct ObjectLabel {
  std::string class_name;
  double truncation = 0.0;
  int occlusion = 0;
  double alpha = 0.0;
  double left = 0.0, top = 0.0, right = 0.0, bottom = 0.0;
  double h = 0.0, w = 0.0, l = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double ry = 0.0;
  std::optional<double> score;

  bool is_dont_care() const noexcept { return class_name == kDontCare; }
  double box_height() const noexcept { return bottom - top; }

  friend bool operator==(const ObjectLabel&, const ObjectLabel&) = default;
};

enum class ScoreStrategy { IoU, Linear };

struct PseudoLabel {
  ObjectLabel base;
  double delta_z = 0.0;
  double quality = 1.0;
  ScoreStrategy strategy = ScoreStrategy::Linear;

  friend bool operator==(const PseudoLabel&, const PseudoLabel&) = default;
};

struct ImageSize {
  double width = 0.0;
  double height = 0.0;
  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

struct FrameAnnotation {
  std::string frame_id;
  std::vector<ObjectLabel> labels;
  CameraIntrinsics calib;
  std::optional<ImageSize> image_size;
};

// Accepts 15-field (ground truth) and 16-field (with score) lines; blank
// lines are skipped. Alpha/ry outside [-pi, pi] are wrapped and a warning is
// appended. DontCare lines are kept verbatim. Throws ParseError.
std::vector<ObjectLabel> parse_labels(std::string_view text,
                                      std::vector<std::string>& warnings);
std::vector<ObjectLabel> parse_labels(std::string_view text);

struct WriteOptions {
  bool with_score = false;  // emit the 16th column, 1.0 where absent
  int precision = 6;        // decimals for every real except truncation
};

// A label that already carries a score always gets its score column, so
// parse_labels(write_labels(L)) == L for any L.
std::string write_labels(const std::vector<ObjectLabel>& labels,
                         const WriteOptions& options = {});

// Ground truth first with quality 1.0, then the pseudo labels with their
// quality, all as 16-field lines. Throws ContractError for quality <= 0.
std::string write_augmented_frame(const std::vector<ObjectLabel>& gt,
                                  const std::vector<PseudoLabel>& pseudo,
                                  int precision = 6);

// Maps an angle into [-pi, pi].
double wrap_angle(double radians) noexcept;

}  // namespace obmo

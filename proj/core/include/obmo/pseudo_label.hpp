#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "obmo/calib.hpp"
#include "obmo/geometry.hpp"
#include "obmo/label_io.hpp"

namespace obmo {

// Which 2D box stands for the ground truth in the IoU score.
enum class GtBoxSource { Reprojected, Annotated };

struct ClassOverride {
  std::optional<std::vector<double>> delta_z_set;
  std::optional<double> c;
};

struct ObmoConfig {
  // Fractional depth offsets; +0.04 moves an object 4% farther away.
  std::vector<double> delta_z_set{-0.08, -0.04, 0.04, 0.08};
  ScoreStrategy strategy = ScoreStrategy::Linear;
  double c = 4.0;  // meters
  double lambda = 1.0;
  double filter_threshold = 0.0;  // exclusive
  GtBoxSource gt_box = GtBoxSource::Reprojected;
  std::map<std::string, ClassOverride> class_overrides;
  // Classes to augment; empty means every class except DontCare.
  std::set<std::string> augment_classes;

  bool augments(const std::string& class_name) const;

  const std::vector<double>& delta_z_for(const std::string& class_name) const;
  double c_for(const std::string& class_name) const;

  // Offsets must be nonzero with |dz| < 1, c > 0, everything finite. An
  // empty offset set is allowed and yields no pseudo labels. Throws
  // ContractError.
  void validate() const;
};

// Moves the object along the ray through its location: Z' = (1 + dz) Z and
// X, Y scaled by the same factor so X/Z and Y/Z hold. Dimensions, yaw and
// alpha are kept; the 2D box is reprojected. dz == 0 returns the label
// untouched. Throws SkipError for Z <= 0, dz <= -1, or a shifted box with a
// corner behind the camera.
ObjectLabel shift_along_frustum(const ObjectLabel& label, double delta_z,
                                const CameraIntrinsics& camera,
                                const std::optional<ImageSize>& image_size = std::nullopt);

// IoU of the projected ground-truth and pseudo boxes, both clipped the same
// way. Throws SkipError when either box cannot be projected.
double iou_label_score(const CameraIntrinsics& camera, const ObjectLabel& gt,
                       const ObjectLabel& pseudo,
                       const std::optional<ImageSize>& image_size = std::nullopt,
                       GtBoxSource gt_box = GtBoxSource::Reprojected);

// 1 - |dz * Z| / c. Negative results mark labels to drop.
double linear_label_score(double z, double delta_z, double c) noexcept;

struct SkippedLabel {
  std::size_t label_index = 0;
  double delta_z = 0.0;
  std::string reason;
};

struct Augmentation {
  std::vector<PseudoLabel> pseudo;   // GT order, then offset order
  std::vector<SkippedLabel> skipped;
  std::size_t dropped = 0;           // scored at or below the threshold
};

// Ground truth is not repeated in the output. DontCare labels are never
// augmented. Per-label failures are collected in `skipped`.
Augmentation generate_pseudo_labels(const FrameAnnotation& frame, const ObmoConfig& cfg);

// L1 between predicted and target quality.
double label_score_loss(double predicted, double target) noexcept;
double total_loss(double baseline, double score_loss, double lambda) noexcept;

}  // namespace obmo

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "obmo/geometry.hpp"
#include "obmo/label_io.hpp"
#include "obmo/pseudo_label.hpp"

namespace obmo {

enum class FamilyMode {
  ScaleAll,      // location and dimensions scaled together
  LocationOnly,  // location scaled, dimensions kept (a pseudo label)
};

struct AmbiguityReport {
  ObjectLabel source;
  std::vector<double> scale_factors;
  std::vector<ObjectLabel> members;
  double max_projection_deviation = 0.0;  // pixels
};

struct AmplificationRow {
  double z = 0.0;
  double scale = 1.0;
  double dim_error = 0.0;
  double depth_error = 0.0;
};

// Largest absolute difference over the four edges.
double projection_deviation(const Box2& a, const Box2& b) noexcept;

// Members carry their projected (unclipped) box as bbox. Throws
// ContractError for Z <= 0 or a non-positive scale, BehindCameraError when a
// member cannot be projected.
AmbiguityReport ambiguous_family(const CameraIntrinsics& camera, const ObjectLabel& label,
                                 std::span<const double> scales,
                                 FamilyMode mode = FamilyMode::ScaleAll);

// Depth and height errors produced by mistaking an object for its copy
// scaled by s. Throws ContractError unless Z, s, H are positive.
AmplificationRow error_amplification(double z, double scale, double height);
std::vector<AmplificationRow> amplification_table(std::span<const double> depths,
                                                  std::span<const double> scales);

struct SweepSummary {
  std::size_t rows = 0;
  double mean_deviation = 0.0;
  double max_deviation = 0.0;
  std::vector<std::string> warnings;
};

inline constexpr const char* kSweepCsvHeader =
    "frame_id,label_index,class,Z,scale,deviation_px,iou_unscaled_dims,"
    "linear_score,iou_score";

// One CSV row per (non-DontCare label, scale), frames in the given order.
// Labels that cannot be projected are skipped with a warning.
SweepSummary ambiguity_sweep(std::span<const FrameAnnotation> frames,
                             std::span<const double> scales, const ObmoConfig& cfg,
                             std::ostream& csv, unsigned jobs = 1);

}  // namespace obmo

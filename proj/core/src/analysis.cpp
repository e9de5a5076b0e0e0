#include "obmo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "obmo/errors.hpp"
#include "obmo/parallel.hpp"
#include "text_util.hpp"

namespace obmo {
namespace {

ObjectLabel scaled_member(const ObjectLabel& label, double s, FamilyMode mode) {
  ObjectLabel m = label;
  m.x *= s;
  m.y *= s;
  m.z *= s;
  if (mode == FamilyMode::ScaleAll) {
    m.h *= s;
    m.w *= s;
    m.l *= s;
  }
  return m;
}

void set_box(ObjectLabel& label, const Box2& box) {
  label.left = box.left;
  label.top = box.top;
  label.right = box.right;
  label.bottom = box.bottom;
}

struct FrameRows {
  std::string csv;
  std::vector<double> deviations;
  std::vector<std::string> warnings;
};

}  // namespace

double projection_deviation(const Box2& a, const Box2& b) noexcept {
  return std::max({std::abs(a.left - b.left), std::abs(a.top - b.top),
                   std::abs(a.right - b.right), std::abs(a.bottom - b.bottom)});
}

AmbiguityReport ambiguous_family(const CameraIntrinsics& camera, const ObjectLabel& label,
                                 std::span<const double> scales, FamilyMode mode) {
  if (!(label.z > 0.0)) throw ContractError("ambiguous_family needs Z > 0");
  AmbiguityReport report;
  report.source = label;
  report.scale_factors.assign(scales.begin(), scales.end());
  const Box2 reference = project_box_aabb(camera, box_of(label));
  for (double s : scales) {
    if (!(s > 0.0)) throw ContractError("scale factors must be positive");
    ObjectLabel member = scaled_member(label, s, mode);
    const Box2 box = project_box_aabb(camera, box_of(member));
    set_box(member, box);
    report.max_projection_deviation =
        std::max(report.max_projection_deviation, projection_deviation(reference, box));
    report.members.push_back(std::move(member));
  }
  return report;
}

AmplificationRow error_amplification(double z, double scale, double height) {
  if (!(z > 0.0) || !(scale > 0.0) || !(height > 0.0)) {
    throw ContractError("error_amplification needs positive Z, s and H");
  }
  // z * s - z rather than z * (s - 1): 1.02 - 1 is not representable and
  // would turn the exact 2 m of the Z = 100 case into 2.0000000000000018.
  return {z, scale, height * scale - height, z * scale - z};
}

std::vector<AmplificationRow> amplification_table(std::span<const double> depths,
                                                  std::span<const double> scales) {
  std::vector<AmplificationRow> rows;
  rows.reserve(depths.size() * scales.size());
  // Height of the average KITTI car.
  constexpr double kCarHeight = 1.53;
  for (double z : depths) {
    for (double s : scales) rows.push_back(error_amplification(z, s, kCarHeight));
  }
  return rows;
}

SweepSummary ambiguity_sweep(std::span<const FrameAnnotation> frames,
                             std::span<const double> scales, const ObmoConfig& cfg,
                             std::ostream& csv, unsigned jobs) {
  for (double s : scales) {
    if (!(s > 0.0)) throw ContractError("scale factors must be positive");
  }
  std::vector<FrameRows> per_frame(frames.size());
  parallel_for(frames.size(), jobs, [&](std::size_t f) {
    const FrameAnnotation& frame = frames[f];
    FrameRows& out = per_frame[f];
    for (std::size_t i = 0; i < frame.labels.size(); ++i) {
      const ObjectLabel& label = frame.labels[i];
      if (label.is_dont_care()) continue;
      try {
        if (!(label.z > 0.0)) throw BehindCameraError("Z <= 0");
        const Box2 reference = project_box_aabb(frame.calib, box_of(label));
        const double c = cfg.c_for(label.class_name);
        std::string rows;
        std::vector<double> devs;
        for (double s : scales) {
          const Box2 exact = project_box_aabb(frame.calib, box_of(scaled_member(label, s, FamilyMode::ScaleAll)));
          const ObjectLabel variant = scaled_member(label, s, FamilyMode::LocationOnly);
          const Box2 variant_box = project_box_aabb(frame.calib, box_of(variant));
          const double deviation = projection_deviation(reference, exact);
          const double dz = s - 1.0;
          const double iou_score =
              iou_label_score(frame.calib, label, variant, frame.image_size, cfg.gt_box);
          rows += frame.frame_id + ',' + std::to_string(i) + ',' + label.class_name + ',' +
                  detail::format_general(label.z) + ',' + detail::format_general(s) + ',' +
                  detail::format_general(deviation, 6) + ',' +
                  detail::format_general(aabb_iou(reference, variant_box)) + ',' +
                  detail::format_general(linear_label_score(label.z, dz, c)) + ',' +
                  detail::format_general(iou_score) + '\n';
          devs.push_back(deviation);
        }
        out.csv += rows;
        out.deviations.insert(out.deviations.end(), devs.begin(), devs.end());
      } catch (const Error& e) {
        out.warnings.push_back(frame.frame_id + " label " + std::to_string(i) +
                               " skipped: " + e.what());
      }
    }
  });

  SweepSummary summary;
  csv << kSweepCsvHeader << '\n';
  double total = 0.0;
  for (auto& rows : per_frame) {
    csv << rows.csv;
    for (double d : rows.deviations) {
      total += d;
      summary.max_deviation = std::max(summary.max_deviation, d);
    }
    summary.rows += rows.deviations.size();
    for (auto& w : rows.warnings) summary.warnings.push_back(std::move(w));
  }
  if (summary.rows > 0) summary.mean_deviation = total / static_cast<double>(summary.rows);
  return summary;
}

}  // namespace obmo

#include "obmo/pseudo_label.hpp"

#include <cmath>

#include "obmo/errors.hpp"

namespace obmo {

const std::vector<double>& ObmoConfig::delta_z_for(const std::string& class_name) const {
  const auto it = class_overrides.find(class_name);
  if (it != class_overrides.end() && it->second.delta_z_set) return *it->second.delta_z_set;
  return delta_z_set;
}

double ObmoConfig::c_for(const std::string& class_name) const {
  const auto it = class_overrides.find(class_name);
  if (it != class_overrides.end() && it->second.c) return *it->second.c;
  return c;
}

bool ObmoConfig::augments(const std::string& class_name) const {
  return class_name != kDontCare &&
         (augment_classes.empty() || augment_classes.contains(class_name));
}

namespace {

void validate_offsets(const std::vector<double>& offsets, const std::string& where) {
  for (double dz : offsets) {
    if (!std::isfinite(dz) || dz == 0.0 || std::abs(dz) >= 1.0) {
      throw ContractError(where + ": depth offset " + std::to_string(dz) +
                          " must be nonzero with |dz| < 1");
    }
  }
}

void validate_c(double c, const std::string& where) {
  if (!std::isfinite(c) || !(c > 0.0)) {
    throw ContractError(where + ": c must be positive, got " + std::to_string(c));
  }
}

}  // namespace

void ObmoConfig::validate() const {
  validate_offsets(delta_z_set, "delta_z_set");
  validate_c(c, "c");
  if (!std::isfinite(lambda)) throw ContractError("lambda must be finite");
  if (!std::isfinite(filter_threshold)) throw ContractError("filter_threshold must be finite");
  for (const auto& [name, o] : class_overrides) {
    if (o.delta_z_set) validate_offsets(*o.delta_z_set, "classes." + name + ".delta_z_set");
    if (o.c) validate_c(*o.c, "classes." + name + ".c");
  }
}

ObjectLabel shift_along_frustum(const ObjectLabel& label, double delta_z,
                                const CameraIntrinsics& camera,
                                const std::optional<ImageSize>& image_size) {
  if (!(label.z > 0.0)) throw SkipError("object depth " + std::to_string(label.z) + " is not positive");
  if (!(delta_z > -1.0)) throw SkipError("depth offset must exceed -1");
  if (delta_z == 0.0) return label;

  // Scaling X, Y, Z by one factor keeps X/Z and Y/Z, so the location stays on
  // its viewing ray and the observation angle alpha does not change.
  const double factor = 1.0 + delta_z;
  ObjectLabel shifted = label;
  shifted.z = label.z * factor;
  shifted.x = label.x * factor;
  shifted.y = label.y * factor;
  try {
    const Box2 box = project_box_aabb(camera, box_of(shifted), image_size);
    shifted.left = box.left;
    shifted.top = box.top;
    shifted.right = box.right;
    shifted.bottom = box.bottom;
  } catch (const BehindCameraError& e) {
    throw SkipError(std::string("shifted box: ") + e.what());
  }
  return shifted;
}

double iou_label_score(const CameraIntrinsics& camera, const ObjectLabel& gt,
                       const ObjectLabel& pseudo, const std::optional<ImageSize>& image_size,
                       GtBoxSource gt_box) {
  try {
    const Box2 gt_2d = gt_box == GtBoxSource::Annotated
                           ? box2d_of(gt)
                           : project_box_aabb(camera, box_of(gt), image_size);
    const Box2 pseudo_2d = project_box_aabb(camera, box_of(pseudo), image_size);
    return aabb_iou(gt_2d, pseudo_2d);
  } catch (const BehindCameraError& e) {
    throw SkipError(e.what());
  }
}

double linear_label_score(double z, double delta_z, double c) noexcept {
  return 1.0 - std::abs(delta_z * z) / c;
}

Augmentation generate_pseudo_labels(const FrameAnnotation& frame, const ObmoConfig& cfg) {
  cfg.validate();
  Augmentation out;
  for (std::size_t i = 0; i < frame.labels.size(); ++i) {
    const ObjectLabel& gt = frame.labels[i];
    if (!cfg.augments(gt.class_name)) continue;
    const auto& offsets = cfg.delta_z_for(gt.class_name);
    const double c = cfg.c_for(gt.class_name);
    for (double dz : offsets) {
      try {
        PseudoLabel p;
        p.base = shift_along_frustum(gt, dz, frame.calib, frame.image_size);
        p.delta_z = dz;
        p.strategy = cfg.strategy;
        p.quality = cfg.strategy == ScoreStrategy::Linear
                        ? linear_label_score(gt.z, dz, c)
                        : iou_label_score(frame.calib, gt, p.base, frame.image_size, cfg.gt_box);
        if (!(p.quality > cfg.filter_threshold)) {
          ++out.dropped;
          continue;
        }
        out.pseudo.push_back(std::move(p));
      } catch (const SkipError& e) {
        out.skipped.push_back({i, dz, e.what()});
      }
    }
  }
  return out;
}

double label_score_loss(double predicted, double target) noexcept {
  return std::abs(predicted - target);
}

double total_loss(double baseline, double score_loss, double lambda) noexcept {
  return baseline + lambda * score_loss;
}

}  // namespace obmo

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "obmo/label_io.hpp"

namespace obmo {

// Ordered so that a label counts for every level at or above its own.
enum class Difficulty { Easy = 0, Moderate = 1, Hard = 2, Ignored = 3 };

struct DifficultyThresholds {
  double min_height;  // 2D box height, pixels
  int max_occlusion;
  double max_truncation;
};

// KITTI devkit table for Easy, Moderate, Hard.
inline constexpr std::array<DifficultyThresholds, 3> kDifficultyTable{{
    {40.0, 0, 0.15},
    {25.0, 1, 0.30},
    {25.0, 2, 0.50},
}};

inline constexpr std::array<Difficulty, 3> kEvalLevels{
    Difficulty::Easy, Difficulty::Moderate, Difficulty::Hard};

std::string_view to_string(Difficulty difficulty) noexcept;

Difficulty difficulty_of(const ObjectLabel& label) noexcept;

constexpr bool counts_for(Difficulty label, Difficulty level) noexcept {
  return label != Difficulty::Ignored && label <= level;
}

enum class IouKind { BEV, ThreeD };

enum class DetectionOutcome { TruePositive, FalsePositive, Ignored };

struct MatchedDetection {
  std::size_t det_index = 0;
  double score = 0.0;
  DetectionOutcome outcome = DetectionOutcome::FalsePositive;
  std::optional<std::size_t> gt_index;
  double iou = 0.0;
};

struct Matching {
  std::vector<MatchedDetection> detections;  // descending score, ties by index
  std::size_t num_gt = 0;                    // ground truth counted at this level
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

// Greedy assignment: detections in descending score order (ties by input
// index) take the unmatched ground truth of highest IoU when it reaches
// `threshold`. A match on a ground truth that does not count for `level`
// makes the detection Ignored. Throws ContractError for a detection without
// a score.
Matching match_detections(std::span<const ObjectLabel> dets,
                          std::span<const ObjectLabel> gts, IouKind kind,
                          double threshold, Difficulty level = Difficulty::Hard);

// Score-tagged outcome of a non-ignored detection.
struct PrEvent {
  double score = 0.0;
  bool true_positive = false;
};

inline constexpr std::size_t kRecallPositions = 40;

struct ApCurve {
  double ap = 0.0;  // percent
  // Interpolated precision at recall i/40, i = 1..40.
  std::array<double, kRecallPositions> precision{};
};

// Mean over recall positions 1/40..1 of the best precision reached at
// that recall or beyond, in percent. All detections sharing a score enter
// the curve together. Throws UndefinedApError when num_gt == 0.
ApCurve ap_r40_curve(std::span<const PrEvent> events, std::size_t num_gt);
double ap_r40(std::span<const PrEvent> events, std::size_t num_gt);

struct LevelResult {
  Difficulty difficulty = Difficulty::Easy;
  std::size_t num_gt = 0;
  std::optional<ApCurve> bev;  // absent when no ground truth counts
  std::optional<ApCurve> three_d;
};

struct EvalResult {
  std::string class_name;
  double iou_threshold = 0.0;
  std::size_t frames = 0;
  std::array<LevelResult, 3> levels;
};

struct EvalFrame {
  std::string frame_id;
  std::vector<ObjectLabel> detections;
  std::vector<ObjectLabel> ground_truth;
};

// Only labels of `class_name` take part on either side.
EvalResult evaluate_frames(std::span<const EvalFrame> frames, const std::string& class_name,
                           double iou_threshold, unsigned jobs = 1);

// Reads `<id>.txt` from both directories. Throws FrameMismatchError naming
// every frame present on one side only. When `calib_dir` is given every
// frame must also have a calibration file.
EvalResult evaluate(const std::filesystem::path& det_dir, const std::filesystem::path& gt_dir,
                    const std::optional<std::filesystem::path>& calib_dir,
                    const std::string& class_name, double iou_threshold, unsigned jobs = 1);

std::string to_json(const EvalResult& result);
// recall,difficulty,metric,precision rows.
std::string pr_curve_csv(const EvalResult& result);

}  // namespace obmo

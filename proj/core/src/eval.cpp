#include "obmo/eval.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "obmo/dataset.hpp"
#include "obmo/errors.hpp"
#include "obmo/geometry.hpp"
#include "obmo/parallel.hpp"
#include "text_util.hpp"

namespace obmo {

std::string_view to_string(Difficulty difficulty) noexcept {
  switch (difficulty) {
    case Difficulty::Easy: return "Easy";
    case Difficulty::Moderate: return "Moderate";
    case Difficulty::Hard: return "Hard";
    case Difficulty::Ignored: break;
  }
  return "Ignored";
}

Difficulty difficulty_of(const ObjectLabel& label) noexcept {
  if (label.is_dont_care()) return Difficulty::Ignored;
  const double height = label.box_height();
  for (std::size_t i = 0; i < kDifficultyTable.size(); ++i) {
    const auto& t = kDifficultyTable[i];
    if (height >= t.min_height && label.occlusion <= t.max_occlusion &&
        label.truncation <= t.max_truncation) {
      return kEvalLevels[i];
    }
  }
  return Difficulty::Ignored;
}

Matching match_detections(std::span<const ObjectLabel> dets, std::span<const ObjectLabel> gts,
                          IouKind kind, double threshold, Difficulty level) {
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (!dets[i].score) {
      throw ContractError("detection " + std::to_string(i) + " has no score");
    }
  }
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return *dets[a].score > *dets[b].score;
  });

  std::vector<bool> counted(gts.size());
  std::vector<bool> taken(gts.size(), false);
  Matching m;
  for (std::size_t j = 0; j < gts.size(); ++j) {
    counted[j] = counts_for(difficulty_of(gts[j]), level);
    if (counted[j]) ++m.num_gt;
  }

  const auto iou = [kind](const ObjectLabel& a, const ObjectLabel& b) {
    return kind == IouKind::BEV ? bev_iou(box_of(a).bev(), box_of(b).bev())
                                : iou_3d(box_of(a), box_of(b));
  };

  for (std::size_t d : order) {
    MatchedDetection md;
    md.det_index = d;
    md.score = *dets[d].score;
    std::optional<std::size_t> best;
    double best_iou = -1.0;
    for (std::size_t j = 0; j < gts.size(); ++j) {
      if (taken[j]) continue;
      const double v = iou(dets[d], gts[j]);
      if (v > best_iou) {
        best_iou = v;
        best = j;
      }
    }
    if (best && best_iou >= threshold) {
      taken[*best] = true;
      md.gt_index = best;
      md.iou = best_iou;
      if (counted[*best]) {
        md.outcome = DetectionOutcome::TruePositive;
        ++m.true_positives;
      } else {
        md.outcome = DetectionOutcome::Ignored;
      }
    } else {
      md.outcome = DetectionOutcome::FalsePositive;
      md.iou = std::max(best_iou, 0.0);
      ++m.false_positives;
    }
    m.detections.push_back(md);
  }
  for (std::size_t j = 0; j < gts.size(); ++j) {
    if (counted[j] && !taken[j]) ++m.false_negatives;
  }
  return m;
}

ApCurve ap_r40_curve(std::span<const PrEvent> events, std::size_t num_gt) {
  if (num_gt == 0) throw UndefinedApError("AP is undefined without ground truth");
  std::vector<PrEvent> sorted(events.begin(), events.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const PrEvent& a, const PrEvent& b) { return a.score > b.score; });

  // One operating point per distinct score threshold.
  struct Point {
    std::size_t tp;
    double precision;
  };
  std::vector<Point> points;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    (sorted[i].true_positive ? tp : fp) += 1;
    if (i + 1 == sorted.size() || sorted[i + 1].score != sorted[i].score) {
      points.push_back({tp, static_cast<double>(tp) / static_cast<double>(tp + fp)});
    }
  }
  // Best precision at this point or any later (higher recall) one.
  for (std::size_t i = points.size(); i-- > 1;) {
    points[i - 1].precision = std::max(points[i - 1].precision, points[i].precision);
  }

  ApCurve curve;
  double sum = 0.0;
  std::size_t p = 0;
  for (std::size_t r = 1; r <= kRecallPositions; ++r) {
    // recall >= r/40  <=>  tp * 40 >= r * num_gt
    while (p < points.size() && points[p].tp * kRecallPositions < r * num_gt) ++p;
    const double precision = p < points.size() ? points[p].precision : 0.0;
    curve.precision[r - 1] = precision;
    sum += precision;
  }
  curve.ap = 100.0 * sum / static_cast<double>(kRecallPositions);
  return curve;
}

double ap_r40(std::span<const PrEvent> events, std::size_t num_gt) {
  return ap_r40_curve(events, num_gt).ap;
}

namespace {

std::vector<ObjectLabel> of_class(const std::vector<ObjectLabel>& labels, const std::string& name) {
  std::vector<ObjectLabel> out;
  std::copy_if(labels.begin(), labels.end(), std::back_inserter(out),
               [&](const ObjectLabel& l) { return l.class_name == name; });
  return out;
}

// [level][kind]
struct FrameMatches {
  std::array<std::array<Matching, 2>, 3> m;
};

}  // namespace

EvalResult evaluate_frames(std::span<const EvalFrame> frames, const std::string& class_name,
                           double iou_threshold, unsigned jobs) {
  std::vector<FrameMatches> per_frame(frames.size());
  parallel_for(frames.size(), jobs, [&](std::size_t f) {
    const auto dets = of_class(frames[f].detections, class_name);
    const auto gts = of_class(frames[f].ground_truth, class_name);
    for (std::size_t lv = 0; lv < kEvalLevels.size(); ++lv) {
      per_frame[f].m[lv][0] = match_detections(dets, gts, IouKind::BEV, iou_threshold, kEvalLevels[lv]);
      per_frame[f].m[lv][1] = match_detections(dets, gts, IouKind::ThreeD, iou_threshold, kEvalLevels[lv]);
    }
  });

  EvalResult result;
  result.class_name = class_name;
  result.iou_threshold = iou_threshold;
  result.frames = frames.size();
  for (std::size_t lv = 0; lv < kEvalLevels.size(); ++lv) {
    LevelResult& level = result.levels[lv];
    level.difficulty = kEvalLevels[lv];
    for (std::size_t kind = 0; kind < 2; ++kind) {
      std::vector<PrEvent> events;
      std::size_t num_gt = 0;
      for (const auto& fm : per_frame) {
        const Matching& m = fm.m[lv][kind];
        num_gt += m.num_gt;
        for (const auto& d : m.detections) {
          if (d.outcome == DetectionOutcome::Ignored) continue;
          events.push_back({d.score, d.outcome == DetectionOutcome::TruePositive});
        }
      }
      level.num_gt = num_gt;
      if (num_gt == 0) continue;
      (kind == 0 ? level.bev : level.three_d) = ap_r40_curve(events, num_gt);
    }
  }
  return result;
}

EvalResult evaluate(const std::filesystem::path& det_dir, const std::filesystem::path& gt_dir,
                    const std::optional<std::filesystem::path>& calib_dir,
                    const std::string& class_name, double iou_threshold, unsigned jobs) {
  const auto det_ids = list_frame_ids(det_dir);
  const auto gt_ids = list_frame_ids(gt_dir);
  if (det_ids != gt_ids) {
    std::vector<std::string> only_det, only_gt;
    std::set_difference(det_ids.begin(), det_ids.end(), gt_ids.begin(), gt_ids.end(),
                        std::back_inserter(only_det));
    std::set_difference(gt_ids.begin(), gt_ids.end(), det_ids.begin(), det_ids.end(),
                        std::back_inserter(only_gt));
    std::string what = "frame sets differ;";
    std::vector<std::string> all;
    if (!only_gt.empty()) {
      what += " missing detections for:";
      for (const auto& id : only_gt) what += " " + id;
    }
    if (!only_det.empty()) {
      what += " no ground truth for:";
      for (const auto& id : only_det) what += " " + id;
    }
    all.insert(all.end(), only_gt.begin(), only_gt.end());
    all.insert(all.end(), only_det.begin(), only_det.end());
    throw FrameMismatchError(what, std::move(all));
  }

  std::vector<EvalFrame> frames(gt_ids.size());
  parallel_for(gt_ids.size(), jobs, [&](std::size_t i) {
    const std::string& id = gt_ids[i];
    if (calib_dir) parse_calibration(read_text_file(*calib_dir / (id + ".txt")));
    frames[i].frame_id = id;
    frames[i].detections = parse_labels(read_text_file(det_dir / (id + ".txt")));
    frames[i].ground_truth = parse_labels(read_text_file(gt_dir / (id + ".txt")));
  });
  return evaluate_frames(frames, class_name, iou_threshold, jobs);
}

std::string to_json(const EvalResult& result) {
  using nlohmann::json;
  json doc;
  doc["class"] = result.class_name;
  doc["iou_threshold"] = result.iou_threshold;
  doc["frames"] = result.frames;
  doc["recall_positions"] = kRecallPositions;
  json levels = json::object();
  for (const auto& level : result.levels) {
    json entry;
    entry["num_gt"] = level.num_gt;
    entry["ap_bev"] = level.bev ? json(level.bev->ap) : json(nullptr);
    entry["ap_3d"] = level.three_d ? json(level.three_d->ap) : json(nullptr);
    if (level.bev) entry["precision_bev"] = level.bev->precision;
    if (level.three_d) entry["precision_3d"] = level.three_d->precision;
    levels[std::string(to_string(level.difficulty))] = entry;
  }
  doc["levels"] = levels;
  return doc.dump(2) + "\n";
}

std::string pr_curve_csv(const EvalResult& result) {
  std::string out = "recall,difficulty,metric,precision\n";
  for (const auto& level : result.levels) {
    for (const auto& [name, curve] : {std::pair{"bev", &level.bev}, std::pair{"3d", &level.three_d}}) {
      if (!*curve) continue;
      for (std::size_t r = 0; r < kRecallPositions; ++r) {
        out += detail::format_general(static_cast<double>(r + 1) / kRecallPositions) + ',' +
               std::string(to_string(level.difficulty)) + ',' + name + ',' +
               detail::format_general((*curve)->precision[r]) + '\n';
      }
    }
  }
  return out;
}

}  // namespace obmo

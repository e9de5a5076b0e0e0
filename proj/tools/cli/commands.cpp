#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "obmo/analysis.hpp"
#include "obmo/dataset.hpp"
#include "obmo/errors.hpp"
#include "obmo/eval.hpp"
#include "obmo/parallel.hpp"
#include "obmo/pseudo_label.hpp"

namespace obmo::cli {
namespace fs = std::filesystem;
namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

void require_dir(const fs::path& dir, const char* what) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw PathError(std::string(what) + " is not a directory: " + dir.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir, ec)) throw PathError("cannot create output directory " + dir.string());
}

void print_elapsed(const CommonOptions& common, Clock::time_point start, std::ostream& out) {
  if (common.deterministic) return;
  const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  out << "elapsed: " << fmt("%.1f", ms) << " ms\n";
}

struct FrameLoad {
  std::optional<FrameAnnotation> frame;
  std::vector<std::string> warnings;
  std::string error;  // parse failure; the frame is unusable
};

// Missing calibration is a warning; malformed text is an error.
FrameLoad try_load(const fs::path& labels_dir, const fs::path& calib_dir, const std::string& id) {
  FrameLoad r;
  try {
    r.frame = load_frame(labels_dir, calib_dir, id, r.warnings);
    for (auto& w : r.warnings) w = id + ": " + w;
  } catch (const PathError& e) {
    r.warnings.push_back(id + ": skipped, " + e.what());
  } catch (const Error& e) {
    r.error = id + ": " + e.what();
  }
  return r;
}

int finish(std::size_t errors, std::size_t warnings) {
  if (errors > 0) return kParseError;
  return warnings > 0 ? kWarnings : kOk;
}

}  // namespace

int cmd_augment(const AugmentOptions& opts, const CommonOptions& common, std::ostream& out,
                std::ostream& err) {
  const auto start = Clock::now();
  opts.config.validate();
  require_dir(opts.calib_dir, "calibration path");
  const auto ids = list_frame_ids(opts.labels_dir);
  ensure_dir(opts.out_dir);

  struct FrameStats {
    bool written = false;
    std::size_t gt = 0, retained = 0, dropped = 0, skipped = 0;
    std::vector<std::string> warnings;
    std::string error;
  };
  std::vector<FrameStats> stats(ids.size());

  parallel_for(ids.size(), common.jobs, [&](std::size_t i) {
    FrameStats& s = stats[i];
    FrameLoad load = try_load(opts.labels_dir, opts.calib_dir, ids[i]);
    s.warnings = std::move(load.warnings);
    s.error = std::move(load.error);
    if (!load.frame) return;
    const FrameAnnotation& frame = *load.frame;
    const Augmentation aug = generate_pseudo_labels(frame, opts.config);
    for (const auto& sk : aug.skipped) {
      s.warnings.push_back(ids[i] + ": label " + std::to_string(sk.label_index) + " dz=" +
                           fmt("%g", sk.delta_z) + " skipped: " + sk.reason);
    }
    write_text_file(opts.out_dir / (ids[i] + ".txt"),
                    write_augmented_frame(frame.labels, aug.pseudo, opts.precision));
    s.written = true;
    s.gt = frame.labels.size();
    s.retained = aug.pseudo.size();
    s.dropped = aug.dropped;
    s.skipped = aug.skipped.size();
  });

  std::size_t written = 0, gt = 0, retained = 0, dropped = 0, skipped = 0, warnings = 0, errors = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const FrameStats& s = stats[i];
    for (const auto& w : s.warnings) err << "warning: " << w << '\n';
    if (!s.error.empty()) err << "error: " << s.error << '\n';
    if (common.verbose && s.written) {
      out << ids[i] << ": gt " << s.gt << ", pseudo " << s.retained << ", dropped " << s.dropped
          << ", skipped " << s.skipped << '\n';
    }
    written += s.written;
    gt += s.gt;
    retained += s.retained;
    dropped += s.dropped;
    skipped += s.skipped;
    warnings += s.warnings.size();
    errors += !s.error.empty();
  }
  out << "frames: " << ids.size() << " (written " << written << ", skipped " << ids.size() - written
      << ")\n"
      << "ground truth labels: " << gt << '\n'
      << "pseudo labels: retained " << retained << ", dropped " << dropped << ", skipped " << skipped
      << '\n'
      << "strategy: " << to_string(opts.config.strategy) << '\n'
      << "warnings: " << warnings << ", errors: " << errors << '\n';
  print_elapsed(common, start, out);
  return finish(errors, warnings);
}

int cmd_analyze(const AnalyzeOptions& opts, const CommonOptions& common, std::ostream& out,
                std::ostream& err) {
  const auto start = Clock::now();
  require_dir(opts.calib_dir, "calibration path");
  const auto ids = list_frame_ids(opts.labels_dir);

  std::vector<FrameLoad> loads(ids.size());
  parallel_for(ids.size(), common.jobs,
               [&](std::size_t i) { loads[i] = try_load(opts.labels_dir, opts.calib_dir, ids[i]); });
  std::vector<FrameAnnotation> frames;
  std::size_t warnings = 0;
  for (auto& load : loads) {
    for (const auto& w : load.warnings) err << "warning: " << w << '\n';
    warnings += load.warnings.size();
    if (!load.error.empty()) {
      err << "warning: skipped unreadable frame " << load.error << '\n';
      ++warnings;
    }
    if (load.frame) frames.push_back(std::move(*load.frame));
  }

  std::ofstream csv(opts.out_csv, std::ios::binary | std::ios::trunc);
  if (!csv) throw PathError("cannot write " + opts.out_csv.string());
  const SweepSummary summary = ambiguity_sweep(frames, opts.scales, opts.config, csv, common.jobs);
  csv.close();
  if (!csv) throw PathError("write failed: " + opts.out_csv.string());
  for (const auto& w : summary.warnings) err << "warning: " << w << '\n';
  warnings += summary.warnings.size();

  out << "ambiguity sweep: " << frames.size() << " frames, " << summary.rows << " rows -> "
      << opts.out_csv.string() << '\n'
      << "projection deviation of exact scaled families: mean " << fmt("%.3e", summary.mean_deviation)
      << " px, max " << fmt("%.3e", summary.max_deviation) << " px\n\n";

  const std::vector<double> depths{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  const std::vector<double> table_scales{1.02, 1.04, 1.08};
  out << "error amplification (H = 1.53 m)\n"
      << "   Z[m]     s   dim_error[m]  depth_error[m]\n";
  for (const auto& row : amplification_table(depths, table_scales)) {
    char line[96];
    std::snprintf(line, sizeof line, "%7.1f  %4.2f  %13.4f  %14.4f\n", row.z, row.scale,
                  row.dim_error, row.depth_error);
    out << line;
  }
  print_elapsed(common, start, out);
  return finish(0, warnings);
}

int cmd_eval(const EvalOptions& opts, const CommonOptions& common, std::ostream& out,
             std::ostream& err) {
  const auto start = Clock::now();
  require_dir(opts.det_dir, "detection path");
  require_dir(opts.gt_dir, "ground-truth path");
  if (opts.calib_dir) require_dir(*opts.calib_dir, "calibration path");
  const EvalResult result =
      evaluate(opts.det_dir, opts.gt_dir, opts.calib_dir, opts.class_name, opts.iou_threshold, common.jobs);

  write_text_file(opts.report, to_json(result));
  if (opts.pr_csv) write_text_file(*opts.pr_csv, pr_curve_csv(result));

  out << "class " << result.class_name << ", IoU threshold " << fmt("%.2f", result.iou_threshold)
      << ", frames " << result.frames << '\n';
  out << "metric        Easy  Moderate      Hard\n";
  const auto row = [&](const char* name, auto member) {
    out << name;
    for (const auto& level : result.levels) {
      const auto& curve = level.*member;
      out << (curve ? fmt("%10.4f", curve->ap) : std::string("       n/a"));
    }
    out << '\n';
  };
  row("AP_BEV|R40", &LevelResult::bev);
  row("AP_3D|R40 ", &LevelResult::three_d);
  out << "ground truth: ";
  for (const auto& level : result.levels) out << to_string(level.difficulty) << ' ' << level.num_gt << "  ";
  out << "\nreport: " << opts.report.string() << '\n';
  print_elapsed(common, start, out);
  (void)err;
  return kOk;
}

int cmd_score(const ScoreOptions& opts, const CommonOptions& common, std::ostream& out,
              std::ostream& err) {
  const ObmoConfig& cfg = opts.config;
  cfg.validate();
  if (opts.z) {
    if (!(*opts.z > 0.0)) throw ContractError("--z must be positive");
    out << "delta_z,linear_score\n";
    for (double dz : cfg.delta_z_set) {
      out << fmt("%g", dz) << ',' << fmt("%.10g", linear_label_score(*opts.z, dz, cfg.c)) << '\n';
    }
    return kOk;
  }
  if (!opts.labels_dir || !opts.calib_dir) {
    throw CLI::ValidationError("score", "give --z, or both --labels and --calib");
  }
  require_dir(*opts.calib_dir, "calibration path");
  const auto ids = list_frame_ids(*opts.labels_dir);

  std::vector<std::string> rows(ids.size());
  std::vector<FrameLoad> loads(ids.size());
  parallel_for(ids.size(), common.jobs, [&](std::size_t i) {
    loads[i] = try_load(*opts.labels_dir, *opts.calib_dir, ids[i]);
    if (!loads[i].frame) return;
    const FrameAnnotation& frame = *loads[i].frame;
    for (std::size_t j = 0; j < frame.labels.size(); ++j) {
      const ObjectLabel& gt = frame.labels[j];
      if (!cfg.augments(gt.class_name)) continue;
      for (double dz : cfg.delta_z_for(gt.class_name)) {
        try {
          const ObjectLabel shifted = shift_along_frustum(gt, dz, frame.calib, frame.image_size);
          const double iou = iou_label_score(frame.calib, gt, shifted, frame.image_size, cfg.gt_box);
          rows[i] += ids[i] + ',' + std::to_string(j) + ',' + gt.class_name + ',' + fmt("%.10g", gt.z) +
                     ',' + fmt("%g", dz) + ',' +
                     fmt("%.10g", linear_label_score(gt.z, dz, cfg.c_for(gt.class_name))) + ',' +
                     fmt("%.10g", iou) + '\n';
        } catch (const SkipError& e) {
          loads[i].warnings.push_back(ids[i] + ": label " + std::to_string(j) + " skipped: " + e.what());
        }
      }
    }
  });

  std::ostringstream csv;
  csv << "frame_id,label_index,class,Z,delta_z,linear_score,iou_score\n";
  std::size_t warnings = 0, errors = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    csv << rows[i];
    for (const auto& w : loads[i].warnings) err << "warning: " << w << '\n';
    warnings += loads[i].warnings.size();
    if (!loads[i].error.empty()) {
      err << "error: " << loads[i].error << '\n';
      ++errors;
    }
  }
  if (opts.out_csv) {
    write_text_file(*opts.out_csv, csv.str());
  } else {
    out << csv.str();
  }
  return finish(errors, warnings);
}

}  // namespace obmo::cli

#include "cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "obmo/errors.hpp"

namespace obmo::cli {
namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Flags shared by the subcommands that build an ObmoConfig.
struct ConfigFlags {
  std::string config_file;
  std::string strategy;
  std::string delta_z;
  std::optional<double> c;
  std::optional<double> lambda;
  std::optional<double> filter_threshold;
  std::string gt_box;
  std::vector<std::string> classes;
  bool delta_z_given = false;

  void add_to(CLI::App& app) {
    app.add_option("--config", config_file, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--strategy", strategy, "Label score strategy")
        ->check(CLI::IsMember({"iou", "linear"}));
    app.add_option("--delta-z", delta_z, "Depth offsets in percent, e.g. -8,-4,4,8 ('none' for no offsets)")
        ->allow_extra_args(false)
        ->each([this](const std::string&) { delta_z_given = true; });
    app.add_option("--c", c, "Linear score scale c in meters");
    app.add_option("--lambda", lambda, "Label score loss weight");
    app.add_option("--filter-threshold", filter_threshold, "Drop pseudo labels scoring at or below this");
    app.add_option("--gt-box", gt_box, "Ground-truth 2D box for the IoU score")
        ->check(CLI::IsMember({"reprojected", "annotated"}));
    app.add_option("--class", classes, "Restrict to these classes");
  }

  // Precedence: flags > config file > defaults.
  ToolConfig resolve() const {
    ToolConfig cfg = config_file.empty() ? ToolConfig{} : load_config(config_file);
    ObmoConfig& o = cfg.obmo;
    if (!strategy.empty()) o.strategy = parse_strategy(strategy);
    if (delta_z_given) {
      o.delta_z_set = parse_percent_list(delta_z);
      // An explicit offset list applies to every class.
      for (auto& [name, ov] : o.class_overrides) ov.delta_z_set.reset();
    }
    if (c) o.c = *c;
    if (lambda) o.lambda = *lambda;
    if (filter_threshold) o.filter_threshold = *filter_threshold;
    if (gt_box == "annotated") o.gt_box = GtBoxSource::Annotated;
    if (gt_box == "reprojected") o.gt_box = GtBoxSource::Reprojected;
    o.augment_classes = {classes.begin(), classes.end()};
    o.validate();
    return cfg;
  }
};

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  const std::string t = trim(text);
  if (t.empty() || t == "none") return values;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw CLI::ValidationError("list", "not a number: '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> parse_percent_list(const std::string& text) {
  auto values = parse_real_list(text);
  for (double& v : values) v /= 100.0;
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frustum-shifted pseudo labels, depth-ambiguity analysis and AP|R40 evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonOptions common;
  app.add_flag("--deterministic", common.deterministic, "Suppress timing lines");
  app.add_flag("-v,--verbose", common.verbose, "Per-frame statistics");
  app.add_option("-j,--jobs", common.jobs, "Worker threads (0 = all cores)");

  AugmentOptions augment;
  ConfigFlags augment_flags;
  auto* aug = app.add_subcommand("augment", "Write augmented label files");
  aug->add_option("--labels", augment.labels_dir, "Ground-truth label directory")->required();
  aug->add_option("--calib", augment.calib_dir, "Calibration directory")->required();
  aug->add_option("--out", augment.out_dir, "Output directory")->required();
  aug->add_option("--precision", augment.precision, "Decimals for reals")->check(CLI::Range(2, 12));
  augment_flags.add_to(*aug);

  AnalyzeOptions analyze;
  ConfigFlags analyze_flags;
  std::string scales;
  auto* ana = app.add_subcommand("analyze", "Depth-ambiguity sweep and error amplification table");
  ana->add_option("--labels", analyze.labels_dir, "Label directory")->required();
  ana->add_option("--calib", analyze.calib_dir, "Calibration directory")->required();
  ana->add_option("--out", analyze.out_csv, "Output CSV")->required();
  ana->add_option("--scales", scales, "Comma-separated scale factors (default 0.96,1.04)");
  analyze_flags.add_to(*ana);

  EvalOptions eval;
  std::optional<double> iou_threshold;
  std::string calib_for_eval;
  std::string pr_csv;
  std::string config_for_eval;
  auto* ev = app.add_subcommand("eval", "AP|R40 for BEV and 3D boxes");
  ev->add_option("--det", eval.det_dir, "Detection label directory")->required();
  ev->add_option("--labels,--gt", eval.gt_dir, "Ground-truth label directory")->required();
  ev->add_option("--calib", calib_for_eval, "Calibration directory (checked for every frame)");
  ev->add_option("--class", eval.class_name, "Class to evaluate");
  ev->add_option("--iou-threshold", iou_threshold, "Match threshold (default 0.7 Car, 0.5 others)");
  ev->add_option("--out", eval.report, "JSON report path");
  ev->add_option("--pr-csv", pr_csv, "Interpolated precision curve CSV");
  ev->add_option("--config", config_for_eval, "JSON configuration file")->check(CLI::ExistingFile);

  ScoreOptions score;
  ConfigFlags score_flags;
  std::string score_labels, score_calib, score_out;
  auto* sc = app.add_subcommand("score", "Label scores for a depth or for every label of a dataset");
  sc->add_option("--z", score.z, "Object depth in meters");
  sc->add_option("--labels", score_labels, "Label directory");
  sc->add_option("--calib", score_calib, "Calibration directory");
  sc->add_option("--out", score_out, "Output CSV (default stdout)");
  score_flags.add_to(*sc);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (aug->parsed()) {
      augment.config = augment_flags.resolve().obmo;
      return cmd_augment(augment, common, out, err);
    }
    if (ana->parsed()) {
      analyze.config = analyze_flags.resolve().obmo;
      if (!scales.empty()) analyze.scales = parse_real_list(scales);
      return cmd_analyze(analyze, common, out, err);
    }
    if (ev->parsed()) {
      const ToolConfig cfg = config_for_eval.empty() ? ToolConfig{} : load_config(config_for_eval);
      eval.iou_threshold = iou_threshold ? *iou_threshold : cfg.iou_threshold_for(eval.class_name);
      if (!calib_for_eval.empty()) eval.calib_dir = calib_for_eval;
      if (!pr_csv.empty()) eval.pr_csv = pr_csv;
      return cmd_eval(eval, common, out, err);
    }
    score.config = score_flags.resolve().obmo;
    if (!score_labels.empty()) score.labels_dir = score_labels;
    if (!score_calib.empty()) score.calib_dir = score_calib;
    if (!score_out.empty()) score.out_csv = score_out;
    return cmd_score(score, common, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PathError& e) {
    err << "error: " << e.what() << '\n';
    return kPathError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kContractViolation;
  } catch (const FrameMismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kEvalError;
  } catch (const UndefinedApError& e) {
    err << "error: " << e.what() << '\n';
    return kEvalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
}

}  // namespace obmo::cli

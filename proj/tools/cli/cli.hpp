#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "obmo/config.hpp"

namespace obmo::cli {

// Process exit codes. Errors take precedence over warnings.
enum ExitCode : int {
  kOk = 0,
  kWarnings = 1,          // finished, but frames or labels were skipped
  kUsage = 2,             // bad flags
  kPathError = 3,         // missing or unreadable input, unwritable output
  kParseError = 4,        // malformed label, calibration or config text
  kContractViolation = 5, // invalid configuration values
  kEvalError = 6,         // frame mismatch or undefined AP
};

struct CommonOptions {
  bool deterministic = false;
  bool verbose = false;
  unsigned jobs = 0;
};

struct AugmentOptions {
  std::filesystem::path labels_dir;
  std::filesystem::path calib_dir;
  std::filesystem::path out_dir;
  ObmoConfig config;
  int precision = 6;
};

struct AnalyzeOptions {
  std::filesystem::path labels_dir;
  std::filesystem::path calib_dir;
  std::filesystem::path out_csv;
  std::vector<double> scales{0.96, 1.04};
  ObmoConfig config;
};

struct EvalOptions {
  std::filesystem::path det_dir;
  std::filesystem::path gt_dir;
  std::optional<std::filesystem::path> calib_dir;
  std::string class_name = "Car";
  double iou_threshold = 0.7;
  std::filesystem::path report = "eval_report.json";
  std::optional<std::filesystem::path> pr_csv;
};

struct ScoreOptions {
  std::optional<double> z;
  std::optional<std::filesystem::path> labels_dir;
  std::optional<std::filesystem::path> calib_dir;
  std::optional<std::filesystem::path> out_csv;
  ObmoConfig config;
};

int cmd_augment(const AugmentOptions& opts, const CommonOptions& common, std::ostream& out,
                std::ostream& err);
int cmd_analyze(const AnalyzeOptions& opts, const CommonOptions& common, std::ostream& out,
                std::ostream& err);
int cmd_eval(const EvalOptions& opts, const CommonOptions& common, std::ostream& out,
             std::ostream& err);
int cmd_score(const ScoreOptions& opts, const CommonOptions& common, std::ostream& out,
              std::ostream& err);

// Parses flags (args excludes the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "-8,-4,4,8" -> {-0.08, -0.04, 0.04, 0.08}; "" or "none" -> {}.
std::vector<double> parse_percent_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

}  // namespace obmo::cli

#include "cli/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "obmo/dataset.hpp"
#include "obmo/label_io.hpp"

namespace obmo::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kMini = fs::path(OBMO_TEST_DATA_DIR) / "mini";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("obmo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path root_;
};

TEST(ParseLists, PercentAndReal) {
  EXPECT_EQ(parse_percent_list("none"), std::vector<double>{});
  EXPECT_EQ(parse_percent_list(""), std::vector<double>{});
  const auto dz = parse_percent_list("-8,-4,4,8");
  ASSERT_EQ(dz.size(), 4u);
  EXPECT_DOUBLE_EQ(dz[0], -0.08);
  EXPECT_DOUBLE_EQ(dz[3], 0.08);
  EXPECT_EQ(parse_real_list("0.96,1.04"), (std::vector<double>{0.96, 1.04}));
}

TEST_F(CliTest, AugmentMiniDataset) {
  const auto r = invoke({"augment", "--labels", (kMini / "label_2").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "a").string(),
                         "--deterministic"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.find("elapsed"), std::string::npos);
  for (const auto& id : list_frame_ids(kMini / "label_2")) {
    const std::string in = read_text_file(kMini / "label_2" / (id + ".txt"));
    const std::string aug = read_text_file(root_ / "a" / (id + ".txt"));
    EXPECT_GE(line_count(aug), line_count(in)) << id;
    // Ground truth comes first, re-serialized with score 1.
    const auto parsed = parse_labels(aug);
    const auto gt = parse_labels(in);
    for (std::size_t i = 0; i < gt.size(); ++i) {
      ObjectLabel expect = gt[i];
      ObjectLabel got = parsed[i];
      ASSERT_TRUE(got.score.has_value());
      EXPECT_EQ(*got.score, 1.0);
      EXPECT_EQ(got.class_name, expect.class_name);
      EXPECT_NEAR(got.z, expect.z, 1e-6);
    }
  }
  // Single car at Z = 50: only the +-4% offsets survive with c = 4.
  const std::string f0 = read_text_file(root_ / "a" / "000000.txt");
  EXPECT_EQ(line_count(f0), 3u);
  const auto labels = parse_labels(f0);
  EXPECT_EQ(*labels[1].score, 0.5);
  EXPECT_EQ(*labels[2].score, 0.5);
}

TEST_F(CliTest, AugmentIsByteIdempotent) {
  const std::vector<std::string> base{"augment", "--labels", (kMini / "label_2").string(),
                                      "--calib", (kMini / "calib").string(), "--deterministic"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", (root_ / "a").string(), "-j", "1"});
  b.insert(b.end(), {"--out", (root_ / "b").string(), "-j", "3"});
  const auto ra = invoke(a);
  const auto rb = invoke(b);
  ASSERT_EQ(ra.code, kOk);
  ASSERT_EQ(rb.code, kOk);
  EXPECT_EQ(ra.out, rb.out);
  for (const auto& id : list_frame_ids(kMini / "label_2")) {
    EXPECT_EQ(read_text_file(root_ / "a" / (id + ".txt")), read_text_file(root_ / "b" / (id + ".txt")));
  }
}

TEST_F(CliTest, AugmentWithoutOffsetsRewritesInput) {
  const auto r = invoke({"augment", "--labels", (kMini / "label_2").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "a").string(),
                         "--delta-z", "none"});
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const auto& id : list_frame_ids(kMini / "label_2")) {
    const auto in = parse_labels(read_text_file(kMini / "label_2" / (id + ".txt")));
    EXPECT_EQ(read_text_file(root_ / "a" / (id + ".txt")), write_labels(in, {.with_score = true}));
  }
}

TEST_F(CliTest, AugmentExplicitOffsetsAndStrategy) {
  const auto r = invoke({"augment", "--labels", (kMini / "label_2").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "a").string(),
                         "--delta-z=-8,8", "--strategy", "iou"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("iou"), std::string::npos);
}

TEST_F(CliTest, AugmentMissingCalibrationWarns) {
  fs::create_directories(root_ / "calib");
  for (const char* id : {"000000", "000001"}) {
    fs::copy_file(kMini / "calib" / (std::string(id) + ".txt"), root_ / "calib" / (std::string(id) + ".txt"));
  }
  const auto r = invoke({"augment", "--labels", (kMini / "label_2").string(), "--calib",
                         (root_ / "calib").string(), "--out", (root_ / "a").string()});
  EXPECT_EQ(r.code, kWarnings);
  EXPECT_TRUE(fs::exists(root_ / "a" / "000001.txt"));
  EXPECT_FALSE(fs::exists(root_ / "a" / "000002.txt"));
}

TEST_F(CliTest, AugmentBadConfigValue) {
  const auto r = invoke({"augment", "--labels", (kMini / "label_2").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "a").string(), "--c", "-1"});
  EXPECT_EQ(r.code, kContractViolation);
}

TEST_F(CliTest, AugmentMalformedLabelIsParseError) {
  fs::create_directories(root_ / "labels");
  write_text_file(root_ / "labels" / "000000.txt", "Car 0 0 nonsense\n");
  const auto r = invoke({"augment", "--labels", (root_ / "labels").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "a").string()});
  EXPECT_EQ(r.code, kParseError);
}

TEST_F(CliTest, AnalyzeAmplificationTable) {
  const auto r = invoke({"analyze", "--labels", (kMini / "label_2").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "sweep.csv").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("  100.0  1.02         0.0306          2.0000"), std::string::npos) << r.out;
  const std::string csv = read_text_file(root_ / "sweep.csv");
  EXPECT_EQ(csv.rfind("frame_id,label_index,class,Z,scale,deviation_px", 0), 0u);
}

TEST_F(CliTest, AnalyzeUnitScaleHasZeroDeviation) {
  const auto r = invoke({"analyze", "--labels", (kMini / "label_2").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "sweep.csv").string(),
                         "--scales", "1.0"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(read_text_file(root_ / "sweep.csv"));
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 9u);
    EXPECT_EQ(cols[5], "0") << line;
  }
  EXPECT_GT(rows, 0u);
}

TEST_F(CliTest, AnalyzeMissingDirectory) {
  const auto r = invoke({"analyze", "--labels", (root_ / "nope").string(), "--calib",
                         (kMini / "calib").string(), "--out", (root_ / "sweep.csv").string()});
  EXPECT_EQ(r.code, kPathError);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"bogus"}).code, kUsage);
  EXPECT_EQ(invoke({"augment", "--labels", "x"}).code, kUsage);
}

TEST_F(CliTest, EvalEchoDetectorScoresHundred) {
  ASSERT_EQ(invoke({"augment", "--labels", (kMini / "label_2").string(), "--calib",
                    (kMini / "calib").string(), "--out", (root_ / "echo").string(), "--delta-z",
                    "none"})
                .code,
            kOk);
  const auto r = invoke({"eval", "--det", (root_ / "echo").string(), "--labels",
                         (kMini / "label_2").string(), "--calib", (kMini / "calib").string(),
                         "--out", (root_ / "report.json").string(), "--pr-csv",
                         (root_ / "pr.csv").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const std::string report = read_text_file(root_ / "report.json");
  EXPECT_NE(report.find("\"ap_bev\": 100.0"), std::string::npos) << report;
  EXPECT_EQ(report.find("\"ap_bev\": 0"), std::string::npos);
  EXPECT_NE(report.find("\"iou_threshold\": 0.7"), std::string::npos);
  EXPECT_TRUE(fs::exists(root_ / "pr.csv"));
}

TEST_F(CliTest, EvalDefaultThresholdFollowsClass) {
  const auto r = invoke({"eval", "--det", (kMini / "det_2").string(), "--labels",
                         (kMini / "label_2").string(), "--class", "Pedestrian", "--out",
                         (root_ / "report.json").string()});
  ASSERT_TRUE(r.code == kOk || r.code == kEvalError) << r.err;
  if (r.code == kOk) {
    EXPECT_NE(read_text_file(root_ / "report.json").find("\"iou_threshold\": 0.5"), std::string::npos);
  }
  const auto car = invoke({"eval", "--det", (kMini / "det_2").string(), "--labels",
                           (kMini / "label_2").string(), "--out", (root_ / "car.json").string()});
  ASSERT_EQ(car.code, kOk) << car.err;
  EXPECT_NE(read_text_file(root_ / "car.json").find("\"iou_threshold\": 0.7"), std::string::npos);
}

TEST_F(CliTest, EvalMissingFrameNamesIt) {
  fs::create_directories(root_ / "det");
  for (const auto& id : list_frame_ids(kMini / "det_2")) {
    if (id == "000004") continue;
    fs::copy_file(kMini / "det_2" / (id + ".txt"), root_ / "det" / (id + ".txt"));
  }
  const auto r = invoke({"eval", "--det", (root_ / "det").string(), "--labels",
                         (kMini / "label_2").string(), "--out", (root_ / "r.json").string()});
  EXPECT_EQ(r.code, kEvalError);
  EXPECT_NE(r.err.find("000004"), std::string::npos) << r.err;
}

TEST_F(CliTest, ScoreAtDepth) {
  const auto r = invoke({"score", "--z", "50"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "delta_z,linear_score\n-0.08,0\n-0.04,0.5\n0.04,0.5\n0.08,0\n");
}

TEST_F(CliTest, ScoreNeedsInput) {
  EXPECT_EQ(invoke({"score"}).code, kUsage);
}

}  // namespace
}  // namespace obmo::cli

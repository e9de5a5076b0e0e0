#include "obmo/label_io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "obmo/errors.hpp"
#include "text_util.hpp"

namespace obmo {
namespace {

constexpr std::size_t kGtFields = 15;
constexpr std::size_t kScoredFields = 16;

void append_line(std::string& out, const ObjectLabel& label, int precision,
                 std::optional<double> score) {
  const auto real = [&](double v) {
    out += ' ';
    out += detail::format_fixed(v, precision);
  };
  out += label.class_name;
  out += ' ';
  out += detail::format_fixed(label.truncation, 2);
  out += ' ';
  out += std::to_string(label.occlusion);
  real(label.alpha);
  real(label.left);
  real(label.top);
  real(label.right);
  real(label.bottom);
  real(label.h);
  real(label.w);
  real(label.l);
  real(label.x);
  real(label.y);
  real(label.z);
  real(label.ry);
  if (score) real(*score);
  out += '\n';
}

}  // namespace

double wrap_angle(double radians) noexcept {
  constexpr double pi = std::numbers::pi;
  if (radians >= -pi && radians <= pi) return radians;
  return std::remainder(radians, 2.0 * pi);
}

std::vector<ObjectLabel> parse_labels(std::string_view text, std::vector<std::string>& warnings) {
  std::vector<ObjectLabel> labels;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = detail::split_whitespace(line);
    if (tokens.empty()) return;
    if (tokens.size() != kGtFields && tokens.size() != kScoredFields) {
      throw ParseError(line_no, "expected 15 or 16 fields, got " + std::to_string(tokens.size()));
    }
    const auto real = [&](std::size_t i) {
      const auto v = detail::parse_double(tokens[i]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(line_no, "field " + std::to_string(i + 1) + " is not a number: '" +
                                      std::string(tokens[i]) + "'");
      }
      return *v;
    };

    ObjectLabel label;
    label.class_name = std::string(tokens[0]);
    label.truncation = real(1);
    const auto occlusion = detail::parse_int(tokens[2]);
    if (!occlusion) {
      throw ParseError(line_no, "occlusion is not an integer: '" + std::string(tokens[2]) + "'");
    }
    label.occlusion = *occlusion;
    label.alpha = real(3);
    label.left = real(4);
    label.top = real(5);
    label.right = real(6);
    label.bottom = real(7);
    label.h = real(8);
    label.w = real(9);
    label.l = real(10);
    label.x = real(11);
    label.y = real(12);
    label.z = real(13);
    label.ry = real(14);
    if (tokens.size() == kScoredFields) label.score = real(15);

    if (!label.is_dont_care()) {
      const double alpha = wrap_angle(label.alpha);
      const double ry = wrap_angle(label.ry);
      if (alpha != label.alpha || ry != label.ry) {
        warnings.push_back("line " + std::to_string(line_no) + ": angle outside [-pi, pi] wrapped");
        label.alpha = alpha;
        label.ry = ry;
      }
    }
    labels.push_back(std::move(label));
  });
  return labels;
}

std::vector<ObjectLabel> parse_labels(std::string_view text) {
  std::vector<std::string> ignored;
  return parse_labels(text, ignored);
}

std::string write_labels(const std::vector<ObjectLabel>& labels, const WriteOptions& options) {
  const int precision = std::max(options.precision, 2);
  std::string out;
  for (const auto& label : labels) {
    std::optional<double> score = label.score;
    if (options.with_score && !score) score = 1.0;
    append_line(out, label, precision, score);
  }
  return out;
}

std::string write_augmented_frame(const std::vector<ObjectLabel>& gt,
                                  const std::vector<PseudoLabel>& pseudo, int precision) {
  precision = std::max(precision, 2);
  std::string out;
  for (const auto& label : gt) append_line(out, label, precision, 1.0);
  for (const auto& p : pseudo) {
    if (!(p.quality > 0.0)) {
      throw ContractError("pseudo label with quality " + std::to_string(p.quality) +
                          " must be filtered before writing");
    }
    append_line(out, p.base, precision, p.quality);
  }
  return out;
}

}  // namespace obmo

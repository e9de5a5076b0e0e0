#include "obmo/calib.hpp"

#include <cmath>
#include <cstdio>

#include "obmo/errors.hpp"
#include "text_util.hpp"

namespace obmo {
namespace {

bool is_auxiliary(std::string_view name) {
  return name == "R0_rect" || name == "R_rect" || name.starts_with("Tr_");
}

std::string format_sci(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  return buf;
}

}  // namespace

CameraIntrinsics::CameraIntrinsics(const Matrix& projection) : p_(projection) {
  if (!(fx() > 0.0) || !(fy() > 0.0) || !std::isfinite(fx()) || !std::isfinite(fy())) {
    throw InvalidIntrinsicsError("focal lengths must be positive (fx=" +
                                 std::to_string(fx()) + ", fy=" + std::to_string(fy()) + ")");
  }
}

CameraIntrinsics CameraIntrinsics::from_focal(double fx, double fy, double cx, double cy) {
  return CameraIntrinsics(Matrix{fx, 0, cx, 0, 0, fy, cy, 0, 0, 0, 1, 0});
}

const CameraIntrinsics& Calibration::p2() const {
  const auto it = cameras.find("P2");
  if (it == cameras.end()) throw MissingCameraError("calibration has no P2 entry");
  return it->second;
}

Calibration parse_calibration(std::string_view text) {
  Calibration calib;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = detail::split_whitespace(line);
    if (tokens.empty()) return;
    std::string_view name = tokens.front();
    if (!name.ends_with(':') || name.size() < 2) {
      throw ParseError(line_no, "expected 'NAME:' prefix");
    }
    name.remove_suffix(1);

    std::vector<double> values;
    values.reserve(tokens.size() - 1);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto v = detail::parse_double(tokens[i]);
      if (!v) throw ParseError(line_no, "non-numeric value '" + std::string(tokens[i]) + "'");
      values.push_back(*v);
    }

    const std::string key(name);
    if (calib.cameras.contains(key) || calib.auxiliary.contains(key)) {
      throw ParseError(line_no, "duplicate entry '" + key + "'");
    }
    if (is_auxiliary(name)) {
      if (values.size() != 9 && values.size() != 12) {
        throw ParseError(line_no, "expected 9 or 12 values for " + key + ", got " +
                                      std::to_string(values.size()));
      }
      calib.auxiliary.emplace(key, std::move(values));
      return;
    }
    if (values.size() != 12) {
      throw ParseError(line_no, "expected 12 values for " + key + ", got " +
                                    std::to_string(values.size()));
    }
    CameraIntrinsics::Matrix m{};
    std::copy(values.begin(), values.end(), m.begin());
    try {
      calib.cameras.emplace(key, CameraIntrinsics(m));
    } catch (const InvalidIntrinsicsError& e) {
      throw InvalidIntrinsicsError(key + " (line " + std::to_string(line_no) + "): " + e.what());
    }
  });
  if (!calib.cameras.contains("P2")) throw MissingCameraError("calibration has no P2 entry");
  return calib;
}

std::string write_calibration(const Calibration& calib) {
  // Merge both maps in name order so the output is canonical.
  std::map<std::string, std::vector<double>> rows;
  for (const auto& [name, cam] : calib.cameras) {
    rows.emplace(name, std::vector<double>(cam.projection().begin(), cam.projection().end()));
  }
  for (const auto& [name, values] : calib.auxiliary) rows.emplace(name, values);

  std::string out;
  for (const auto& [name, values] : rows) {
    out += name;
    out += ':';
    for (double v : values) {
      out += ' ';
      out += format_sci(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace obmo

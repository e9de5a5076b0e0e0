#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace obmo {

// Rectified pinhole camera. Only the left 3x3 block of the projection
// matrix enters the ray geometry; the translation column is kept for
// round-tripping files.
class CameraIntrinsics {
 public:
  using Matrix = std::array<double, 12>;  // 3x4, row-major

  // Throws InvalidIntrinsicsError when fx or fy is not positive.
  explicit CameraIntrinsics(const Matrix& projection);
  static CameraIntrinsics from_focal(double fx, double fy, double cx, double cy);

  double fx() const noexcept { return p_[0]; }
  double fy() const noexcept { return p_[5]; }
  double cx() const noexcept { return p_[2]; }
  double cy() const noexcept { return p_[6]; }
  static constexpr double scale() noexcept { return 1.0; }
  const Matrix& projection() const noexcept { return p_; }
  double at(int row, int col) const noexcept { return p_[row * 4 + col]; }

  friend bool operator==(const CameraIntrinsics&, const CameraIntrinsics&) = default;

 private:
  Matrix p_;
};

// Parsed calibration file. `cameras` holds every 12-value entry except the
// rectification/extrinsic ones (R0_rect, Tr_*), which land in `auxiliary`
// unvalidated.
struct Calibration {
  std::map<std::string, CameraIntrinsics> cameras;
  std::map<std::string, std::vector<double>> auxiliary;

  // The left color camera used by KITTI object labels.
  const CameraIntrinsics& p2() const;

  friend bool operator==(const Calibration&, const Calibration&) = default;
};

// Throws ParseError (with line number), MissingCameraError when no P2
// entry exists, InvalidIntrinsicsError for fx/fy <= 0.
Calibration parse_calibration(std::string_view text);

// One "NAME: v0 ... vN" line per entry, values in 6-significant-digit
// scientific notation.
std::string write_calibration(const Calibration& calib);

}  // namespace obmo

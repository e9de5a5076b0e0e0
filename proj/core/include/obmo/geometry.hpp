#pragma once

#include <array>
#include <optional>

#include "obmo/calib.hpp"
#include "obmo/label_io.hpp"

namespace obmo {

// Camera-frame point; d is depth along the optical axis.
struct Point3 {
  double x = 0.0, y = 0.0, d = 0.0;
  friend bool operator==(const Point3&, const Point3&) = default;
};

struct Pixel {
  double u = 0.0, v = 0.0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

struct Box2 {
  double left = 0.0, top = 0.0, right = 0.0, bottom = 0.0;
  double width() const noexcept { return right - left; }
  double height() const noexcept { return bottom - top; }
  double area() const noexcept { return width() * height(); }
  friend bool operator==(const Box2&, const Box2&) = default;
};

// Ground-plane rectangle: center (x, z), lateral size w, heading size l.
struct BoxBEV {
  double x = 0.0, z = 0.0;
  double w = 0.0, l = 0.0;
  double yaw = 0.0;
};

// Yaw-only 3D box. (x, y, z) is the bottom-face center.
struct Box3 {
  double x = 0.0, y = 0.0, z = 0.0;
  double h = 0.0, w = 0.0, l = 0.0;
  double ry = 0.0;

  BoxBEV bev() const noexcept { return {x, z, w, l, ry}; }
  double volume() const noexcept { return h * w * l; }
};

Box3 box_of(const ObjectLabel& label) noexcept;
Box2 box2d_of(const ObjectLabel& label) noexcept;

// u = fx*x/d + cx, v = fy*y/d + cy. Throws BehindCameraError for d <= 0.
Pixel project_point(const CameraIntrinsics& camera, const Point3& p);

struct RayRatios {
  double x_over_z = 0.0;
  double y_over_z = 0.0;
};
RayRatios ray_ratios(const CameraIntrinsics& camera, const Pixel& px) noexcept;

// KITTI devkit order: bottom face (+l/2,+w/2), (+l/2,-w/2), (-l/2,-w/2),
// (-l/2,+w/2) in the box frame, then the top face (y - h) in the same
// order. At ry = 0 the length runs along +x; ry rotates about +y.
std::array<Point3, 8> box_corners(const Box3& box) noexcept;

// Hull of the eight projected corners, clipped to the image when a size is
// given. Throws BehindCameraError if any corner has d <= 0.
Box2 project_box_aabb(const CameraIntrinsics& camera, const Box3& box,
                      const std::optional<ImageSize>& image_size = std::nullopt);

double aabb_iou(const Box2& a, const Box2& b) noexcept;

// Overlap area of two rotated rectangles (convex clipping).
double bev_intersection_area(const BoxBEV& a, const BoxBEV& b) noexcept;
double bev_iou(const BoxBEV& a, const BoxBEV& b) noexcept;

// BEV overlap times overlap of the vertical extents [y - h, y].
double iou_3d(const Box3& a, const Box3& b) noexcept;

}  // namespace obmo

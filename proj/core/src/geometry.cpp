#include "obmo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "obmo/errors.hpp"

namespace obmo {
namespace {

// Points closer than this to a clipping edge count as on it.
constexpr double kCollinearTolerance = 1e-9;  // m
constexpr double kSliverArea = 1e-12;         // m^2

struct Vec2 {
  double x, z;
};

double cross(const Vec2& a, const Vec2& b) { return a.x * b.z - a.z * b.x; }

double signed_area(const std::vector<Vec2>& poly) {
  double sum = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    sum += p.x * q.z - q.x * p.z;
  }
  return 0.5 * sum;
}

// Counterclockwise footprint in the (x, z) plane.
std::vector<Vec2> footprint(const BoxBEV& box) {
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = 0.5 * box.l;
  const double hw = 0.5 * box.w;
  const double local[4][2] = {{hl, hw}, {hl, -hw}, {-hl, -hw}, {-hl, hw}};
  std::vector<Vec2> poly;
  poly.reserve(4);
  for (const auto& p : local) {
    poly.push_back({c * p[0] + s * p[1] + box.x, -s * p[0] + c * p[1] + box.z});
  }
  if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
  return poly;
}

// Sutherland-Hodgman: clip `subject` by the convex counterclockwise `clip`.
std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const std::vector<Vec2>& clip) {
  std::vector<Vec2> next;
  for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    const Vec2& a = clip[i];
    const Vec2& b = clip[(i + 1) % clip.size()];
    const Vec2 edge{b.x - a.x, b.z - a.z};
    const double len = std::hypot(edge.x, edge.z);
    if (len == 0.0) continue;
    // Signed distance to the left of a->b.
    const auto dist = [&](const Vec2& p) { return cross(edge, {p.x - a.x, p.z - a.z}) / len; };

    next.clear();
    for (std::size_t j = 0; j < subject.size(); ++j) {
      const Vec2& s = subject[j];
      const Vec2& e = subject[(j + 1) % subject.size()];
      const double ds = dist(s);
      const double de = dist(e);
      const bool s_in = ds >= -kCollinearTolerance;
      const bool e_in = de >= -kCollinearTolerance;
      if (e_in) {
        if (!s_in) {
          const double t = ds / (ds - de);
          next.push_back({s.x + t * (e.x - s.x), s.z + t * (e.z - s.z)});
        }
        next.push_back(e);
      } else if (s_in) {
        const double t = ds / (ds - de);
        next.push_back({s.x + t * (e.x - s.x), s.z + t * (e.z - s.z)});
      }
    }
    subject.swap(next);
  }
  return subject;
}

}  // namespace

Box3 box_of(const ObjectLabel& label) noexcept {
  return {label.x, label.y, label.z, label.h, label.w, label.l, label.ry};
}

Box2 box2d_of(const ObjectLabel& label) noexcept {
  return {label.left, label.top, label.right, label.bottom};
}

Pixel project_point(const CameraIntrinsics& camera, const Point3& p) {
  if (!(p.d > 0.0)) {
    throw BehindCameraError("point at depth " + std::to_string(p.d) + " is not in front of the camera");
  }
  return {camera.fx() * p.x / p.d + camera.cx(), camera.fy() * p.y / p.d + camera.cy()};
}

RayRatios ray_ratios(const CameraIntrinsics& camera, const Pixel& px) noexcept {
  return {(px.u - camera.cx()) / camera.fx(), (px.v - camera.cy()) / camera.fy()};
}

std::array<Point3, 8> box_corners(const Box3& box) noexcept {
  const double c = std::cos(box.ry);
  const double s = std::sin(box.ry);
  const double hl = 0.5 * box.l;
  const double hw = 0.5 * box.w;
  const double lx[4] = {hl, hl, -hl, -hl};
  const double lz[4] = {hw, -hw, -hw, hw};
  std::array<Point3, 8> corners;
  for (int i = 0; i < 4; ++i) {
    const double x = c * lx[i] + s * lz[i] + box.x;
    const double z = -s * lx[i] + c * lz[i] + box.z;
    corners[i] = {x, box.y, z};
    corners[i + 4] = {x, box.y - box.h, z};
  }
  return corners;
}

Box2 project_box_aabb(const CameraIntrinsics& camera, const Box3& box,
                      const std::optional<ImageSize>& image_size) {
  const auto corners = box_corners(box);
  Box2 out{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const auto& corner : corners) {
    const Pixel px = project_point(camera, corner);
    out.left = std::min(out.left, px.u);
    out.right = std::max(out.right, px.u);
    out.top = std::min(out.top, px.v);
    out.bottom = std::max(out.bottom, px.v);
  }
  if (image_size) {
    out.left = std::clamp(out.left, 0.0, image_size->width);
    out.right = std::clamp(out.right, 0.0, image_size->width);
    out.top = std::clamp(out.top, 0.0, image_size->height);
    out.bottom = std::clamp(out.bottom, 0.0, image_size->height);
  }
  return out;
}

double aabb_iou(const Box2& a, const Box2& b) noexcept {
  const double iw = std::min(a.right, b.right) - std::max(a.left, b.left);
  const double ih = std::min(a.bottom, b.bottom) - std::max(a.top, b.top);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double bev_intersection_area(const BoxBEV& a, const BoxBEV& b) noexcept {
  if (a.x == b.x && a.z == b.z && a.w == b.w && a.l == b.l && a.yaw == b.yaw) return a.w * a.l;
  const auto poly = clip_convex(footprint(a), footprint(b));
  if (poly.size() < 3) return 0.0;
  const double area = std::abs(signed_area(poly));
  if (area < kSliverArea) return 0.0;
  // Rounding in the clip may overshoot the smaller rectangle slightly.
  return std::min({area, a.w * a.l, b.w * b.l});
}

double bev_iou(const BoxBEV& a, const BoxBEV& b) noexcept {
  const double inter = bev_intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.w * a.l + b.w * b.l - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double iou_3d(const Box3& a, const Box3& b) noexcept {
  const double overlap = std::min(a.y, b.y) - std::max(a.y - a.h, b.y - b.h);
  if (overlap <= 0.0) return 0.0;
  const double area = bev_intersection_area(a.bev(), b.bev());
  if (area <= 0.0) return 0.0;
  const double inter = area * overlap;
  const double uni = a.volume() + b.volume() - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace obmo

#pragma once

// Reference computations that share no code with the library paths they
// check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "obmo/eval.hpp"
#include "obmo/geometry.hpp"

namespace obmo::testing {

// Rectangle in its own frame, with the rotation evaluated once.
struct OracleRect {
  double x, z, half_l, half_w, c, s;
  explicit OracleRect(const BoxBEV& b)
      : x(b.x), z(b.z), half_l(0.5 * b.l), half_w(0.5 * b.w), c(std::cos(b.yaw)), s(std::sin(b.yaw)) {}

  bool contains(double px, double pz) const {
    const double dx = px - x;
    const double dz = pz - z;
    // Inverse of x = c*lx + s*lw, z = -s*lx + c*lw.
    const double lx = c * dx - s * dz;
    const double lw = s * dx + c * dz;
    return std::abs(lx) <= half_l && std::abs(lw) <= half_w;
  }
};

inline bool inside_rect(const BoxBEV& b, double px, double pz) { return OracleRect(b).contains(px, pz); }

// Monte-Carlo IoU: one jittered sample per cell of a side x side grid over
// the joint bounding square (side^2 samples in total).
inline double monte_carlo_bev_iou(const BoxBEV& a, const BoxBEV& b, std::mt19937_64& rng,
                                  std::size_t side = 1000) {
  const double ra = 0.5 * std::hypot(a.w, a.l);
  const double rb = 0.5 * std::hypot(b.w, b.l);
  const double x0 = std::min(a.x - ra, b.x - rb);
  const double x1 = std::max(a.x + ra, b.x + rb);
  const double z0 = std::min(a.z - ra, b.z - rb);
  const double z1 = std::max(a.z + ra, b.z + rb);
  const double cw = (x1 - x0) / static_cast<double>(side);
  const double ch = (z1 - z0) / static_cast<double>(side);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  const OracleRect ra_rect(a), rb_rect(b);
  std::size_t in_a = 0, in_b = 0, in_both = 0;
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = 0; j < side; ++j) {
      const double px = x0 + (static_cast<double>(i) + jitter(rng)) * cw;
      const double pz = z0 + (static_cast<double>(j) + jitter(rng)) * ch;
      const bool ia = ra_rect.contains(px, pz);
      const bool ib = rb_rect.contains(px, pz);
      in_a += ia;
      in_b += ib;
      in_both += ia && ib;
    }
  }
  const std::size_t uni = in_a + in_b - in_both;
  return uni == 0 ? 0.0 : static_cast<double>(in_both) / static_cast<double>(uni);
}

// AP|R40 by brute force: every distinct score is tried as a threshold and
// its precision/recall computed by a full scan; recall positions are
// compared in integers.
inline double enumerate_ap_r40(const std::vector<PrEvent>& events, std::size_t num_gt) {
  struct Op {
    std::size_t tp;
    double precision;
  };
  std::vector<Op> ops;
  for (const PrEvent& t : events) {
    std::size_t tp = 0, n = 0;
    for (const PrEvent& e : events) {
      if (e.score >= t.score) {
        ++n;
        tp += e.true_positive;
      }
    }
    ops.push_back({tp, static_cast<double>(tp) / static_cast<double>(n)});
  }
  double sum = 0.0;
  for (std::size_t r = 1; r <= 40; ++r) {
    double best = 0.0;
    for (const Op& op : ops) {
      if (op.tp * 40 >= r * num_gt) best = std::max(best, op.precision);
    }
    sum += best;
  }
  return sum / 40.0 * 100.0;
}

// Greedy matching written out directly from its definition, for BEV IoU.
struct OracleMatch {
  std::vector<PrEvent> events;
  std::size_t num_gt = 0;
};

inline OracleMatch oracle_match_bev(const std::vector<BoxBEV>& dets, const std::vector<double>& scores,
                                    const std::vector<BoxBEV>& gts, const std::vector<bool>& counted,
                                    double threshold) {
  OracleMatch out;
  for (bool c : counted) out.num_gt += c;
  std::vector<bool> used(dets.size(), false);
  std::vector<bool> taken(gts.size(), false);
  for (std::size_t step = 0; step < dets.size(); ++step) {
    // Highest remaining score, lowest index on ties.
    std::size_t d = dets.size();
    for (std::size_t i = 0; i < dets.size(); ++i) {
      if (!used[i] && (d == dets.size() || scores[i] > scores[d])) d = i;
    }
    used[d] = true;
    std::size_t best = gts.size();
    double best_iou = -1.0;
    for (std::size_t j = 0; j < gts.size(); ++j) {
      if (taken[j]) continue;
      const double v = bev_iou(dets[d], gts[j]);
      if (v > best_iou) {
        best_iou = v;
        best = j;
      }
    }
    if (best < gts.size() && best_iou >= threshold) {
      taken[best] = true;
      if (counted[best]) out.events.push_back({scores[d], true});
    } else {
      out.events.push_back({scores[d], false});
    }
  }
  return out;
}

}  // namespace obmo::testing

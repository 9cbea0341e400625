#include "parafractal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace parafractal {

double parabolic_distance(const SpaceTimePoint& a, const SpaceTimePoint& b) {
  return (a.x - b.x).norm() + std::sqrt(std::abs(a.t - b.t));
}

bool cylinder_contains(const ParabolicCylinder& c, const SpaceTimePoint& p) {
  const double r = c.radius;
  if ((p.x - c.center.x).norm() >= r) return false;
  if (p.t <= c.center.t - r * r || p.t > c.center.t) return false;
  if (c.half && p.x.z() <= 0.0) return false;
  return true;
}

bool cylinders_disjoint(const ParabolicCylinder& a, const ParabolicCylinder& b) {
  const double ra = a.radius, rb = b.radius;
  // Open balls B(xa,ra), B(xb,rb) are disjoint iff the centers are at least
  // ra+rb apart.
  if ((a.center.x - b.center.x).norm() >= ra + rb) return true;
  // Intervals (ta-ra^2, ta] and (tb-rb^2, tb] are disjoint iff one ends
  // before the other begins.
  if (a.center.t <= b.center.t - rb * rb) return true;
  if (b.center.t <= a.center.t - ra * ra) return true;
  return false;
}

ParabolicCylinder dilate(const ParabolicCylinder& c, double factor) {
  if (!(factor > 0.0)) throw NonpositiveFactor("dilate: factor must be positive");
  return ParabolicCylinder{c.center, c.radius * factor, c.half};
}

std::vector<std::size_t> vitali_disjoint_subfamily(
    const std::vector<ParabolicCylinder>& cylinders) {
  if (cylinders.empty()) throw EmptyInput("vitali_disjoint_subfamily: empty family");
  const double r = cylinders.front().radius;
  for (const auto& c : cylinders) {
    if (c.radius != r)
      throw UnequalRadii("vitali_disjoint_subfamily: radii must be equal");
  }

  // Visit by decreasing center time, ties broken by input index.
  std::vector<std::size_t> order(cylinders.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return cylinders[i].center.t > cylinders[j].center.t;
  });

  std::vector<std::size_t> selected;
  for (std::size_t idx : order) {
    bool ok = true;
    for (std::size_t s : selected) {
      if (!cylinders_disjoint(cylinders[idx], cylinders[s])) {
        ok = false;
        break;
      }
    }
    if (ok) selected.push_back(idx);
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace parafractal

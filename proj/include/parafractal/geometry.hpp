#pragma once

#include <Eigen/Dense>
#include <vector>

#include "parafractal/errors.hpp"

namespace parafractal {

/// A point z = (x, t) in space-time.
struct SpaceTimePoint {
  Eigen::Vector3d x{0.0, 0.0, 0.0};
  double t = 0.0;
};

inline SpaceTimePoint make_point(double x1, double x2, double x3, double t) {
  return SpaceTimePoint{Eigen::Vector3d(x1, x2, x3), t};
}

/// Backward-in-time cylinder Q(z,r) = B(x,r) x (t-r^2, t].
/// With half=true the spatial ball is restricted to {x3 > 0} (written Q+).
/// The time interval is half-open at the bottom: the top slice belongs to
/// the cylinder, the bottom one does not.
struct ParabolicCylinder {
  SpaceTimePoint center;
  double radius = 1.0;
  bool half = false;
};

/// Half-ball B+(x,r) = B(x,r) n {x3 > 0} for a center on the plane {x3 = 0}.
struct HalfBall {
  Eigen::Vector3d center{0.0, 0.0, 0.0};
  double radius = 1.0;
};

/// d_p((x,t),(y,s)) = |x-y| + sqrt(|t-s|).
double parabolic_distance(const SpaceTimePoint& a, const SpaceTimePoint& b);

/// Membership test for Q(z,r); honors the (t-r^2, t] time convention and the
/// {x3 > 0} restriction of half cylinders.
bool cylinder_contains(const ParabolicCylinder& c, const SpaceTimePoint& p);

/// Exact disjointness for equal-radius cylinders: the product sets are
/// disjoint iff the spatial balls or the time intervals are.
bool cylinders_disjoint(const ParabolicCylinder& a, const ParabolicCylinder& b);

/// Same center, radius scaled by `factor`; the time depth scales
/// quadratically because it is (factor*r)^2 by construction.
ParabolicCylinder dilate(const ParabolicCylinder& c, double factor);

/// Greedy disjoint subfamily in the Vitali style for an equal-radius family.
/// Candidates are visited by decreasing center time (ties by index), so each
/// rejected cylinder intersects a kept one whose center time is not earlier;
/// that makes every input center lie in the 5-dilate of some kept cylinder.
/// Returns the selected indices in ascending order.
std::vector<std::size_t> vitali_disjoint_subfamily(
    const std::vector<ParabolicCylinder>& cylinders);

}  // namespace parafractal

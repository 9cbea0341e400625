#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "parafractal/errors.hpp"
#include "parafractal/fractal_sets.hpp"

namespace parafractal {

enum class Metric { Euclidean, Parabolic };

/// Finite sample of a set: up to three spatial coordinates plus an optional
/// trailing time coordinate (one column each).
struct PointCloud {
  int spatial_dim = 1;
  bool has_time = false;
  Eigen::MatrixXd coords;  // n x (spatial_dim + has_time)

  int columns() const { return spatial_dim + (has_time ? 1 : 0); }
};

PointCloud make_cloud_1d(const std::vector<double>& xs);
PointCloud make_cloud_2d(const std::vector<std::pair<double, double>>& xys);

struct CoverSample {
  double delta = 0.0;
  double count = 0.0;
};

/// (delta, N(delta)) samples, deltas strictly decreasing, counts
/// non-decreasing as delta decreases.
struct CoverCurve {
  std::vector<CoverSample> samples;
};

CoverCurve make_cover_curve(std::vector<CoverSample> samples);

struct DimensionEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  int n_samples = 0;
};

struct HausdorffSumDiagnostic {
  double alpha = 0.0;
  double scale = 0.0;
  double sum = 0.0;
};

/// Number of occupied half-open lattice boxes, lattice anchored at the
/// origin. Boxes have side delta along every axis; under the parabolic
/// metric the time side is delta^2, mirroring the cylinder family Q(z,delta).
std::uint64_t grid_box_count(const PointCloud& cloud, double delta, Metric metric);

/// Occupied boxes per delta, deltas halving from delta_max down to delta_min
/// (inclusive); halving keeps the lattices nested so counts are monotone.
CoverCurve grid_cover_curve(const PointCloud& cloud, double delta_min,
                            double delta_max, Metric metric);

/// Least squares of log(count) against -log(delta) over samples whose delta
/// lies in [window.first, window.second]. r_squared is 1 for an exact fit
/// (including the degenerate all-equal-counts case).
DimensionEstimate fit_dimension(const CoverCurve& curve,
                                std::pair<double, double> window);

/// Window dropping the two largest and two smallest sampled scales, where
/// saturation biases the slope. Falls back to the full range when too few
/// samples remain.
std::pair<double, double> default_window(const CoverCurve& curve);

/// Sum of diam^alpha over an explicit covering; a diagnostic upper bound on
/// the alpha-dimensional premeasure at that scale.
HausdorffSumDiagnostic hausdorff_sum_over_cover(const std::vector<Interval>& cover,
                                                double alpha);
HausdorffSumDiagnostic hausdorff_sum_over_diameters(
    const std::vector<double>& diameters, double alpha);

}  // namespace parafractal

#include "parafractal/boxcount.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>

namespace parafractal {

namespace {

struct BoxKey {
  std::array<std::int64_t, 4> idx{0, 0, 0, 0};
  bool operator==(const BoxKey&) const = default;
};

struct BoxKeyHash {
  std::size_t operator()(const BoxKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : k.idx) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

void validate_curve(const std::vector<CoverSample>& samples) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].delta > 0.0) || !(samples[i].count > 0.0))
      throw FormatError("cover curve: deltas and counts must be positive");
    if (i > 0) {
      if (!(samples[i].delta < samples[i - 1].delta))
        throw FormatError("cover curve: deltas must be strictly decreasing");
      if (samples[i].count < samples[i - 1].count)
        throw FormatError("cover curve: counts must not decrease with delta");
    }
  }
}

}  // namespace

PointCloud make_cloud_1d(const std::vector<double>& xs) {
  PointCloud c;
  c.spatial_dim = 1;
  c.coords.resize(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    c.coords(static_cast<Eigen::Index>(i), 0) = xs[i];
  return c;
}

PointCloud make_cloud_2d(const std::vector<std::pair<double, double>>& xys) {
  PointCloud c;
  c.spatial_dim = 2;
  c.coords.resize(static_cast<Eigen::Index>(xys.size()), 2);
  for (std::size_t i = 0; i < xys.size(); ++i) {
    c.coords(static_cast<Eigen::Index>(i), 0) = xys[i].first;
    c.coords(static_cast<Eigen::Index>(i), 1) = xys[i].second;
  }
  return c;
}

CoverCurve make_cover_curve(std::vector<CoverSample> samples) {
  validate_curve(samples);
  return CoverCurve{std::move(samples)};
}

std::uint64_t grid_box_count(const PointCloud& cloud, double delta, Metric metric) {
  if (cloud.coords.rows() == 0) throw EmptyCloud("grid_box_count: empty cloud");
  if (!(delta > 0.0)) throw NonpositiveDelta("grid_box_count: delta must be positive");

  const double time_side = metric == Metric::Parabolic ? delta * delta : delta;
  const int cols = cloud.columns();
  std::unordered_set<BoxKey, BoxKeyHash> occupied;
  occupied.reserve(static_cast<std::size_t>(cloud.coords.rows()));
  for (Eigen::Index row = 0; row < cloud.coords.rows(); ++row) {
    BoxKey key;
    for (int c = 0; c < cols; ++c) {
      const bool is_time = cloud.has_time && c == cols - 1;
      const double side = is_time ? time_side : delta;
      key.idx[static_cast<std::size_t>(c)] =
          static_cast<std::int64_t>(std::floor(cloud.coords(row, c) / side));
    }
    occupied.insert(key);
  }
  return occupied.size();
}

CoverCurve grid_cover_curve(const PointCloud& cloud, double delta_min,
                            double delta_max, Metric metric) {
  if (!(delta_min > 0.0) || !(delta_max >= delta_min))
    throw NonpositiveDelta("grid_cover_curve: bad delta range");
  std::vector<CoverSample> samples;
  for (double d = delta_max; d >= delta_min * (1.0 - 1e-12); d *= 0.5) {
    samples.push_back(
        {d, static_cast<double>(grid_box_count(cloud, d, metric))});
  }
  return make_cover_curve(std::move(samples));
}

DimensionEstimate fit_dimension(const CoverCurve& curve,
                                std::pair<double, double> window) {
  const double lo = window.first * (1.0 - 1e-12);
  const double hi = window.second * (1.0 + 1e-12);
  std::vector<double> xs, ys;
  for (const CoverSample& s : curve.samples) {
    if (s.delta < lo || s.delta > hi) continue;
    xs.push_back(-std::log(s.delta));
    ys.push_back(std::log(s.count));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 3) throw WindowTooSmall("fit_dimension: window holds fewer than 3 samples");

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[static_cast<std::size_t>(i)];
    my += ys[static_cast<std::size_t>(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[static_cast<std::size_t>(i)] - mx;
    const double dy = ys[static_cast<std::size_t>(i)] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  DimensionEstimate est;
  est.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  est.intercept = my - est.slope * mx;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[static_cast<std::size_t>(i)] - est.intercept -
                     est.slope * xs[static_cast<std::size_t>(i)];
    ss_res += r * r;
  }
  est.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy)
                            : 1.0;  // flat curve fits itself exactly
  est.delta_min = window.first;
  est.delta_max = window.second;
  est.n_samples = n;
  return est;
}

std::pair<double, double> default_window(const CoverCurve& curve) {
  const auto& s = curve.samples;
  if (s.size() >= 7)
    return {s[s.size() - 3].delta, s[2].delta};
  return {s.back().delta, s.front().delta};
}

HausdorffSumDiagnostic hausdorff_sum_over_cover(const std::vector<Interval>& cover,
                                                double alpha) {
  std::vector<double> diam;
  diam.reserve(cover.size());
  double scale = 0.0;
  for (const Interval& iv : cover) {
    diam.push_back(iv.hi - iv.lo);
    scale = std::max(scale, iv.hi - iv.lo);
  }
  auto d = hausdorff_sum_over_diameters(diam, alpha);
  d.scale = scale;
  return d;
}

HausdorffSumDiagnostic hausdorff_sum_over_diameters(
    const std::vector<double>& diameters, double alpha) {
  if (!(alpha > 0.0))
    throw NonpositiveAlpha("hausdorff_sum: alpha must be positive");
  double sum = 0.0, comp = 0.0;  // Kahan
  double scale = 0.0;
  for (double d : diameters) {
    if (!(d > 0.0))
      throw NonpositiveAlpha("hausdorff_sum: covering elements need positive diameter");
    const double term = std::pow(d, alpha) - comp;
    const double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
    scale = std::max(scale, d);
  }
  return HausdorffSumDiagnostic{alpha, scale, sum};
}

}  // namespace parafractal

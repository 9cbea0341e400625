#include "parafractal/fractal_sets.hpp"

#include <cmath>
#include <limits>

namespace parafractal {

namespace {

// Closed-cover comparisons run on rounded endpoint arithmetic; a point within
// this absolute slack of a cover endpoint counts as covered. All sets live in
// [0,1] and every counted gap is many orders of magnitude wider.
constexpr double kCoverSlack = 1e-12;

void check_spec(const CantorSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
    throw AlphaOutOfRange("cantor: alpha must lie in (0,1)");
  if (spec.level < 0) throw AlphaOutOfRange("cantor: level must be >= 0");
}

// Smallest point of C inside the depth-`level` construction interval [lo,hi]
// that is strictly greater than p. Assumes p < hi. Descends the self-similar
// tree; once the interval width drops below resolution the upper endpoint
// stands in for the whole residual set.
double next_cantor_point(double alpha, double lo, double hi, int level, double p) {
  for (;;) {
    if (p < lo) return lo;
    const double width = hi - lo;
    if (width <= std::abs(hi) * 4e-16 || level > 4000) return hi;
    const double child = cantor_delta(alpha, level + 1);
    const double left_hi = lo + child;
    const double right_lo = hi - child;
    if (p < left_hi) {
      hi = left_hi;  // descend into the left child
    } else if (p < right_lo) {
      return right_lo;
    } else {
      lo = right_lo;  // descend into the right child
    }
    ++level;
  }
}

}  // namespace

double cantor_delta(double alpha, int level) {
  return std::exp2(-static_cast<double>(level) / alpha);
}

std::vector<Interval> cantor_intervals(const CantorSpec& spec) {
  check_spec(spec);
  std::vector<Interval> cur{{0.0, 1.0}};
  for (int k = 1; k <= spec.level; ++k) {
    const double d = cantor_delta(spec.alpha, k);
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (const Interval& iv : cur) {
      next.push_back({iv.lo, iv.lo + d});
      next.push_back({iv.hi - d, iv.hi});
    }
    cur.swap(next);
  }
  return cur;
}

std::vector<double> cantor_endpoints(const CantorSpec& spec) {
  std::vector<double> pts;
  const auto ivs = cantor_intervals(spec);
  pts.reserve(ivs.size() * 2);
  for (const Interval& iv : ivs) {
    pts.push_back(iv.lo);
    pts.push_back(iv.hi);
  }
  return pts;
}

double hausdorff_sum(const CantorSpec& spec) {
  check_spec(spec);
  // 2^k identical terms diam^alpha with diam = 2^(-k/alpha) by construction.
  const double term = std::pow(cantor_delta(spec.alpha, spec.level), spec.alpha);
  return std::ldexp(term, spec.level);
}

std::uint64_t cantor_cover_count(const CantorSpec& spec, double delta) {
  check_spec(spec);
  if (!(delta > 0.0 && delta <= 1.0))
    throw NonpositiveDelta("cantor_cover_count: need 0 < delta <= 1");
  if (cantor_delta(spec.alpha, spec.level) > delta * (1.0 + 1e-12))
    throw LevelTooShallow("cantor_cover_count: delta_level exceeds delta");

  std::uint64_t count = 1;  // [0, delta]
  double pos = delta;
  while (pos < 1.0 - kCoverSlack) {
    const double start =
        next_cantor_point(spec.alpha, 0.0, 1.0, 0, pos + kCoverSlack);
    if (start > 1.0) break;
    ++count;
    pos = start + delta;
  }
  return count;
}

std::uint64_t harmonic_cover_count(const HarmonicTailSpec&, double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw NonpositiveDelta("harmonic_cover_count: need 0 < delta <= 1");
  // [0, delta] covers 0, every 1/m <= delta, and the accumulation tail.
  std::uint64_t count = 1;
  double frontier = delta;
  while (frontier < 1.0 - kCoverSlack) {
    // Smallest point 1/m strictly above the frontier = largest m whose point
    // is still uncovered.
    auto m = static_cast<std::int64_t>(std::floor(1.0 / frontier)) + 1;
    while (m >= 1 && 1.0 / static_cast<double>(m) <= frontier + kCoverSlack) --m;
    if (m < 1) break;
    ++count;
    frontier = 1.0 / static_cast<double>(m) + delta;
  }
  return count;
}

std::uint64_t product_cover_count(const ProductSetSpec& spec, double delta) {
  return cantor_cover_count(spec.cantor, delta) *
         harmonic_cover_count(spec.tail, delta);
}

std::vector<double> harmonic_points(const HarmonicTailSpec& spec) {
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(spec.cutoff) + 1);
  pts.push_back(0.0);
  for (int n = spec.cutoff; n >= 1; --n)
    pts.push_back(1.0 / static_cast<double>(n));
  return pts;
}

}  // namespace parafractal

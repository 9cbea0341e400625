#pragma once

#include <cstdint>
#include <vector>

#include "parafractal/errors.hpp"

namespace parafractal {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Middle-gap Cantor construction on [0,1]: level k consists of 2^k closed
/// intervals of diameter 2^(-k/alpha); each parent splits into two children
/// anchored at its endpoints.
struct CantorSpec {
  double alpha = 0.5;  // in (0,1)
  int level = 0;       // >= 0
};

/// J = {0} u {1/n : n in N}. `cutoff` bounds explicit enumeration when a
/// point list is materialized; covering counts handle the tail analytically.
struct HarmonicTailSpec {
  int cutoff = 1000;
};

/// S = C x J inside the unit square.
struct ProductSetSpec {
  CantorSpec cantor;
  HarmonicTailSpec tail;
};

/// Interval diameter at a given construction level.
double cantor_delta(double alpha, int level);

/// The 2^level closed intervals of level `spec.level`, sorted ascending.
std::vector<Interval> cantor_intervals(const CantorSpec& spec);

/// Endpoints of the level intervals as a sorted point list (2^(level+1) values).
std::vector<double> cantor_endpoints(const CantorSpec& spec);

/// Sum of diam^alpha over the level cover; identically 1 for every level.
double hausdorff_sum(const CantorSpec& spec);

/// Exact minimum number of closed length-delta intervals covering the limit
/// set C. Greedy left-to-right placement is optimal for compact subsets of
/// the line; the sweep walks the interval tree analytically below the
/// materialized level, so the result is exact for the limit set.
/// Requires spec.level deep enough that delta_level <= delta.
std::uint64_t cantor_cover_count(const CantorSpec& spec, double delta);

/// Exact minimum number of closed length-delta intervals covering J.
/// The first interval [0,delta] absorbs 0 and the whole accumulation tail;
/// the finitely many remaining points are swept greedily.
std::uint64_t harmonic_cover_count(const HarmonicTailSpec& spec, double delta);

/// N(S,delta) = N(C,delta) * N(J,delta) for the product set.
std::uint64_t product_cover_count(const ProductSetSpec& spec, double delta);

/// Points {0} u {1/n : n <= cutoff}, sorted ascending.
std::vector<double> harmonic_points(const HarmonicTailSpec& spec);

}  // namespace parafractal

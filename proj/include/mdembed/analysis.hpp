#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mdembed/metric.hpp"

namespace mdembed {

/// ||a - b||_p between two rows; p may be +inf.
double lp_distance(const Coords& coords, PointId a, PointId b, double p);

struct DistortionReport {
  double p = 2.0;
  double lipschitz = 0.0;    // max ||f(x)-f(y)||_p / d(x,y)
  double contraction = 0.0;  // min of the same ratio
  double distortion = 0.0;   // lipschitz / contraction, +inf when degenerate
  std::pair<PointId, PointId> argmax{0, 0};
  std::pair<PointId, PointId> argmin{0, 0};
  bool degenerate = false;  // two points share an image
  double runtime_seconds = 0.0;
};

/// Exact all-pairs distortion of the rows of `coords` against m.
DistortionReport distortion(const FiniteMetric& m, const Coords& coords, double p);

struct PairRatio {
  PointId x = 0;
  PointId y = 0;
  double distance = 0.0;
  double image = 0.0;
  double ratio = 0.0;
};

/// Every pair x < y with its ratio, in lexicographic order.
std::vector<PairRatio> pair_ratios(const FiniteMetric& m, const Coords& coords, double p);

/// Euclidean distance from row x to the linear span of rows Y, by ridge
/// regularized normal equations.
double affine_hull_distance(const Coords& coords, PointId x, const PointSet& Y);

/// affine_hull_distance(coords, x, Y) / d(x, Y).
double affine_hull_ratio(const FiniteMetric& m, const Coords& coords, PointId x, const PointSet& Y);

/// Batched span distances that share one Gram matrix of all rows.
class SpanDistance {
 public:
  explicit SpanDistance(const Coords& coords);
  double operator()(PointId x, const PointSet& Y) const;

 private:
  Eigen::MatrixXd gram_;
};

/// (k-1)-volume of the simplex on rows S.
double simplex_volume(const Coords& coords, const PointSet& S);

/// Product of minimum spanning tree edge lengths of S.
double tree_volume(const FiniteMetric& m, const PointSet& S);

struct EtaReport {
  std::size_t k = 0;
  std::size_t subsets = 0;
  /// Quantiles at 0, 0.25, 0.5, 0.75, 1 of the eta upper-bound proxy
  /// (tree_volume / simplex_volume)^{1/(k-1)}. Infinite entries sort last.
  std::vector<double> eta_quantiles;
  std::size_t infinite = 0;
  /// Smallest span-distance ratio of a subset point against the rest of its subset.
  double affine_floor = 0.0;
  double lipschitz = 0.0;
};

/// Samples `subsets` k-subsets. Throws InvalidInput when the map is not
/// 1-Lipschitz into l_2.
EtaReport volume_eta_report(const FiniteMetric& m, const Coords& coords, std::size_t k, std::size_t subsets,
                            std::uint64_t seed);

/// Exact Pr[B(x, pad*delta) inside P(x)] under the CKR distribution, by
/// enumerating all permutations and the breakpoints of alpha. n <= 8.
double exact_padding_oracle(const FiniteMetric& m, double delta, PointId x, double pad);

}  // namespace mdembed

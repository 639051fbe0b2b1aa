#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mdembed/metric.hpp"

namespace mdembed {

/// Inclusive range of scale exponents u (diameter bound 2^u) on which
/// partitions are actually sampled. Below `lo` every CKR partition is all
/// singletons, above `hi` it is the single cluster X.
struct ScaleRange {
  int lo = 0;
  int hi = 0;
};

/// [floor(log2 min-dist) - 10, ceil(log2 diam) + 3].
ScaleRange scale_range(const FiniteMetric& m);

/// One draw from the CKR distribution at diameter bound `delta`.
struct StochasticPartition : Partition {
  double delta = 0.0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

/// Random permutation pi and alpha uniform in [1/4, 1/2]; each point joins
/// the first center in pi-order whose open ball B(center, alpha*delta)
/// contains it. Cluster diameters are < delta.
StochasticPartition ckr_partition(const FiniteMetric& m, double delta, std::uint64_t seed);
StochasticPartition ckr_partition(const NeighborIndex& index, double delta, std::uint64_t seed);

/// Text dump: `delta <D> alpha <a> seed <s>` then `cluster <i>: <points>`.
std::string dump_partition(const StochasticPartition& p);

/// eps(x, u) with values in (0, 1].
class PaddingFunction {
 public:
  using Fn = std::function<double(PointId, int)>;

  PaddingFunction(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  /// The measure-driven padding of the CKR bundle (epsilon_mu below).
  static PaddingFunction from_measure(const FiniteMetric& m, const PointMeasure& mu);
  /// Constant padding 1/alpha.
  static PaddingFunction uniform(double value);

  double operator()(PointId x, int u) const { return fn_(x, u); }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

/// [16 + 16 log(mu(B(x,2^u)) / mu(B(x,2^{u-3})))]^{-1}, natural log.
double epsilon_mu(const FiniteMetric& m, const PointMeasure& mu, PointId x, int u);

/// Uniform padding value 1/(16 + 48 log lambda) carried by the CKR bundle on a
/// space whose doubling estimate is lambda.
double uniform_padding_value(std::size_t lambda);

/// Integer window {u : d/32 <= 2^u <= d/2}.
std::pair<int, int> delta_epsilon_window(double d);

/// min of eps(x, u) over delta_epsilon_window(d(x,y)). Throws when x == y.
double delta_epsilon(const PaddingFunction& eps, const FiniteMetric& m, PointId x, PointId y);

/// V_mu(x,y): larger of the two log mass ratios between radii 2d and d/512.
/// Throws when x == y.
double v_mu(const FiniteMetric& m, const PointMeasure& mu, PointId x, PointId y);

/// Monte-Carlo estimate of Pr[B(x, pad * 2^u) subset of P(x)] over `trials`
/// independent CKR draws at delta = 2^u.
double padding_probability(const FiniteMetric& m, PointId x, int u, double pad,
                           std::size_t trials, std::uint64_t seed);

/// Same estimate for every point at once, reusing each draw. pads[x] is the
/// padding for point x. padding_profile(...)[x] equals padding_probability
/// for the same seed.
std::vector<double> padding_profile(const FiniteMetric& m, int u, const std::vector<double>& pads,
                                    std::size_t trials, std::uint64_t seed);

}  // namespace mdembed

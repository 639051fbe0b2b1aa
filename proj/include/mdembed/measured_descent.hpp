#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mdembed/decomposition.hpp"
#include "mdembed/metric.hpp"

namespace mdembed {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// The index windows of the measured-descent construction: offsets
/// I = {-6..3}, mass levels T = {0..ceil(log2 Phi(mu))}, and the scale range
/// on which partitions are sampled.
struct ScaleWindows {
  std::vector<int> offsets;
  std::vector<int> levels;
  ScaleRange scales;
};

ScaleWindows make_windows(const FiniteMetric& m, const PointMeasure& mu);

/// Smallest integer t with 2^t >= phi (0 for phi <= 1).
int ceil_log2(double phi);

/// kappa(x,t) = max { k : mu(B(x, 2^k)) < 2^t }. An empty set yields
/// scales.lo - 7 and an unbounded one yields scales.hi + 7.
int kappa(const FiniteMetric& m, const PointMeasure& mu, PointId x, int t);

/// One joint draw of the witness sets W^i_t. member(i, t, x) tells whether x
/// belongs to the set for offset index i and level index t.
struct WitnessFamily {
  ScaleWindows windows;
  std::size_t n = 0;
  std::vector<char> members;  // [(i * |T| + t) * n + x]

  bool member(std::size_t i, std::size_t t, PointId x) const {
    return members[(i * windows.levels.size() + t) * n + x] != 0;
  }
  PointSet set(std::size_t i, std::size_t t) const;
};

/// Draws one independent CKR partition P_u per scale and one fair bit per
/// (scale, cluster); x joins W^i_t when the bit of P_u(x) at
/// u = kappa(x,t) - i is zero. Scales below the sampled range use singleton
/// partitions, scales above it the single cluster X.
WitnessFamily sample_witness_sets(const FiniteMetric& m, const PointMeasure& mu,
                                  const ScaleWindows& windows, std::uint64_t seed);

/// A Frechet-type embedding plus the bookkeeping needed to replay and audit it.
struct FrechetEmbedding {
  Coords coords;
  double p = 2.0;
  /// Factor applied to each column; coords / column_scale is the raw,
  /// 1-Lipschitz distance-to-set (or capped distance) coordinate.
  std::vector<double> column_scale;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double phi_mu = 1.0;
  /// Global normalization the whole map was divided by (1 when none).
  double normalization = 1.0;
  /// Extra numeric metadata (uniform padding value, doubling estimate, ...).
  std::vector<std::pair<std::string, double>> params;

  std::size_t size() const noexcept { return static_cast<std::size_t>(coords.rows()); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(coords.cols()); }
};

/// Default sample count 8 * ceil(log2 n) (at least 1).
std::size_t default_samples(std::size_t n);

/// N independent draws of the |I|*|T| coordinates d(x, W^i_t), each block
/// scaled by N^{-1/p} (unscaled for p = infinity). d(x, empty) := 0.
FrechetEmbedding embed_measured_descent(const FiniteMetric& m, const PointMeasure& mu, double p,
                                        std::size_t samples, std::uint64_t seed);

/// phi_1 (+) phi_2: two independent measured-descent maps over the counting
/// measure, the first tagged with the measure-driven padding, the second
/// with the uniform padding 1/(16 + 48 log lambda).
FrechetEmbedding embed_theorem_pad(const FiniteMetric& m, double p, std::size_t samples, std::uint64_t seed);

/// Scale exponents used by the capped Bourgain map:
/// [floor(log2 min-dist), ceil(log2 diam)].
ScaleRange bourgain_scales(const FiniteMetric& m);

/// Capped Bourgain coordinates min{d(x, W_t), R/4}, W_t keeping each point
/// with probability e^{-t}, for every R = 2^u and t in {1..ceil(ln n)}.
/// Scaled to stay 1-Lipschitz in l_p.
FrechetEmbedding embed_bourgain_small(const FiniteMetric& m, double p, std::size_t samples, std::uint64_t seed);

/// (G1 (+) G2 (+) G3) / sqrt(3): the two measured-descent maps normalized by
/// sqrt(50 log Phi), and the capped Bourgain map. 1-Lipschitz into l_2.
FrechetEmbedding embed_volume(const FiniteMetric& m, std::size_t samples, std::uint64_t seed);

/// Concatenates embeddings column-wise (same p and point count).
FrechetEmbedding direct_sum(std::vector<FrechetEmbedding> parts, std::string method);

}  // namespace mdembed

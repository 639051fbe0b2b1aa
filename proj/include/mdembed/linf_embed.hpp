#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdembed/decomposition.hpp"
#include "mdembed/metric.hpp"

namespace mdembed {

/// Raised when a chopped cluster exceeds its diameter budget, which means
/// the configured constant c (T = c s^2) is too small for this graph.
class DiameterViolation : public Error {
 public:
  DiameterViolation(const std::string& what, int scale, PointSet cluster, double diameter, double bound)
      : Error(what), scale(scale), cluster(std::move(cluster)), diameter(diameter), bound(bound) {}
  int scale;
  PointSet cluster;
  double diameter;
  double bound;
};

/// s rounds of annulus chopping with band width 9*delta and offsets
/// {0, 3, 6}*delta, each round re-rooting inside every connected component of
/// the induced subgraph. Returns 3^s partitions; partition index encodes the
/// offset sequence in base 3 (first round most significant). Final clusters
/// are connected in the induced subgraph.
std::vector<Partition> kpr_partitions(const WeightedGraph& g, int s, double delta);

/// For every pair some partition contains both B(x, delta) and B(y, delta)
/// inside a cluster. Returns the number of violating pairs.
std::size_t count_unpadded_pairs(const FiniteMetric& m, const std::vector<Partition>& parts, double radius);

/// A chain of partitions P_u, u in [lo, hi], with P_{u-1} refining P_u,
/// P_hi = {X} and P_lo = singletons. Cluster diameters at scale u are below
/// base * ratio^u.
struct NestedPartitionFamily {
  int lo = 0;
  int hi = 0;
  double base = 1.0;   // a = 2^m
  double ratio = 4.0;  // D = 4T
  int octave = 0;      // m
  std::vector<Partition> levels;  // levels[u - lo]

  const Partition& at(int u) const { return levels[static_cast<std::size_t>(u - lo)]; }
  double bound(int u) const;
};

/// u_hi = smallest u with a D^u > diam, u_lo = largest u with a D^u <= min-dist.
ScaleRange nested_scale_range(const FiniteMetric& m, double a, double ratio);

/// Builds the 3^s nested families for base scale a and T: per-scale KPR
/// partitions at Delta = a (4T)^u, then, from fine to coarse, every finer
/// cluster straddling a coarse cluster is lifted into the coarse partition.
/// Validates cluster diameters (throws DiameterViolation) and the pairwise
/// padding at radius a (4T)^u / (2T) at every scale (throws Error).
std::vector<NestedPartitionFamily> nest_partitions(const WeightedGraph& g, const FiniteMetric& m, int s, double a,
                                                   double T, int octave = 0);

/// One child A_i of a recursion node with its size class and sign string.
struct PsiChild {
  std::size_t size = 0;
  int size_class = 0;          // ceil(log2 |A_i|)
  std::vector<int> signs;      // entries in {-1, +1}
  PointId representative = 0;  // smallest member
};

/// A recursion node: a cluster A of P_{scale} split into children at scale-1.
struct PsiNode {
  int scale = 0;
  std::size_t size = 0;
  std::size_t dimension = 0;  // 2 ceil(log2 |A|)
  std::vector<PsiChild> children;
};

struct PsiMap {
  Coords coords;  // n x 2 ceil(log2 n)
  std::vector<PsiNode> nodes;
};

/// 2 * ceil(log2 k), the dimension of psi on a k-point cluster.
std::size_t psi_dimension(std::size_t k);

/// The sign-string recursion over a nested family with cap 2^m D^u at each
/// level. 2-Lipschitz in l_inf.
PsiMap psi_map(const NestedPartitionFamily& fam, const FiniteMetric& m, int octave, double D);

struct LinfEmbedding {
  Coords coords;
  int s = 0;
  double c = 2.0;
  double T = 0.0;
  double D = 0.0;
  std::size_t K = 0;
  bool validated = false;
  /// families[m * 3^s + i], in the order their psi maps are concatenated.
  std::vector<NestedPartitionFamily> families;
};

/// K = 3^s (ceil(log2(4 c s^2)) + 1) 2 ceil(log2 n).
std::size_t linf_dimension(std::size_t n, int s, double c);

/// Psi = concatenation over octaves m in {0..ceil(log2 D)} and families i of
/// psi^m_i with a = 2^m, T = c s^2, D = 4T.
LinfEmbedding embed_theorem_yuri(const WeightedGraph& g, int s, double c = 2.0);

/// The premise under which psi guarantees ||Psi(x)-Psi(y)|| >= d/(2D): for
/// the octave m and scale u with d(x,y) in [2^m D^u, 2^{m+1} D^u), some family
/// keeps both 2^{m+1} D^{u-1}-balls inside their clusters at scale u and puts
/// x, y in one cluster at scale u+1.
bool lower_bound_premise(const LinfEmbedding& e, const FiniteMetric& m, PointId x, PointId y);

}  // namespace mdembed

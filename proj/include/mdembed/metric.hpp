#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mdembed/error.hpp"

namespace mdembed {

using PointId = std::size_t;
using PointSet = std::vector<PointId>;

/// n x k coordinate matrix, one row per point.
using Coords = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Relative slack used when validating the triangle inequality.
inline constexpr double kTriangleTolerance = 1e-9;

/// An n-point metric space stored as a dense, validated distance matrix.
///
/// Construction checks zero diagonal, symmetry, strictly positive
/// off-diagonal entries and the triangle inequality (relative slack
/// kTriangleTolerance). Duplicate points are rejected rather than merged.
class FiniteMetric {
 public:
  FiniteMetric() = default;
  FiniteMetric(std::size_t n, std::vector<double> dist, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  double operator()(PointId x, PointId y) const noexcept { return dist_[x * n_ + y]; }
  std::span<const double> row(PointId x) const noexcept { return {dist_.data() + x * n_, n_}; }
  const std::vector<double>& data() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Largest pairwise distance; 0 for a single point.
  double diameter() const noexcept { return diameter_; }
  /// Smallest off-diagonal distance; 0 for a single point.
  double min_distance() const noexcept { return min_distance_; }

  /// d(x, S) = min over S; +infinity for an empty set.
  double distance_to_set(PointId x, std::span<const PointId> set) const noexcept;
  double set_diameter(std::span<const PointId> set) const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;
  double diameter_ = 0.0;
  double min_distance_ = 0.0;
};

/// For every point, all points sorted by (distance, index). Row x starts with
/// x itself. Lets ball queries and distance-to-set scans stop early.
class NeighborIndex {
 public:
  explicit NeighborIndex(const FiniteMetric& m);

  const FiniteMetric& metric() const noexcept { return *metric_; }
  std::span<const PointId> order(PointId x) const noexcept {
    return {order_.data() + x * n_, n_};
  }
  /// Number of points y with d(x,y) < r.
  std::size_t ball_size(PointId x, double r) const noexcept;

 private:
  const FiniteMetric* metric_;
  std::size_t n_;
  std::vector<PointId> order_;
};

struct Edge {
  PointId u;
  PointId v;
  double w;
};

struct Neighbor {
  PointId to;
  double w;
};

/// Undirected graph with strictly positive edge weights. The excluded minor
/// order s is declared by the caller and never verified.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n, std::vector<Edge> edges,
                std::optional<int> excluded_minor_order = std::nullopt);

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(PointId v) const noexcept {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::optional<int> excluded_minor_order() const noexcept { return excluded_minor_order_; }
  bool is_connected() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adj_;
  std::optional<int> excluded_minor_order_;
};

/// Non-degenerate measure: every point carries strictly positive mass.
class PointMeasure {
 public:
  PointMeasure() = default;
  explicit PointMeasure(std::vector<double> mass);
  static PointMeasure counting(std::size_t n);

  std::size_t size() const noexcept { return mass_.size(); }
  double operator()(PointId x) const noexcept { return mass_[x]; }
  const std::vector<double>& masses() const noexcept { return mass_; }
  double total() const noexcept { return total_; }

 private:
  std::vector<double> mass_;
  double total_ = 0.0;
};

/// A partition of {0..n-1}: clusters ordered by their smallest member,
/// members sorted, and the inverse lookup point -> cluster index.
struct Partition {
  std::vector<PointSet> clusters;
  std::vector<std::size_t> assignment;

  /// Builds from arbitrary labels, renumbering clusters by min member.
  static Partition from_labels(std::span<const std::size_t> labels);
  static Partition singletons(std::size_t n);
  static Partition whole(std::size_t n);

  std::size_t size() const noexcept { return clusters.size(); }
  const PointSet& cluster_of(PointId x) const { return clusters[assignment[x]]; }
  bool same_cluster(PointId x, PointId y) const { return assignment[x] == assignment[y]; }
};

/// Shortest-path metric of a connected graph (Dijkstra from every vertex).
/// Throws InvalidInput("infinite distance ...") on disconnected input.
FiniteMetric metric_from_graph(const WeightedGraph& g);

/// Open ball B(x,r) = { y : d(x,y) < r }, sorted by index.
PointSet ball(const FiniteMetric& m, PointId x, double r);

double ball_mass(const FiniteMetric& m, const PointMeasure& mu, PointId x, double r);

/// Phi(mu) = max_x mu(X) / mu(x).
double aspect_ratio(const PointMeasure& mu);

/// One covering problem solved while estimating the doubling constant:
/// the closed ball { y : d(x,y) <= radius } (the limit of B(x,r) as r
/// decreases to `radius`) covered by closed balls of radius radius/2 around
/// `centers`.
struct CoverProbe {
  PointId center;
  double radius;
  PointSet centers;
};

struct DoublingEstimate {
  std::size_t lambda = 1;
  std::vector<CoverProbe> probes;  // filled only when requested
};

/// Upper estimate of the doubling constant by greedy half-radius nets over
/// every center and every distinct radius d(x,y).
DoublingEstimate doubling_estimate(const FiniteMetric& m, bool keep_probes = false);
std::size_t doubling_constant(const FiniteMetric& m);

enum class GeneratorKind { Path, Grid2d, Hypercube, RandomRegular, EuclideanCloud, Equilateral };

GeneratorKind parse_generator_kind(std::string_view name);
std::string_view to_string(GeneratorKind kind);

struct GeneratorParams {
  std::size_t n = 0;       // path, random_regular, euclidean_cloud, equilateral
  std::size_t rows = 0;    // grid2d
  std::size_t cols = 0;    // grid2d
  std::size_t dim = 0;     // hypercube dimension, euclidean_cloud ambient dimension
  std::size_t degree = 3;  // random_regular
  bool weighted = false;   // grid2d: weights 1 + k/8, k uniform in {0..8}
};

using Generated = std::variant<FiniteMetric, WeightedGraph>;

/// Deterministic test-instance generator. Graph kinds return a
/// WeightedGraph (grid2d is declared K_{3,3}-free), the others a metric.
Generated generate(GeneratorKind kind, const GeneratorParams& params, std::uint64_t seed);

/// Metric view of any generator output.
FiniteMetric as_metric(const Generated& g);

}  // namespace mdembed

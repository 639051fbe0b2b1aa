#include <algorithm>
#include <cmath>
#include <set>

#include "mdembed/metric.hpp"
#include "mdembed/rng.hpp"

namespace mdembed {

namespace {

WeightedGraph make_path(std::size_t n) {
  if (n < 1) throw InvalidInput("path needs n >= 1");
  std::vector<Edge> edges;
  for (PointId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return WeightedGraph(n, std::move(edges), 2);
}

WeightedGraph make_grid(std::size_t rows, std::size_t cols, bool weighted, Rng& rng) {
  if (rows < 1 || cols < 1) throw InvalidInput("grid2d needs rows, cols >= 1");
  auto weight = [&] { return weighted ? 1.0 + static_cast<double>(rng.below(9)) / 8.0 : 1.0; };
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const PointId v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1, weight()});
      if (r + 1 < rows) edges.push_back({v, v + cols, weight()});
    }
  // Planar graphs exclude K_{3,3}.
  return WeightedGraph(rows * cols, std::move(edges), 3);
}

WeightedGraph make_hypercube(std::size_t dim) {
  if (dim < 1 || dim > 16) throw InvalidInput("hypercube dimension must be in [1, 16]");
  const std::size_t n = std::size_t{1} << dim;
  std::vector<Edge> edges;
  for (PointId v = 0; v < n; ++v)
    for (std::size_t b = 0; b < dim; ++b) {
      const PointId u = v ^ (std::size_t{1} << b);
      if (v < u) edges.push_back({v, u, 1.0});
    }
  return WeightedGraph(n, std::move(edges));
}

// Configuration model with rejection of loops, multi-edges and
// disconnected outcomes.
WeightedGraph make_random_regular(std::size_t n, std::size_t degree, Rng& rng) {
  if (degree < 1 || degree >= n) throw InvalidInput("random_regular needs 1 <= degree < n");
  if ((n * degree) % 2 != 0) throw InvalidInput("random_regular needs n * degree even");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<PointId> stubs;
    stubs.reserve(n * degree);
    for (PointId v = 0; v < n; ++v)
      for (std::size_t k = 0; k < degree; ++k) stubs.push_back(v);
    rng.shuffle(stubs);
    std::set<std::pair<PointId, PointId>> seen;
    std::vector<Edge> edges;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      PointId a = stubs[i], b = stubs[i + 1];
      if (a == b) { ok = false; break; }
      if (a > b) std::swap(a, b);
      if (!seen.insert({a, b}).second) { ok = false; break; }
      edges.push_back({a, b, 1.0});
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
    WeightedGraph g(n, std::move(edges));
    if (g.is_connected()) return g;
  }
  throw InvalidInput("random_regular: no simple connected sample found");
}

FiniteMetric make_cloud(std::size_t n, std::size_t dim, Rng& rng) {
  if (n < 1 || dim < 1) throw InvalidInput("euclidean_cloud needs n >= 1 and dim >= 1");
  std::vector<double> pts(n * dim);
  for (double& v : pts) v = rng.uniform();
  std::vector<double> dist(n * n, 0.0);
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double t = pts[x * dim + k] - pts[y * dim + k];
        s += t * t;
      }
      dist[x * n + y] = dist[y * n + x] = std::sqrt(s);
    }
  return FiniteMetric(n, std::move(dist));
}

FiniteMetric make_equilateral(std::size_t n) {
  if (n < 1) throw InvalidInput("equilateral needs n >= 1");
  std::vector<double> dist(n * n, 1.0);
  for (PointId x = 0; x < n; ++x) dist[x * n + x] = 0.0;
  return FiniteMetric(n, std::move(dist));
}

}  // namespace

GeneratorKind parse_generator_kind(std::string_view name) {
  if (name == "path") return GeneratorKind::Path;
  if (name == "grid2d") return GeneratorKind::Grid2d;
  if (name == "hypercube") return GeneratorKind::Hypercube;
  if (name == "random_regular") return GeneratorKind::RandomRegular;
  if (name == "euclidean_cloud") return GeneratorKind::EuclideanCloud;
  if (name == "equilateral") return GeneratorKind::Equilateral;
  throw InvalidInput("unknown generator kind: " + std::string(name));
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Path: return "path";
    case GeneratorKind::Grid2d: return "grid2d";
    case GeneratorKind::Hypercube: return "hypercube";
    case GeneratorKind::RandomRegular: return "random_regular";
    case GeneratorKind::EuclideanCloud: return "euclidean_cloud";
    case GeneratorKind::Equilateral: return "equilateral";
  }
  return "unknown";
}

Generated generate(GeneratorKind kind, const GeneratorParams& params, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {static_cast<std::int64_t>(kind)}));
  switch (kind) {
    case GeneratorKind::Path: return make_path(params.n);
    case GeneratorKind::Grid2d: return make_grid(params.rows, params.cols, params.weighted, rng);
    case GeneratorKind::Hypercube: return make_hypercube(params.dim);
    case GeneratorKind::RandomRegular: return make_random_regular(params.n, params.degree, rng);
    case GeneratorKind::EuclideanCloud: return make_cloud(params.n, params.dim, rng);
    case GeneratorKind::Equilateral: return make_equilateral(params.n);
  }
  throw InvalidInput("unknown generator kind");
}

FiniteMetric as_metric(const Generated& g) {
  if (const auto* m = std::get_if<FiniteMetric>(&g)) return *m;
  return metric_from_graph(std::get<WeightedGraph>(g));
}

}  // namespace mdembed

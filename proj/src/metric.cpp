#include "mdembed/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

namespace mdembed {

namespace {

std::string pair_str(PointId x, PointId y) {
  std::ostringstream os;
  os << "(" << x << ", " << y << ")";
  return os.str();
}

}  // namespace

FiniteMetric::FiniteMetric(std::size_t n, std::vector<double> dist, std::vector<std::string> labels)
    : n_(n), dist_(std::move(dist)), labels_(std::move(labels)) {
  if (n_ == 0) throw InvalidInput("metric must contain at least one point");
  if (dist_.size() != n_ * n_) throw InvalidInput("distance matrix must be n x n");
  if (!labels_.empty() && labels_.size() != n_) throw InvalidInput("label count must equal n");

  double diam = 0.0;
  double min_d = std::numeric_limits<double>::infinity();
  for (PointId x = 0; x < n_; ++x) {
    if (dist_[x * n_ + x] != 0.0) throw InvalidInput("nonzero diagonal at point " + std::to_string(x));
    for (PointId y = x + 1; y < n_; ++y) {
      const double a = dist_[x * n_ + y];
      const double b = dist_[y * n_ + x];
      if (!std::isfinite(a) || !std::isfinite(b))
        throw InvalidInput("non-finite distance at " + pair_str(x, y));
      if (std::abs(a - b) > kTriangleTolerance * std::max(a, b))
        throw InvalidInput("asymmetric distance at " + pair_str(x, y));
      if (a <= 0.0) throw InvalidInput("zero or negative distance between distinct points " + pair_str(x, y));
      dist_[y * n_ + x] = a;
      diam = std::max(diam, a);
      min_d = std::min(min_d, a);
    }
  }
  for (PointId x = 0; x < n_; ++x) {
    for (PointId y = 0; y < n_; ++y) {
      const double dxy = dist_[x * n_ + y];
      for (PointId z = 0; z < n_; ++z) {
        const double bound = dxy + dist_[y * n_ + z];
        if (dist_[x * n_ + z] > bound * (1.0 + kTriangleTolerance))
          throw InvalidInput("triangle inequality violated for " + pair_str(x, z) + " via " +
                             std::to_string(y));
      }
    }
  }
  diameter_ = diam;
  min_distance_ = n_ > 1 ? min_d : 0.0;
}

double FiniteMetric::distance_to_set(PointId x, std::span<const PointId> set) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (PointId y : set) best = std::min(best, (*this)(x, y));
  return best;
}

double FiniteMetric::set_diameter(std::span<const PointId> set) const noexcept {
  double diam = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) diam = std::max(diam, (*this)(set[i], set[j]));
  return diam;
}

NeighborIndex::NeighborIndex(const FiniteMetric& m) : metric_(&m), n_(m.size()), order_(n_ * n_) {
  for (PointId x = 0; x < n_; ++x) {
    auto first = order_.begin() + static_cast<std::ptrdiff_t>(x * n_);
    std::iota(first, first + static_cast<std::ptrdiff_t>(n_), PointId{0});
    const auto row = m.row(x);
    std::stable_sort(first, first + static_cast<std::ptrdiff_t>(n_),
                     [&](PointId a, PointId b) { return row[a] < row[b]; });
  }
}

std::size_t NeighborIndex::ball_size(PointId x, double r) const noexcept {
  const auto ord = order(x);
  const auto row = metric_->row(x);
  std::size_t k = 0;
  while (k < ord.size() && row[ord[k]] < r) ++k;
  return k;
}

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges, std::optional<int> excluded_minor_order)
    : n_(n), edges_(std::move(edges)), excluded_minor_order_(excluded_minor_order) {
  if (n_ == 0) throw InvalidInput("graph must contain at least one vertex");
  std::vector<std::size_t> degree(n_, 0);
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw InvalidInput("edge endpoint out of range");
    if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw InvalidInput("edge weights must be positive and finite");
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adj_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[fill[e.u]++] = {e.v, e.w};
    adj_[fill[e.v]++] = {e.u, e.w};
  }
}

bool WeightedGraph::is_connected() const {
  std::vector<char> seen(n_, 0);
  std::vector<PointId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const PointId v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : neighbors(v)) {
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        ++count;
        stack.push_back(nb.to);
      }
    }
  }
  return count == n_;
}

PointMeasure::PointMeasure(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw InvalidInput("measure must cover at least one point");
  for (std::size_t x = 0; x < mass_.size(); ++x) {
    if (!(mass_[x] > 0.0) || !std::isfinite(mass_[x]))
      throw InvalidInput("measure is degenerate: mass of point " + std::to_string(x) + " is not positive");
    total_ += mass_[x];
  }
}

PointMeasure PointMeasure::counting(std::size_t n) { return PointMeasure(std::vector<double>(n, 1.0)); }

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  Partition p;
  p.assignment.assign(labels.size(), 0);
  // Scanning points in index order numbers clusters by their smallest member.
  std::vector<std::pair<std::size_t, std::size_t>> lookup;  // label -> cluster, sorted
  for (PointId x = 0; x < labels.size(); ++x) {
    auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(labels[x], std::size_t{0}),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t c;
    if (it != lookup.end() && it->first == labels[x]) {
      c = it->second;
    } else {
      c = p.clusters.size();
      p.clusters.emplace_back();
      lookup.insert(it, {labels[x], c});
    }
    p.clusters[c].push_back(x);
    p.assignment[x] = c;
  }
  return p;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.assignment.resize(n);
  p.clusters.resize(n);
  for (PointId x = 0; x < n; ++x) {
    p.assignment[x] = x;
    p.clusters[x] = {x};
  }
  return p;
}

Partition Partition::whole(std::size_t n) {
  Partition p;
  p.assignment.assign(n, 0);
  p.clusters.emplace_back(n);
  std::iota(p.clusters[0].begin(), p.clusters[0].end(), PointId{0});
  return p;
}

FiniteMetric metric_from_graph(const WeightedGraph& g) {
  const std::size_t n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n * n, inf);
  using Item = std::pair<double, PointId>;
  for (PointId src = 0; src < n; ++src) {
    double* d = dist.data() + src * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    d[src] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [dv, v] = heap.top();
      heap.pop();
      if (dv > d[v]) continue;
      for (const Neighbor& nb : g.neighbors(v)) {
        const double cand = dv + nb.w;
        if (cand < d[nb.to]) {
          d[nb.to] = cand;
          heap.push({cand, nb.to});
        }
      }
    }
    for (PointId v = 0; v < n; ++v)
      if (d[v] == inf) throw InvalidInput("infinite distance: graph is disconnected (vertex " +
                                          std::to_string(v) + " unreachable from " + std::to_string(src) + ")");
  }
  // Dijkstra from each side can round differently; keep the smaller value.
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      const double v = std::min(dist[x * n + y], dist[y * n + x]);
      dist[x * n + y] = dist[y * n + x] = v;
    }
  return FiniteMetric(n, std::move(dist));
}

PointSet ball(const FiniteMetric& m, PointId x, double r) {
  PointSet out;
  const auto row = m.row(x);
  for (PointId y = 0; y < m.size(); ++y)
    if (row[y] < r) out.push_back(y);
  return out;
}

double ball_mass(const FiniteMetric& m, const PointMeasure& mu, PointId x, double r) {
  double mass = 0.0;
  const auto row = m.row(x);
  for (PointId y = 0; y < m.size(); ++y)
    if (row[y] < r) mass += mu(y);
  return mass;
}

double aspect_ratio(const PointMeasure& mu) {
  const double smallest = *std::min_element(mu.masses().begin(), mu.masses().end());
  return mu.total() / smallest;
}

DoublingEstimate doubling_estimate(const FiniteMetric& m, bool keep_probes) {
  DoublingEstimate est;
  const NeighborIndex index(m);
  const std::size_t n = m.size();
  PointSet centers;
  for (PointId x = 0; x < n; ++x) {
    const auto ord = index.order(x);
    const auto row = m.row(x);
    std::size_t k = 1;
    while (k < n) {
      const double r = row[ord[k]];
      while (k < n && row[ord[k]] == r) ++k;
      // Ball = ord[0..k): every point within distance r of x.
      const double half = r / 2.0;
      centers.clear();
      for (std::size_t j = 0; j < k; ++j) {
        const PointId y = ord[j];
        bool covered = false;
        for (PointId c : centers)
          if (m(c, y) <= half) {
            covered = true;
            break;
          }
        if (!covered) centers.push_back(y);
      }
      est.lambda = std::max(est.lambda, centers.size());
      if (keep_probes) est.probes.push_back({x, r, centers});
    }
  }
  return est;
}

std::size_t doubling_constant(const FiniteMetric& m) { return doubling_estimate(m).lambda; }

}  // namespace mdembed

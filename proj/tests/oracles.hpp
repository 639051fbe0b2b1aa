#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mdembed/metric.hpp"

namespace oracle {

using mdembed::Coords;
using mdembed::Edge;
using mdembed::FiniteMetric;
using mdembed::PointId;
using mdembed::PointSet;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// All-pairs shortest paths by Floyd-Warshall.
inline std::vector<double> floyd_warshall(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const Edge& e : edges) {
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.w);
    d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

// Residual norm of row x against span(rows Y) by modified Gram-Schmidt,
// run twice for stability.
inline double gram_schmidt_residual(const Coords& c, PointId x, const PointSet& Y) {
  std::vector<Eigen::VectorXd> basis;
  for (PointId y : Y) {
    Eigen::VectorXd v = c.row(static_cast<Eigen::Index>(y)).transpose();
    const double scale = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > 1e-10 * std::max(scale, 1.0)) basis.push_back(v / v.norm());
  }
  Eigen::VectorXd g = c.row(static_cast<Eigen::Index>(x)).transpose();
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) g -= b.dot(g) * b;
  return g.norm();
}

// Product of the edges of a minimum spanning tree found by enumerating every
// (k-1)-edge subset of the complete graph on S.
inline double mst_product_enumeration(const FiniteMetric& m, const PointSet& S) {
  const std::size_t k = S.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.push_back({i, j});
  std::vector<char> pick(pairs.size(), 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(k - 1), pick.end(), 1);
  double best_sum = kInf, best_product = 0.0;
  do {
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a];
      return a;
    };
    bool tree = true;
    double sum = 0.0, product = 1.0;
    for (std::size_t e = 0; e < pairs.size() && tree; ++e) {
      if (!pick[e]) continue;
      const auto a = find(pairs[e].first), b = find(pairs[e].second);
      if (a == b) tree = false;
      parent[a] = b;
      const double w = m(S[pairs[e].first], S[pairs[e].second]);
      sum += w;
      product *= w;
    }
    if (tree && sum < best_sum) {
      best_sum = sum;
      best_product = product;
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best_product;
}

// Integers u with d/32 <= 2^u <= d/2, by scanning.
inline std::vector<int> window_enumeration(double d) {
  std::vector<int> out;
  for (int u = -200; u <= 200; ++u) {
    const double s = std::ldexp(1.0, u);
    if (d / 32.0 <= s && s <= d / 2.0) out.push_back(u);
  }
  return out;
}

// Open ball by direct scan.
inline PointSet naive_ball(const FiniteMetric& m, PointId x, double r) {
  PointSet out;
  for (PointId y = 0; y < m.size(); ++y)
    if (m(x, y) < r) out.push_back(y);
  return out;
}

// max/min of ||f(x)-f(y)||_p / d(x,y) by explicit coordinate loops.
inline std::pair<double, double> ratio_extremes(const FiniteMetric& m, const Coords& c, double p) {
  double hi = -kInf, lo = kInf;
  for (PointId x = 0; x < m.size(); ++x)
    for (PointId y = x + 1; y < m.size(); ++y) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < c.cols(); ++j) {
        const double diff = std::abs(c(static_cast<Eigen::Index>(x), j) - c(static_cast<Eigen::Index>(y), j));
        acc = std::isinf(p) ? std::max(acc, diff) : acc + std::pow(diff, p);
      }
      if (!std::isinf(p)) acc = std::pow(acc, 1.0 / p);
      hi = std::max(hi, acc / m(x, y));
      lo = std::min(lo, acc / m(x, y));
    }
  return {hi, lo};
}

// Random metric: shortest paths over a complete graph with weights in [1, 2].
template <class Rng>
inline FiniteMetric random_metric(std::size_t n, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0 + rng.uniform()});
  return FiniteMetric(n, floyd_warshall(n, edges));
}

}  // namespace oracle

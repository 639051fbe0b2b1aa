#include "mdembed/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "mdembed/rng.hpp"

namespace mdembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rows(const FiniteMetric& m, const Coords& coords) {
  if (static_cast<std::size_t>(coords.rows()) != m.size())
    throw InvalidInput("coordinate rows (" + std::to_string(coords.rows()) + ") do not match metric size (" +
                       std::to_string(m.size()) + ")");
}

// Residual of b against the span encoded by Gram matrix G and cross products c.
double span_residual(const Eigen::MatrixXd& G, const Eigen::VectorXd& cross, double self) {
  if (G.rows() == 0) return std::sqrt(std::max(self, 0.0));
  const double trace = G.trace();
  if (!(trace > 0.0)) return std::sqrt(std::max(self, 0.0));
  const double ridge = 1e-12 * trace / static_cast<double>(G.rows());
  Eigen::MatrixXd reg = G;
  reg.diagonal().array() += ridge;
  const Eigen::VectorXd c = reg.ldlt().solve(cross);
  const double r2 = self - 2.0 * c.dot(cross) + c.dot(G * c);
  return std::sqrt(std::max(r2, 0.0));
}

}  // namespace

double lp_distance(const Coords& coords, PointId a, PointId b, double p) {
  const auto diff = (coords.row(static_cast<Eigen::Index>(a)) - coords.row(static_cast<Eigen::Index>(b))).eval();
  if (diff.size() == 0) return 0.0;
  if (std::isinf(p)) return diff.cwiseAbs().maxCoeff();
  if (p == 2.0) return diff.norm();
  if (p == 1.0) return diff.cwiseAbs().sum();
  return std::pow(diff.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

DistortionReport distortion(const FiniteMetric& m, const Coords& coords, double p) {
  const auto start = std::chrono::steady_clock::now();
  check_rows(m, coords);
  if (m.size() < 2) throw InvalidInput("distortion needs at least two points");
  DistortionReport r;
  r.p = p;
  r.lipschitz = -kInf;
  r.contraction = kInf;
  for (PointId x = 0; x < m.size(); ++x)
    for (PointId y = x + 1; y < m.size(); ++y) {
      const double ratio = lp_distance(coords, x, y, p) / m(x, y);
      if (ratio > r.lipschitz) {
        r.lipschitz = ratio;
        r.argmax = {x, y};
      }
      if (ratio < r.contraction) {
        r.contraction = ratio;
        r.argmin = {x, y};
      }
    }
  r.degenerate = !(r.contraction > 0.0);
  r.distortion = r.degenerate ? kInf : r.lipschitz / r.contraction;
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<PairRatio> pair_ratios(const FiniteMetric& m, const Coords& coords, double p) {
  check_rows(m, coords);
  std::vector<PairRatio> out;
  out.reserve(m.size() * (m.size() - 1) / 2);
  for (PointId x = 0; x < m.size(); ++x)
    for (PointId y = x + 1; y < m.size(); ++y) {
      const double image = lp_distance(coords, x, y, p);
      out.push_back({x, y, m(x, y), image, image / m(x, y)});
    }
  return out;
}

double affine_hull_distance(const Coords& coords, PointId x, const PointSet& Y) {
  if (Y.empty()) throw InvalidInput("affine_hull_distance: Y must be nonempty");
  if (std::find(Y.begin(), Y.end(), x) != Y.end()) throw InvalidInput("affine_hull_distance: x lies in Y");
  const auto k = static_cast<Eigen::Index>(Y.size());
  Eigen::MatrixXd A(k, coords.cols());
  for (Eigen::Index i = 0; i < k; ++i) A.row(i) = coords.row(static_cast<Eigen::Index>(Y[static_cast<std::size_t>(i)]));
  const Eigen::VectorXd g = coords.row(static_cast<Eigen::Index>(x)).transpose();
  const Eigen::MatrixXd G = A * A.transpose();
  const Eigen::VectorXd cross = A * g;
  if (!(G.trace() > 0.0)) return g.norm();
  const double ridge = 1e-12 * G.trace() / static_cast<double>(k);
  Eigen::MatrixXd reg = G;
  reg.diagonal().array() += ridge;
  const Eigen::VectorXd c = reg.ldlt().solve(cross);
  return (g - A.transpose() * c).norm();
}

double affine_hull_ratio(const FiniteMetric& m, const Coords& coords, PointId x, const PointSet& Y) {
  check_rows(m, coords);
  return affine_hull_distance(coords, x, Y) / m.distance_to_set(x, Y);
}

SpanDistance::SpanDistance(const Coords& coords) : gram_(coords * coords.transpose()) {}

double SpanDistance::operator()(PointId x, const PointSet& Y) const {
  if (Y.empty()) throw InvalidInput("SpanDistance: Y must be nonempty");
  const auto k = static_cast<Eigen::Index>(Y.size());
  Eigen::MatrixXd G(k, k);
  Eigen::VectorXd cross(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto yi = static_cast<Eigen::Index>(Y[static_cast<std::size_t>(i)]);
    cross(i) = gram_(yi, static_cast<Eigen::Index>(x));
    for (Eigen::Index j = 0; j < k; ++j) G(i, j) = gram_(yi, static_cast<Eigen::Index>(Y[static_cast<std::size_t>(j)]));
  }
  const auto xi = static_cast<Eigen::Index>(x);
  return span_residual(G, cross, gram_(xi, xi));
}

double simplex_volume(const Coords& coords, const PointSet& S) {
  if (S.size() < 2) throw InvalidInput("simplex_volume needs at least two points");
  const auto k = static_cast<Eigen::Index>(S.size() - 1);
  Eigen::MatrixXd E(k, coords.cols());
  const auto base = coords.row(static_cast<Eigen::Index>(S[0]));
  for (Eigen::Index i = 0; i < k; ++i) E.row(i) = coords.row(static_cast<Eigen::Index>(S[static_cast<std::size_t>(i) + 1])) - base;
  const double det = (E * E.transpose()).determinant();
  double fact = 1.0;
  for (Eigen::Index i = 2; i <= k; ++i) fact *= static_cast<double>(i);
  return std::sqrt(std::max(det, 0.0)) / fact;
}

double tree_volume(const FiniteMetric& m, const PointSet& S) {
  if (S.size() < 2) throw InvalidInput("tree_volume needs at least two points");
  const std::size_t k = S.size();
  std::vector<double> best(k, kInf);
  std::vector<char> in(k, 0);
  best[0] = 0.0;
  double product = 1.0;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i)
      if (!in[i] && (pick == k || best[i] < best[pick])) pick = i;
    in[pick] = 1;
    if (step > 0) product *= best[pick];
    for (std::size_t i = 0; i < k; ++i)
      if (!in[i]) best[i] = std::min(best[i], m(S[pick], S[i]));
  }
  return product;
}

EtaReport volume_eta_report(const FiniteMetric& m, const Coords& coords, std::size_t k, std::size_t subsets,
                            std::uint64_t seed) {
  check_rows(m, coords);
  const std::size_t n = m.size();
  if (k < 2 || k > n) throw InvalidInput("volume_eta_report: k must lie in [2, n]");
  const auto lip = distortion(m, coords, 2.0).lipschitz;
  if (lip > 1.0 + 1e-9) throw InvalidInput("volume_eta_report: map is not 1-Lipschitz into l_2 (constant " +
                                           std::to_string(lip) + ")");
  EtaReport r;
  r.k = k;
  r.subsets = subsets;
  r.lipschitz = lip;
  r.affine_floor = kInf;
  const SpanDistance span(coords);
  Rng rng(seed);
  std::vector<PointId> pool(n);
  std::vector<double> etas;
  etas.reserve(subsets);
  for (std::size_t s = 0; s < subsets; ++s) {
    std::iota(pool.begin(), pool.end(), PointId{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    PointSet S(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(S.begin(), S.end());
    const double vol = simplex_volume(coords, S);
    const double eta = vol > 0.0 ? std::pow(tree_volume(m, S) / vol, 1.0 / static_cast<double>(k - 1)) : kInf;
    if (std::isinf(eta)) ++r.infinite;
    etas.push_back(eta);
    for (std::size_t i = 0; i < k; ++i) {
      PointSet rest;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) rest.push_back(S[j]);
      r.affine_floor = std::min(r.affine_floor, span(S[i], rest) / m.distance_to_set(S[i], rest));
    }
  }
  std::sort(etas.begin(), etas.end());
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    if (etas.empty()) break;
    const auto idx = static_cast<std::size_t>(std::lround(q * static_cast<double>(etas.size() - 1)));
    r.eta_quantiles.push_back(etas[idx]);
  }
  if (subsets == 0) r.affine_floor = 0.0;
  return r;
}

double exact_padding_oracle(const FiniteMetric& m, double delta, PointId x, double pad) {
  const std::size_t n = m.size();
  if (n > 8) throw InvalidInput("exact_padding_oracle: refusing n > 8");
  if (x >= n) throw InvalidInput("exact_padding_oracle: point out of range");
  if (!(delta > 0.0)) throw InvalidInput("exact_padding_oracle: delta must be positive");
  const double radius = pad * delta;
  PointSet ball_x;
  for (PointId y = 0; y < n; ++y)
    if (m(x, y) < radius) ball_x.push_back(y);

  // Assignments only change when alpha * delta crosses a pairwise distance.
  std::vector<double> cuts{0.25, 0.5};
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b) {
      const double t = m(a, b) / delta;
      if (t > 0.25 && t < 0.5) cuts.push_back(t);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<PointId> perm(n);
  std::iota(perm.begin(), perm.end(), PointId{0});
  // Separate sums keep the all-or-nothing cases exactly 0 and 1.
  double padded = 0.0, cut = 0.0;
  auto center = [&](PointId y, double r) {
    for (PointId c : perm)
      if (m(c, y) < r) return c;
    return y;
  };
  do {
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double r = 0.5 * (cuts[i] + cuts[i + 1]) * delta;
      const PointId cx = center(x, r);
      const bool inside =
          std::all_of(ball_x.begin(), ball_x.end(), [&](PointId y) { return center(y, r) == cx; });
      (inside ? padded : cut) += cuts[i + 1] - cuts[i];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return padded / (padded + cut);
}

}  // namespace mdembed

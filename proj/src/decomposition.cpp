#include "mdembed/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mdembed/io.hpp"
#include "mdembed/rng.hpp"

namespace mdembed {

ScaleRange scale_range(const FiniteMetric& m) {
  if (m.size() < 2) return {-10, 3};
  return {std::ilogb(m.min_distance()) - 10,
          static_cast<int>(std::ceil(std::log2(m.diameter()))) + 3};
}

StochasticPartition ckr_partition(const NeighborIndex& index, double delta, std::uint64_t seed) {
  if (!(delta > 0.0)) throw InvalidInput("ckr_partition: delta must be positive");
  const FiniteMetric& m = index.metric();
  const std::size_t n = m.size();
  Rng rng(seed);
  const double alpha = 0.25 + 0.25 * rng.uniform();
  std::vector<PointId> perm(n);
  std::iota(perm.begin(), perm.end(), PointId{0});
  rng.shuffle(perm);
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[perm[r]] = r;

  const double radius = alpha * delta;
  std::vector<std::size_t> center(n);
  for (PointId x = 0; x < n; ++x) {
    const auto ord = index.order(x);
    const auto row = m.row(x);
    // x itself is always inside its own ball, so a center exists.
    PointId best = x;
    for (std::size_t k = 0; k < n && row[ord[k]] < radius; ++k)
      if (rank[ord[k]] < rank[best]) best = ord[k];
    center[x] = best;
  }
  StochasticPartition p;
  static_cast<Partition&>(p) = Partition::from_labels(center);
  p.delta = delta;
  p.alpha = alpha;
  p.seed = seed;
  return p;
}

StochasticPartition ckr_partition(const FiniteMetric& m, double delta, std::uint64_t seed) {
  const NeighborIndex index(m);
  return ckr_partition(index, delta, seed);
}

std::string dump_partition(const StochasticPartition& p) {
  std::ostringstream os;
  os << "delta " << format_real(p.delta) << " alpha " << format_real(p.alpha) << " seed " << p.seed << "\n";
  for (std::size_t c = 0; c < p.clusters.size(); ++c) {
    os << "cluster " << c << ":";
    for (PointId x : p.clusters[c]) os << " " << x;
    os << "\n";
  }
  return os.str();
}

double epsilon_mu(const FiniteMetric& m, const PointMeasure& mu, PointId x, int u) {
  const double outer = ball_mass(m, mu, x, std::ldexp(1.0, u));
  const double inner = ball_mass(m, mu, x, std::ldexp(1.0, u - 3));
  return 1.0 / (16.0 + 16.0 * std::log(outer / inner));
}

double uniform_padding_value(std::size_t lambda) {
  return 1.0 / (16.0 + 48.0 * std::log(static_cast<double>(std::max<std::size_t>(lambda, 1))));
}

PaddingFunction PaddingFunction::from_measure(const FiniteMetric& m, const PointMeasure& mu) {
  return PaddingFunction("measure", [m, mu](PointId x, int u) { return epsilon_mu(m, mu, x, u); });
}

PaddingFunction PaddingFunction::uniform(double value) {
  if (!(value > 0.0 && value <= 1.0)) throw InvalidInput("uniform padding must lie in (0, 1]");
  return PaddingFunction("uniform", [value](PointId, int) { return value; });
}

std::pair<int, int> delta_epsilon_window(double d) {
  const double low = d / 32.0;
  int lo = std::ilogb(low);
  if (std::ldexp(1.0, lo) < low) ++lo;
  const int hi = std::ilogb(d / 2.0);
  return {lo, hi};
}

double delta_epsilon(const PaddingFunction& eps, const FiniteMetric& m, PointId x, PointId y) {
  if (x == y) throw InvalidInput("delta_epsilon requires distinct points");
  const auto [lo, hi] = delta_epsilon_window(m(x, y));
  double best = std::numeric_limits<double>::infinity();
  for (int u = lo; u <= hi; ++u) best = std::min(best, eps(x, u));
  return best;
}

double v_mu(const FiniteMetric& m, const PointMeasure& mu, PointId x, PointId y) {
  if (x == y) throw InvalidInput("v_mu requires distinct points");
  const double d = m(x, y);
  auto side = [&](PointId z) {
    return std::log(ball_mass(m, mu, z, 2.0 * d) / ball_mass(m, mu, z, d / 512.0));
  };
  return std::max(side(x), side(y));
}

std::vector<double> padding_profile(const FiniteMetric& m, int u, const std::vector<double>& pads,
                                    std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidInput("padding_profile: trials must be >= 1");
  if (pads.size() != m.size()) throw InvalidInput("padding_profile: one pad per point required");
  const NeighborIndex index(m);
  const std::size_t n = m.size();
  const double delta = std::ldexp(1.0, u);
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto p = ckr_partition(index, delta, derive_seed(seed, {static_cast<std::int64_t>(trial)}));
    for (PointId x = 0; x < n; ++x) {
      const double r = pads[x] * delta;
      const auto ord = index.order(x);
      const auto row = m.row(x);
      bool inside = true;
      for (std::size_t k = 0; k < n && row[ord[k]] < r; ++k)
        if (!p.same_cluster(x, ord[k])) {
          inside = false;
          break;
        }
      hits[x] += inside ? 1 : 0;
    }
  }
  std::vector<double> out(n);
  for (PointId x = 0; x < n; ++x) out[x] = static_cast<double>(hits[x]) / static_cast<double>(trials);
  return out;
}

double padding_probability(const FiniteMetric& m, PointId x, int u, double pad, std::size_t trials,
                           std::uint64_t seed) {
  if (!(pad > 0.0 && pad <= 1.0)) throw InvalidInput("padding_probability: pad must lie in (0, 1]");
  if (x >= m.size()) throw InvalidInput("padding_probability: point out of range");
  std::vector<double> pads(m.size(), pad);
  return padding_profile(m, u, pads, trials, seed)[x];
}

}  // namespace mdembed

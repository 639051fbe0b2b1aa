#include "mdembed/measured_descent.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mdembed/rng.hpp"

namespace mdembed {

namespace {

enum SeedTag : std::int64_t {
  kTagPartition = 1,
  kTagClusterBit = 2,
  kTagSingletonBit = 3,
  kTagWholeBit = 4,
  kTagSample = 5,
  kTagBourgain = 6,
};

// Smallest distance r from x at which the closed ball reaches mass 2^t,
// expressed as kappa; see kappa() for the sentinel convention.
int kappa_scan(const NeighborIndex& index, const PointMeasure& mu, const ScaleRange& scales, PointId x, int t) {
  const auto ord = index.order(x);
  const auto row = index.metric().row(x);
  const double threshold = std::ldexp(1.0, t);
  const std::size_t n = ord.size();
  double cum = 0.0;
  std::size_t k = 0;
  while (k < n) {
    const double r = row[ord[k]];
    while (k < n && row[ord[k]] == r) cum += mu(ord[k++]);
    if (cum >= threshold) {
      // mu(B(x, 2^k)) < 2^t exactly when 2^k <= r.
      if (r == 0.0) return scales.lo - 7;
      return std::ilogb(r);
    }
  }
  return scales.hi + 7;
}

// kappa(x, t) for all points and all levels of the window, [t * n + x].
std::vector<int> kappa_table(const NeighborIndex& index, const PointMeasure& mu, const ScaleWindows& w) {
  const std::size_t n = index.metric().size();
  std::vector<int> table(w.levels.size() * n);
  for (std::size_t ti = 0; ti < w.levels.size(); ++ti)
    for (PointId x = 0; x < n; ++x) table[ti * n + x] = kappa_scan(index, mu, w.scales, x, w.levels[ti]);
  return table;
}

// Distance from x to the set flagged in `in`; 0 when the set is empty.
double distance_to_members(const NeighborIndex& index, PointId x, const char* in) {
  const auto ord = index.order(x);
  for (PointId y : ord)
    if (in[y]) return index.metric()(x, y);
  return 0.0;
}

// One joint draw of all witness sets, given precomputed kappa values.
std::vector<char> draw_witnesses(const NeighborIndex& index, const ScaleWindows& w, const std::vector<int>& kappas,
                                 std::uint64_t seed) {
  const std::size_t n = index.metric().size();
  const std::size_t levels = w.levels.size();
  std::map<int, StochasticPartition> partitions;
  auto bit = [&](int u, PointId x) -> bool {
    if (u < w.scales.lo) return derive_seed(seed, {kTagSingletonBit, u, static_cast<std::int64_t>(x)}) & 1;
    if (u > w.scales.hi) return derive_seed(seed, {kTagWholeBit, u}) & 1;
    auto it = partitions.find(u);
    if (it == partitions.end())
      it = partitions.emplace(u, ckr_partition(index, std::ldexp(1.0, u), derive_seed(seed, {kTagPartition, u})))
               .first;
    const auto cluster = static_cast<std::int64_t>(it->second.assignment[x]);
    return derive_seed(seed, {kTagClusterBit, u, cluster}) & 1;
  };
  std::vector<char> members(w.offsets.size() * levels * n);
  for (std::size_t ii = 0; ii < w.offsets.size(); ++ii)
    for (std::size_t ti = 0; ti < levels; ++ti)
      for (PointId x = 0; x < n; ++x) {
        const int u = kappas[ti * n + x] - w.offsets[ii];
        members[(ii * levels + ti) * n + x] = bit(u, x) ? 0 : 1;
      }
  return members;
}

double block_scale(double p, std::size_t count) {
  if (std::isinf(p)) return 1.0;
  return std::pow(static_cast<double>(count), -1.0 / p);
}

void check_p(double p) {
  if (!(p >= 1.0)) throw InvalidInput("norm exponent p must lie in [1, inf]");
}

}  // namespace

int ceil_log2(double phi) {
  int t = 0;
  while (std::ldexp(1.0, t) < phi) ++t;
  return t;
}

ScaleWindows make_windows(const FiniteMetric& m, const PointMeasure& mu) {
  if (mu.size() != m.size()) throw InvalidInput("measure and metric sizes differ");
  ScaleWindows w;
  for (int i = -6; i <= 3; ++i) w.offsets.push_back(i);
  const int top = ceil_log2(aspect_ratio(mu));
  for (int t = 0; t <= top; ++t) w.levels.push_back(t);
  w.scales = scale_range(m);
  return w;
}

int kappa(const FiniteMetric& m, const PointMeasure& mu, PointId x, int t) {
  if (mu.size() != m.size()) throw InvalidInput("measure and metric sizes differ");
  const NeighborIndex index(m);
  return kappa_scan(index, mu, scale_range(m), x, t);
}

PointSet WitnessFamily::set(std::size_t i, std::size_t t) const {
  PointSet out;
  for (PointId x = 0; x < n; ++x)
    if (member(i, t, x)) out.push_back(x);
  return out;
}

WitnessFamily sample_witness_sets(const FiniteMetric& m, const PointMeasure& mu, const ScaleWindows& windows,
                                  std::uint64_t seed) {
  const NeighborIndex index(m);
  const auto kappas = kappa_table(index, mu, windows);
  WitnessFamily fam;
  fam.windows = windows;
  fam.n = m.size();
  fam.members = draw_witnesses(index, windows, kappas, seed);
  return fam;
}

std::size_t default_samples(std::size_t n) {
  return std::max<std::size_t>(1, 8 * static_cast<std::size_t>(ceil_log2(static_cast<double>(n))));
}

FrechetEmbedding embed_measured_descent(const FiniteMetric& m, const PointMeasure& mu, double p,
                                        std::size_t samples, std::uint64_t seed) {
  check_p(p);
  if (samples == 0) throw InvalidInput("samples must be >= 1");
  const NeighborIndex index(m);
  const ScaleWindows w = make_windows(m, mu);
  const auto kappas = kappa_table(index, mu, w);
  const std::size_t n = m.size();
  const std::size_t block = w.offsets.size() * w.levels.size();
  const double scale = block_scale(p, samples);

  FrechetEmbedding e;
  e.coords.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(samples * block));
  e.column_scale.assign(samples * block, scale);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto members = draw_witnesses(index, w, kappas, derive_seed(seed, {kTagSample, static_cast<std::int64_t>(s)}));
    for (std::size_t b = 0; b < block; ++b) {
      const char* in = members.data() + b * n;
      const auto col = static_cast<Eigen::Index>(s * block + b);
      for (PointId x = 0; x < n; ++x)
        e.coords(static_cast<Eigen::Index>(x), col) = scale * distance_to_members(index, x, in);
    }
  }
  e.p = p;
  e.method = "measured-descent";
  e.seed = seed;
  e.samples = samples;
  e.phi_mu = aspect_ratio(mu);
  return e;
}

FrechetEmbedding direct_sum(std::vector<FrechetEmbedding> parts, std::string method) {
  if (parts.empty()) throw InvalidInput("direct_sum of nothing");
  FrechetEmbedding out;
  const Eigen::Index n = parts.front().coords.rows();
  Eigen::Index k = 0;
  for (const auto& part : parts) {
    if (part.coords.rows() != n) throw InvalidInput("direct_sum: point counts differ");
    k += part.coords.cols();
  }
  out.coords.resize(n, k);
  Eigen::Index at = 0;
  for (const auto& part : parts) {
    out.coords.middleCols(at, part.coords.cols()) = part.coords;
    at += part.coords.cols();
    out.column_scale.insert(out.column_scale.end(), part.column_scale.begin(), part.column_scale.end());
  }
  const auto& head = parts.front();
  out.p = head.p;
  out.seed = head.seed;
  out.samples = head.samples;
  out.phi_mu = head.phi_mu;
  out.method = std::move(method);
  return out;
}

FrechetEmbedding embed_theorem_pad(const FiniteMetric& m, double p, std::size_t samples, std::uint64_t seed) {
  const auto mu = PointMeasure::counting(m.size());
  const std::size_t lambda = doubling_constant(m);
  // The CKR bundle is also a uniform bundle with padding
  // 1/(16 + 48 log lambda); phi_2 is an independent draw from it.
  auto phi1 = embed_measured_descent(m, mu, p, samples, derive_seed(seed, {11}));
  auto phi2 = embed_measured_descent(m, mu, p, samples, derive_seed(seed, {12}));
  auto out = direct_sum({std::move(phi1), std::move(phi2)}, "theorem-pad");
  out.seed = seed;
  out.params = {{"lambda_hat", static_cast<double>(lambda)},
                {"uniform_padding", uniform_padding_value(lambda)}};
  return out;
}

ScaleRange bourgain_scales(const FiniteMetric& m) {
  if (m.size() < 2) return {0, 0};
  return {std::ilogb(m.min_distance()), static_cast<int>(std::ceil(std::log2(m.diameter())))};
}

FrechetEmbedding embed_bourgain_small(const FiniteMetric& m, double p, std::size_t samples, std::uint64_t seed) {
  check_p(p);
  if (samples == 0) throw InvalidInput("samples must be >= 1");
  const NeighborIndex index(m);
  const std::size_t n = m.size();
  const auto levels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)))));
  const ScaleRange scales = bourgain_scales(m);
  const auto scale_count = static_cast<std::size_t>(scales.hi - scales.lo + 1);
  const std::size_t cols = samples * scale_count * levels;
  const double scale = block_scale(p, cols);

  FrechetEmbedding e;
  e.coords.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  e.column_scale.assign(cols, scale);
  std::vector<char> in(n);
  Eigen::Index col = 0;
  for (std::size_t s = 0; s < samples; ++s)
    for (int u = scales.lo; u <= scales.hi; ++u) {
      const double cap = std::ldexp(1.0, u) / 4.0;
      for (std::size_t t = 1; t <= levels; ++t, ++col) {
        Rng rng(derive_seed(seed, {kTagBourgain, static_cast<std::int64_t>(s), u, static_cast<std::int64_t>(t)}));
        const double keep = std::exp(-static_cast<double>(t));
        bool any = false;
        for (PointId x = 0; x < n; ++x) {
          in[x] = rng.uniform() < keep ? 1 : 0;
          any = any || in[x];
        }
        for (PointId x = 0; x < n; ++x) {
          // d(x, empty) = +inf, so the cap applies.
          const double d = any ? distance_to_members(index, x, in.data()) : cap;
          e.coords(static_cast<Eigen::Index>(x), col) = scale * std::min(d, cap);
        }
      }
    }
  e.p = p;
  e.method = "bourgain-small";
  e.seed = seed;
  e.samples = samples;
  e.phi_mu = static_cast<double>(n);
  return e;
}

FrechetEmbedding embed_volume(const FiniteMetric& m, std::size_t samples, std::uint64_t seed) {
  const auto mu = PointMeasure::counting(m.size());
  const double phi = aspect_ratio(mu);
  const double norm = phi > 1.0 ? std::sqrt(50.0 * std::log(phi)) : 1.0;
  auto g1 = embed_measured_descent(m, mu, 2.0, samples, derive_seed(seed, {21}));
  auto g2 = embed_measured_descent(m, mu, 2.0, samples, derive_seed(seed, {22}));
  auto g3 = embed_bourgain_small(m, 2.0, samples, derive_seed(seed, {23}));
  for (auto* g : {&g1, &g2}) {
    g->coords /= norm;
    for (double& c : g->column_scale) c /= norm;
  }
  auto out = direct_sum({std::move(g1), std::move(g2), std::move(g3)}, "volume");
  const double third = 1.0 / std::sqrt(3.0);
  out.coords *= third;
  for (double& c : out.column_scale) c *= third;
  out.seed = seed;
  out.normalization = norm;
  out.params = {{"sum_scale", third}};
  return out;
}

}  // namespace mdembed

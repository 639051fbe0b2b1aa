#include "mdembed/linf_embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "mdembed/measured_descent.hpp"

namespace mdembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Connected components of the subgraph keeping only edges inside one label
// class. Component ids are numbered by smallest vertex.
std::vector<std::size_t> induced_components(const WeightedGraph& g, const std::vector<std::size_t>& labels) {
  const std::size_t n = g.size();
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(n, unset);
  std::size_t next = 0;
  std::vector<PointId> stack;
  for (PointId root = 0; root < n; ++root) {
    if (comp[root] != unset) continue;
    comp[root] = next;
    stack.assign(1, root);
    while (!stack.empty()) {
      const PointId v = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : g.neighbors(v))
        if (comp[nb.to] == unset && labels[nb.to] == labels[v]) {
          comp[nb.to] = next;
          stack.push_back(nb.to);
        }
    }
    ++next;
  }
  return comp;
}

// Distance from the lowest-index vertex of each component, measured inside
// the component.
std::vector<double> root_distances(const WeightedGraph& g, const std::vector<std::size_t>& comp) {
  const std::size_t n = g.size();
  std::vector<double> dist(n, kInf);
  std::vector<char> rooted(n, 0);
  using Item = std::pair<double, PointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<char> seen_comp(n, 0);
  for (PointId v = 0; v < n; ++v)
    if (!seen_comp[comp[v]]) {
      seen_comp[comp[v]] = 1;
      dist[v] = 0.0;
      heap.push({0.0, v});
    }
  while (!heap.empty()) {
    const auto [dv, v] = heap.top();
    heap.pop();
    if (dv > dist[v]) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (comp[nb.to] != comp[v]) continue;
      const double cand = dv + nb.w;
      if (cand < dist[nb.to]) {
        dist[nb.to] = cand;
        heap.push({cand, nb.to});
      }
    }
  }
  return dist;
}

double scale_bound(double a, double ratio, int u) { return a * std::pow(ratio, u); }

// Bitmask rows: bit i of row x is set when B(x, radius) lies inside P_i(x).
std::vector<std::uint64_t> padded_masks(const NeighborIndex& index, const std::vector<const Partition*>& parts,
                                        double radius, std::size_t words) {
  const FiniteMetric& m = index.metric();
  const std::size_t n = m.size();
  std::vector<std::uint64_t> masks(n * words, 0);
  for (PointId x = 0; x < n; ++x) {
    const auto ord = index.order(x);
    const auto row = m.row(x);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      bool inside = true;
      for (std::size_t k = 0; k < n && row[ord[k]] < radius; ++k)
        if (!parts[i]->same_cluster(x, ord[k])) {
          inside = false;
          break;
        }
      if (inside) masks[x * words + i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  return masks;
}

std::size_t unpadded_pairs(const NeighborIndex& index, const std::vector<const Partition*>& parts, double radius) {
  const std::size_t n = index.metric().size();
  const std::size_t words = (parts.size() + 63) / 64;
  const auto masks = padded_masks(index, parts, radius, words);
  std::size_t bad = 0;
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      bool shared = false;
      for (std::size_t w = 0; w < words && !shared; ++w) shared = (masks[x * words + w] & masks[y * words + w]) != 0;
      bad += shared ? 0 : 1;
    }
  return bad;
}

void check_diameters(const FiniteMetric& m, const Partition& p, double bound, int scale, const char* stage) {
  for (const PointSet& c : p.clusters) {
    const double diam = m.set_diameter(c);
    if (!(diam < bound)) {
      std::ostringstream os;
      os << stage << ": cluster of " << c.size() << " points at scale " << scale << " has diameter " << diam
         << " >= bound " << bound << "; increase c";
      throw DiameterViolation(os.str(), scale, c, diam, bound);
    }
  }
}

int ceil_log2_size(std::size_t k) {
  int h = 0;
  while ((std::size_t{1} << h) < k) ++h;
  return h;
}

PsiMap build_psi(const NestedPartitionFamily& fam, const NeighborIndex& index, int octave, double D) {
  const FiniteMetric& m = index.metric();
  const std::size_t n = m.size();
  std::vector<std::vector<double>> psi(n);
  PsiMap out;
  for (int u = fam.lo + 1; u <= fam.hi; ++u) {
    const Partition& parent = fam.at(u);
    const Partition& child = fam.at(u - 1);
    const double cap = std::ldexp(1.0, octave) * std::pow(D, u - 1);
    // Children of each parent cluster, in order of their smallest member.
    std::vector<std::vector<std::size_t>> kids(parent.size());
    for (std::size_t c = 0; c < child.size(); ++c) kids[parent.assignment[child.clusters[c].front()]].push_back(c);

    for (std::size_t a = 0; a < parent.size(); ++a) {
      const std::size_t size = parent.clusters[a].size();
      PsiNode node{u, size, psi_dimension(size), {}};
      const int top = ceil_log2_size(size);
      std::vector<std::uint64_t> next_in_class(static_cast<std::size_t>(top) + 1, 0);
      for (std::size_t c : kids[a]) {
        const PointSet& members = child.clusters[c];
        const int h = ceil_log2_size(members.size());
        const std::size_t len = 2 * static_cast<std::size_t>(top - h);
        const std::uint64_t j = next_in_class[static_cast<std::size_t>(h)]++;
        if (len < 64 && j >= (std::uint64_t{1} << len))
          throw Error("psi_map: sign strings exhausted in size class " + std::to_string(h));
        PsiChild rec{members.size(), h, std::vector<int>(len), members.front()};
        // Counting order, most significant bit first; bit 0 -> -1, 1 -> +1.
        for (std::size_t l = 0; l < len; ++l) {
          const std::size_t shift = len - 1 - l;
          rec.signs[l] = (shift < 64 && ((j >> shift) & 1)) ? 1 : -1;
        }
        for (PointId x : members) {
          double boundary = kInf;  // d(x, X \ A_i)
          for (PointId y : index.order(x))
            if (!child.same_cluster(x, y)) {
              boundary = m(x, y);
              break;
            }
          const double mag = std::min(boundary, cap);
          for (int sgn : rec.signs) psi[x].push_back(sgn * mag);
        }
        node.children.push_back(std::move(rec));
      }
      out.nodes.push_back(std::move(node));
    }
  }
  const std::size_t dim = psi_dimension(n);
  out.coords.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (PointId x = 0; x < n; ++x) {
    if (psi[x].size() != dim) throw Error("psi_map: family is not a nested chain from singletons to X");
    for (std::size_t j = 0; j < dim; ++j)
      out.coords(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(j)) = psi[x][j];
  }
  return out;
}

std::vector<NestedPartitionFamily> build_families(const WeightedGraph& g, const NeighborIndex& index, int s,
                                                  double a, double T, int octave) {
  const FiniteMetric& m = index.metric();
  const std::size_t n = m.size();
  const double ratio = 4.0 * T;
  const ScaleRange range = nested_scale_range(m, a, ratio);
  std::size_t count = 1;
  for (int r = 0; r < s; ++r) count *= 3;

  std::vector<NestedPartitionFamily> fams(count);
  for (auto& f : fams) {
    f.lo = range.lo;
    f.hi = range.hi;
    f.base = a;
    f.ratio = ratio;
    f.octave = octave;
    f.levels.resize(static_cast<std::size_t>(range.hi - range.lo + 1));
    f.levels.front() = Partition::singletons(n);
    f.levels.back() = Partition::whole(n);
  }
  for (int u = range.lo + 1; u < range.hi; ++u) {
    const double bound = scale_bound(a, ratio, u);
    auto chopped = kpr_partitions(g, s, bound / T);
    for (std::size_t i = 0; i < count; ++i) {
      check_diameters(m, chopped[i], bound, u, "kpr");
      // Lift every finer cluster that straddles a coarse boundary.
      const Partition& fine = fams[i].at(u - 1);
      std::vector<std::size_t> labels(n);
      for (std::size_t c = 0; c < fine.size(); ++c) {
        const PointSet& members = fine.clusters[c];
        const std::size_t home = chopped[i].assignment[members.front()];
        const bool straddles = std::any_of(members.begin(), members.end(),
                                           [&](PointId x) { return chopped[i].assignment[x] != home; });
        for (PointId x : members) labels[x] = straddles ? n + c : chopped[i].assignment[x];
      }
      fams[i].levels[static_cast<std::size_t>(u - range.lo)] = Partition::from_labels(labels);
    }
  }
  for (int u = range.lo + 1; u <= range.hi; ++u) {
    const double bound = scale_bound(a, ratio, u);
    std::vector<const Partition*> level;
    for (auto& f : fams) {
      check_diameters(m, f.at(u), bound, u, "nested");
      level.push_back(&f.at(u));
    }
    const double radius = bound / (2.0 * T);
    if (const std::size_t bad = unpadded_pairs(index, level, radius); bad > 0)
      throw Error("nest_partitions: " + std::to_string(bad) + " pairs unpadded at scale " + std::to_string(u));
  }
  return fams;
}

}  // namespace

std::vector<Partition> kpr_partitions(const WeightedGraph& g, int s, double delta) {
  if (s < 1) throw InvalidInput("kpr_partitions: s must be >= 1");
  if (!(delta > 0.0)) throw InvalidInput("kpr_partitions: delta must be positive");
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> family{std::vector<std::size_t>(n, 0)};
  for (int round = 0; round < s; ++round) {
    std::vector<std::vector<std::size_t>> next;
    next.reserve(family.size() * 3);
    for (const auto& labels : family) {
      const auto comp = induced_components(g, labels);
      const auto dist = root_distances(g, comp);
      for (int offset = 0; offset < 3; ++offset) {
        std::vector<std::size_t> chopped(n);
        for (PointId v = 0; v < n; ++v) {
          const auto band = static_cast<std::size_t>(std::floor((dist[v] - 3.0 * offset * delta) / (9.0 * delta)) + 1.0);
          chopped[v] = comp[v] * (n + 2) + band;
        }
        next.push_back(std::move(chopped));
      }
    }
    family = std::move(next);
  }
  std::vector<Partition> out;
  out.reserve(family.size());
  for (const auto& labels : family) {
    const auto comp = induced_components(g, labels);
    out.push_back(Partition::from_labels(comp));
  }
  return out;
}

std::size_t count_unpadded_pairs(const FiniteMetric& m, const std::vector<Partition>& parts, double radius) {
  const NeighborIndex index(m);
  std::vector<const Partition*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  return unpadded_pairs(index, ptrs, radius);
}

double NestedPartitionFamily::bound(int u) const { return scale_bound(base, ratio, u); }

ScaleRange nested_scale_range(const FiniteMetric& m, double a, double ratio) {
  if (m.size() < 2) return {0, 1};
  int hi = 0;
  while (scale_bound(a, ratio, hi) <= m.diameter()) ++hi;
  while (scale_bound(a, ratio, hi - 1) > m.diameter()) --hi;
  int lo = hi;
  while (scale_bound(a, ratio, lo) > m.min_distance()) --lo;
  return {lo, hi};
}

std::vector<NestedPartitionFamily> nest_partitions(const WeightedGraph& g, const FiniteMetric& m, int s, double a,
                                                   double T, int octave) {
  if (!(a > 0.0)) throw InvalidInput("nest_partitions: a must be positive");
  if (!(T > 0.0)) throw InvalidInput("nest_partitions: T must be positive");
  if (g.size() != m.size()) throw InvalidInput("nest_partitions: graph and metric sizes differ");
  const NeighborIndex index(m);
  return build_families(g, index, s, a, T, octave);
}

std::size_t psi_dimension(std::size_t k) { return 2 * static_cast<std::size_t>(ceil_log2_size(k)); }

PsiMap psi_map(const NestedPartitionFamily& fam, const FiniteMetric& m, int octave, double D) {
  const NeighborIndex index(m);
  return build_psi(fam, index, octave, D);
}

std::size_t linf_dimension(std::size_t n, int s, double c) {
  std::size_t families = 1;
  for (int r = 0; r < s; ++r) families *= 3;
  const double D = 4.0 * c * s * s;
  return families * static_cast<std::size_t>(ceil_log2(D) + 1) * psi_dimension(n);
}

LinfEmbedding embed_theorem_yuri(const WeightedGraph& g, int s, double c) {
  if (s < 1) throw InvalidInput("embed_theorem_yuri: s must be >= 1");
  if (!(c > 0.0)) throw InvalidInput("embed_theorem_yuri: c must be positive");
  const FiniteMetric m = metric_from_graph(g);
  const NeighborIndex index(m);
  LinfEmbedding e;
  e.s = s;
  e.c = c;
  e.T = c * s * s;
  e.D = 4.0 * e.T;
  e.K = linf_dimension(m.size(), s, c);
  const int octaves = ceil_log2(e.D);
  std::vector<Coords> blocks;
  for (int oct = 0; oct <= octaves; ++oct) {
    auto fams = build_families(g, index, s, std::ldexp(1.0, oct), e.T, oct);
    for (auto& f : fams) {
      blocks.push_back(build_psi(f, index, oct, e.D).coords);
      e.families.push_back(std::move(f));
    }
  }
  e.coords.resize(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(e.K));
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    e.coords.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  if (static_cast<std::size_t>(at) != e.K) throw Error("embed_theorem_yuri: dimension mismatch");
  e.validated = true;
  return e;
}

bool lower_bound_premise(const LinfEmbedding& e, const FiniteMetric& m, PointId x, PointId y) {
  const double d = m(x, y);
  const auto padded = [&](const Partition& p, PointId z, double r) {
    for (PointId w = 0; w < m.size(); ++w)
      if (m(z, w) < r && !p.same_cluster(z, w)) return false;
    return true;
  };
  const auto level = [](const NestedPartitionFamily& f, int u) -> const Partition* {
    if (u < f.lo || u > f.hi) return nullptr;
    return &f.at(u);
  };
  for (const auto& f : e.families) {
    // Scale u with d in [2^m D^u, 2^{m+1} D^u).
    int u = static_cast<int>(std::floor(std::log(d / f.base) / std::log(f.ratio)));
    while (scale_bound(f.base, f.ratio, u) > d) --u;
    while (scale_bound(f.base, f.ratio, u + 1) <= d) ++u;
    if (!(d < 2.0 * scale_bound(f.base, f.ratio, u))) continue;
    const Partition* at_u = level(f, u);
    const Partition* above = level(f, u + 1);
    if (!at_u || !above || !above->same_cluster(x, y)) continue;
    const double r = 2.0 * scale_bound(f.base, f.ratio, u - 1);
    if (padded(*at_u, x, r) && padded(*at_u, y, r)) return true;
  }
  return false;
}

}  // namespace mdembed

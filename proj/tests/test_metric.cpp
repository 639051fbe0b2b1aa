#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mdembed/io.hpp"
#include "mdembed/metric.hpp"
#include "mdembed/rng.hpp"
#include "oracles.hpp"

using namespace mdembed;

namespace {

FiniteMetric unit_path(std::size_t n) { return as_metric(generate(GeneratorKind::Path, {.n = n}, 0)); }

FiniteMetric equilateral(std::size_t n) { return as_metric(generate(GeneratorKind::Equilateral, {.n = n}, 0)); }

}  // namespace

TEST_CASE("metric validation rejects malformed matrices") {
  CHECK_THROWS_AS(FiniteMetric(2, {0, 1, 2, 0}), InvalidInput);     // asymmetric
  CHECK_THROWS_AS(FiniteMetric(2, {0, 0, 0, 0}), InvalidInput);     // zero distance
  CHECK_THROWS_AS(FiniteMetric(2, {1, 1, 1, 0}), InvalidInput);     // diagonal
  CHECK_THROWS_AS(FiniteMetric(2, {0, -1, -1, 0}), InvalidInput);   // negative
  CHECK_THROWS_AS(FiniteMetric(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}), InvalidInput);  // triangle
  CHECK_THROWS_AS(FiniteMetric(2, {0, 1, 1}), InvalidInput);
  CHECK_NOTHROW(FiniteMetric(3, {0, 1, 2, 1, 0, 1, 2, 1, 0}));
}

TEST_CASE("metric_from_graph examples") {
  SUBCASE("path a-b-c") {
    const auto m = metric_from_graph(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
    CHECK(m(0, 2) == 2.0);
  }
  SUBCASE("single edge") {
    const auto m = metric_from_graph(WeightedGraph(2, {{0, 1, 3.5}}));
    CHECK(m(0, 1) == 3.5);
  }
  SUBCASE("4-cycle") {
    const auto m = metric_from_graph(WeightedGraph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}));
    CHECK(m(0, 2) == 2.0);
    CHECK(m(1, 3) == 2.0);
  }
  SUBCASE("disconnected") {
    try {
      metric_from_graph(WeightedGraph(3, {{0, 1, 1.0}}));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("infinite distance") != std::string::npos);
    }
  }
}

TEST_CASE("metric_from_graph matches Floyd-Warshall on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const std::size_t n = 3 + rng.below(15);
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) edges.push_back({rng.below(v), v, 0.5 + rng.uniform()});
    for (int extra = 0; extra < 10; ++extra) {
      const auto a = rng.below(n), b = rng.below(n);
      if (a != b) edges.push_back({a, b, 0.5 + 3 * rng.uniform()});
    }
    const auto ref = oracle::floyd_warshall(n, edges);
    const auto m = metric_from_graph(WeightedGraph(n, edges));
    for (PointId x = 0; x < n; ++x)
      for (PointId y = 0; y < n; ++y) CHECK(m(x, y) == doctest::Approx(ref[x * n + y]).epsilon(1e-12));
  }
}

TEST_CASE("open balls") {
  const auto eq = equilateral(4);
  CHECK(ball(eq, 0, 1.0) == PointSet{0});
  CHECK(ball(eq, 0, 0.0).empty());
  const auto path = unit_path(5);
  CHECK(ball(path, 2, 1.5).size() == 3);
  SUBCASE("balls are monotone in r and match a direct scan") {
    const auto grid = as_metric(generate(GeneratorKind::Grid2d, {.rows = 4, .cols = 5, .weighted = true}, 3));
    for (PointId x = 0; x < grid.size(); ++x) {
      PointSet prev;
      for (double r = 0.0; r < 8.0; r += 0.375) {
        const auto b = ball(grid, x, r);
        CHECK(b == oracle::naive_ball(grid, x, r));
        CHECK(std::includes(b.begin(), b.end(), prev.begin(), prev.end()));
        prev = b;
      }
    }
  }
}

TEST_CASE("ball_mass and aspect_ratio") {
  const auto eq = equilateral(3);
  const PointMeasure mu({1, 1, 2});
  for (PointId x = 0; x < 3; ++x) CHECK(ball_mass(eq, mu, x, 2.0) == 4.0);
  const auto path = unit_path(6);
  const auto counting = PointMeasure::counting(6);
  CHECK(ball_mass(path, counting, 0, 100.0) == 6.0);
  CHECK(ball_mass(path, counting, 3, 1.0) == 1.0);
  CHECK(aspect_ratio(PointMeasure::counting(8)) == 8.0);
  CHECK(aspect_ratio(mu) == 4.0);
  CHECK(aspect_ratio(PointMeasure({2.5, 2.5, 2.5, 2.5, 2.5})) == 5.0);
  CHECK_THROWS_AS(PointMeasure({1.0, 0.0}), InvalidInput);
}

TEST_CASE("doubling estimate") {
  CHECK(doubling_constant(equilateral(1)) == 1);
  CHECK(doubling_constant(unit_path(2)) <= 2);
  CHECK(doubling_constant(equilateral(7)) == 7);
  CHECK(doubling_constant(unit_path(16)) <= 4);

  SUBCASE("every probe replays as a cover of the ball") {
    for (const auto& m : {unit_path(16), as_metric(generate(GeneratorKind::Grid2d, {.rows = 5, .cols = 5}, 0)),
                          as_metric(generate(GeneratorKind::EuclideanCloud, {.n = 20, .dim = 2}, 4))}) {
      const auto est = doubling_estimate(m, true);
      REQUIRE(!est.probes.empty());
      for (const auto& probe : est.probes) {
        CHECK(probe.centers.size() <= est.lambda);
        // Every open ball of radius in (probe.radius, next distance] equals this closed ball.
        for (PointId y = 0; y < m.size(); ++y) {
          if (m(probe.center, y) > probe.radius) continue;
          bool covered = false;
          for (PointId c : probe.centers) covered = covered || m(c, y) <= probe.radius / 2.0;
          CHECK(covered);
        }
      }
    }
  }
}

TEST_CASE("generators") {
  CHECK(unit_path(3).diameter() == 2.0);
  const auto eq = equilateral(5);
  for (PointId x = 0; x < 5; ++x)
    for (PointId y = 0; y < 5; ++y) CHECK(eq(x, y) == (x == y ? 0.0 : 1.0));

  const auto a = as_metric(generate(GeneratorKind::EuclideanCloud, {.n = 32, .dim = 2}, 7));
  const auto b = as_metric(generate(GeneratorKind::EuclideanCloud, {.n = 32, .dim = 2}, 7));
  CHECK(a.data() == b.data());

  const auto grid = generate(GeneratorKind::Grid2d, {.rows = 3, .cols = 4, .weighted = true}, 1);
  const auto& g = std::get<WeightedGraph>(grid);
  CHECK(g.excluded_minor_order() == 3);
  CHECK(g.size() == 12);
  for (const Edge& e : g.edges()) {
    CHECK(e.w >= 1.0);
    CHECK(e.w <= 2.0);
    CHECK(e.w * 8 == std::floor(e.w * 8));  // dyadic
  }

  const auto cube = as_metric(generate(GeneratorKind::Hypercube, {.dim = 4}, 0));
  for (PointId x = 0; x < 16; ++x)
    for (PointId y = 0; y < 16; ++y) CHECK(cube(x, y) == static_cast<double>(std::popcount(x ^ y)));

  const auto rr = generate(GeneratorKind::RandomRegular, {.n = 20, .degree = 3}, 5);
  const auto& rg = std::get<WeightedGraph>(rr);
  CHECK(rg.is_connected());
  for (PointId v = 0; v < 20; ++v) CHECK(rg.neighbors(v).size() == 3);

  CHECK_THROWS_AS(generate(GeneratorKind::RandomRegular, {.n = 4, .degree = 4}, 0), InvalidInput);
  CHECK_THROWS_AS(generate(GeneratorKind::RandomRegular, {.n = 5, .degree = 3}, 0), InvalidInput);
  CHECK_THROWS_AS(parse_generator_kind("torus"), InvalidInput);

  SUBCASE("every generator output passes metric validation") {
    for (auto kind : {GeneratorKind::Path, GeneratorKind::Grid2d, GeneratorKind::Hypercube,
                      GeneratorKind::RandomRegular, GeneratorKind::EuclideanCloud, GeneratorKind::Equilateral}) {
      GeneratorParams p{.n = 12, .rows = 3, .cols = 4, .dim = 3, .degree = 3, .weighted = true};
      const auto m = as_metric(generate(kind, p, 9));
      CHECK_NOTHROW(FiniteMetric(m.size(), m.data()));
    }
  }
}

TEST_CASE("partition from labels orders clusters by smallest member") {
  const std::vector<std::size_t> labels{7, 3, 7, 9, 3};
  const auto p = Partition::from_labels(labels);
  REQUIRE(p.size() == 3);
  CHECK(p.clusters[0] == PointSet{0, 2});
  CHECK(p.clusters[1] == PointSet{1, 4});
  CHECK(p.clusters[2] == PointSet{3});
  CHECK(p.same_cluster(1, 4));
  CHECK(!p.same_cluster(0, 1));
}

TEST_CASE("file formats round trip") {
  const auto grid = std::get<WeightedGraph>(generate(GeneratorKind::Grid2d, {.rows = 3, .cols = 3, .weighted = true}, 2));
  std::stringstream gs;
  write_edge_list(gs, grid);
  const auto back = read_edge_list(gs);
  CHECK(metric_from_graph(back).data() == metric_from_graph(grid).data());

  const auto cloud = as_metric(generate(GeneratorKind::EuclideanCloud, {.n = 6, .dim = 3}, 1));
  std::stringstream ms;
  write_distance_csv(ms, cloud);
  CHECK(read_distance_csv(ms).data() == cloud.data());

  Coords c(2, 3);
  c << 1.0 / 3.0, -2.5, 1e-300, 4, 5, 6;
  std::stringstream cs;
  write_coords_csv(cs, c);
  CHECK(read_coords_csv(cs) == c);

  std::stringstream bad("0,1\n1,x\n");
  CHECK_THROWS_AS(read_distance_csv(bad), ParseError);
  std::stringstream short_list("graph 3 2\n0 1 1\n");
  CHECK_THROWS_AS(read_edge_list(short_list), ParseError);
  std::stringstream measure("1\n2.5\n");
  CHECK(read_measure(measure).total() == 3.5);
}

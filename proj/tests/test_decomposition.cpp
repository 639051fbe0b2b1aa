#include <cmath>
#include <set>

#include "doctest.h"
#include "mdembed/analysis.hpp"
#include "mdembed/decomposition.hpp"
#include "mdembed/rng.hpp"
#include "oracles.hpp"

using namespace mdembed;

namespace {

FiniteMetric unit_path(std::size_t n) { return as_metric(generate(GeneratorKind::Path, {.n = n}, 0)); }

FiniteMetric two_points(double d) { return FiniteMetric(2, {0, d, d, 0}); }

void check_partition(const FiniteMetric& m, const Partition& p, double delta) {
  std::vector<int> seen(m.size(), 0);
  for (std::size_t c = 0; c < p.size(); ++c) {
    REQUIRE(!p.clusters[c].empty());
    for (PointId x : p.clusters[c]) {
      ++seen[x];
      CHECK(p.assignment[x] == c);
    }
    CHECK(m.set_diameter(p.clusters[c]) < delta);
  }
  for (int s : seen) CHECK(s == 1);
}

}  // namespace

TEST_CASE("ckr partitions are delta-bounded partitions") {
  Rng rng(11);
  const auto metrics = {unit_path(16), as_metric(generate(GeneratorKind::Grid2d, {.rows = 5, .cols = 5}, 0)),
                        oracle::random_metric(10, rng)};
  for (const auto& m : metrics)
    for (int u = -2; u <= 6; ++u)
      for (std::uint64_t seed = 0; seed < 20; ++seed) check_partition(m, ckr_partition(m, std::ldexp(1.0, u), seed), std::ldexp(1.0, u));
}

TEST_CASE("ckr extreme scales") {
  const auto m = as_metric(generate(GeneratorKind::Grid2d, {.rows = 4, .cols = 4, .weighted = true}, 2));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    // alpha * delta < delta / 2 <= min distance: only centers in their balls.
    CHECK(ckr_partition(m, 2.0 * m.min_distance(), seed).size() == m.size());
    // alpha * delta >= delta / 4 > diam: the first center takes everything.
    CHECK(ckr_partition(m, 4.0 * m.diameter() * 1.0001, seed).size() == 1);
  }
  const auto pair = two_points(1.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) CHECK(ckr_partition(pair, 2.0, seed).size() == 2);
}

TEST_CASE("ckr replay is bit-identical") {
  const auto m = as_metric(generate(GeneratorKind::EuclideanCloud, {.n = 30, .dim = 2}, 3));
  const auto a = ckr_partition(m, 0.5, 42);
  const auto b = ckr_partition(m, 0.5, 42);
  CHECK(a.assignment == b.assignment);
  CHECK(a.alpha == b.alpha);
  CHECK(dump_partition(a) == dump_partition(b));
  CHECK(a.alpha >= 0.25);
  CHECK(a.alpha < 0.5);
  const auto dump = dump_partition(a);
  CHECK(dump.rfind("delta 0.5 alpha ", 0) == 0);
  CHECK(dump.find("\ncluster 0:") != std::string::npos);
}

TEST_CASE("epsilon_mu") {
  const auto path = unit_path(9);
  const auto counting = PointMeasure::counting(9);
  // Below the minimum distance both balls are {x}.
  CHECK(epsilon_mu(path, counting, 4, -3) == doctest::Approx(1.0 / 16.0));
  // |B(0,2)| = 2, |B(0,1/4)| = 1.
  CHECK(epsilon_mu(path, counting, 0, 1) == doctest::Approx(1.0 / (16.0 + 16.0 * std::log(2.0))));
  const PointMeasure mu({1.0, std::exp(1.0) - 1.0});
  CHECK(epsilon_mu(two_points(1.0), mu, 0, 1) == doctest::Approx(1.0 / 32.0));
  for (PointId x = 0; x < 9; ++x)
    for (int u = -4; u <= 6; ++u) {
      const double e = epsilon_mu(path, counting, x, u);
      CHECK(e > 0.0);
      CHECK(e <= 1.0 / 16.0);
    }
}

TEST_CASE("delta_epsilon window") {
  const auto w = delta_epsilon_window(32.0);
  CHECK(w.first == 0);
  CHECK(w.second == 4);
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const double d = std::ldexp(0.5 + 4.0 * rng.uniform(), static_cast<int>(rng.below(20)) - 10);
    const auto ref = oracle::window_enumeration(d);
    const auto [lo, hi] = delta_epsilon_window(d);
    REQUIRE(!ref.empty());
    CHECK(lo == ref.front());
    CHECK(hi == ref.back());
    CHECK(hi - lo + 1 >= 4);
  }
}

TEST_CASE("delta_epsilon") {
  const auto m = as_metric(generate(GeneratorKind::Grid2d, {.rows = 5, .cols = 5, .weighted = true}, 8));
  CHECK(delta_epsilon(PaddingFunction::uniform(0.25), m, 0, 7) == 0.25);
  CHECK_THROWS_AS(delta_epsilon(PaddingFunction::uniform(0.25), m, 3, 3), InvalidInput);
  const auto mu = PointMeasure::counting(m.size());
  const auto eps = PaddingFunction::from_measure(m, mu);
  for (PointId x = 0; x < m.size(); ++x)
    for (PointId y = 0; y < m.size(); ++y) {
      if (x == y) continue;
      double ref = oracle::kInf;
      for (int u : oracle::window_enumeration(m(x, y))) ref = std::min(ref, epsilon_mu(m, mu, x, u));
      CHECK(delta_epsilon(eps, m, x, y) == ref);
    }
}

TEST_CASE("v_mu") {
  const auto eq = as_metric(generate(GeneratorKind::Equilateral, {.n = 4}, 0));
  CHECK(v_mu(eq, PointMeasure::counting(4), 0, 1) == doctest::Approx(std::log(4.0)));
  CHECK(v_mu(two_points(1.0), PointMeasure::counting(2), 0, 1) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(v_mu(eq, PointMeasure::counting(4), 2, 2), InvalidInput);
  Rng rng(1);
  const auto m = oracle::random_metric(9, rng);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> mass(9);
    for (double& w : mass) w = std::exp(6.0 * rng.uniform() - 3.0);
    const PointMeasure mu(mass);
    for (PointId x = 0; x < 9; ++x)
      for (PointId y = 0; y < 9; ++y)
        if (x != y) CHECK(v_mu(m, mu, x, y) >= std::log(2.0) - 1e-12);
  }
}

TEST_CASE("uniform padding value") {
  CHECK(uniform_padding_value(1) == doctest::Approx(1.0 / 16.0));
  CHECK(uniform_padding_value(4) == doctest::Approx(1.0 / (16.0 + 48.0 * std::log(4.0))));
  CHECK_THROWS_AS(PaddingFunction::uniform(0.0), InvalidInput);
  CHECK_THROWS_AS(PaddingFunction::uniform(1.5), InvalidInput);
}

TEST_CASE("padding_probability examples") {
  const auto m = unit_path(6);
  CHECK(padding_probability(m, 2, 2, 1.0 / 8.0, 200, 3) == 1.0);  // radius 0.5 ball is {x}
  CHECK(padding_probability(two_points(1.0), 0, 1, 0.9, 500, 3) == 0.0);
  CHECK(exact_padding_oracle(two_points(1.0), 2.0, 0, 0.9) == 0.0);
  CHECK(exact_padding_oracle(m, 4.0, 2, 1.0 / 16.0) == 1.0);
  CHECK_THROWS_AS(padding_probability(m, 0, 1, 0.0, 10, 1), InvalidInput);
  CHECK_THROWS_AS(padding_probability(m, 0, 1, 0.5, 0, 1), InvalidInput);

  const std::vector<double> pads(6, 0.2);
  const auto profile = padding_profile(m, 2, pads, 300, 9);
  for (PointId x = 0; x < 6; ++x) CHECK(profile[x] == padding_probability(m, x, 2, 0.2, 300, 9));
}

TEST_CASE("exact padding oracle on hand-checkable cases") {
  const auto m = unit_path(3);
  // Unit path 0-1-2, delta = 3, radius 1.5 around the middle point covers
  // all three. alpha * delta < 1 gives singletons; above 1 (alpha in
  // (1/3, 1/2), two thirds of the range) the ends can only reach the middle,
  // so all three share a cluster iff 1 is first in pi (1/3 of orders).
  CHECK(exact_padding_oracle(m, 3.0, 1, 0.5) == doctest::Approx(2.0 / 9.0));
  CHECK_THROWS_AS(exact_padding_oracle(unit_path(9), 2.0, 0, 0.1), InvalidInput);
}

TEST_CASE("Monte Carlo padding agrees with the exact oracle on small fixtures") {
  Rng rng(77);
  std::vector<FiniteMetric> fixtures{unit_path(4), oracle::random_metric(4, rng), oracle::random_metric(5, rng),
                                     as_metric(generate(GeneratorKind::Equilateral, {.n = 5}, 0))};
  const std::size_t trials = 2000;
  for (const auto& m : fixtures)
    for (int u = 0; u <= 3; ++u)
      for (double pad : {0.1, 0.25}) {
        std::vector<double> pads(m.size(), pad);
        const auto mc = padding_profile(m, u, pads, trials, 1234 + static_cast<std::uint64_t>(u));
        for (PointId x = 0; x < m.size(); ++x) {
          const double exact = exact_padding_oracle(m, std::ldexp(1.0, u), x, pad);
          const double sigma = std::sqrt(exact * (1.0 - exact) / trials);
          if (sigma == 0.0)
            CHECK(mc[x] == exact);
          else
            CHECK(std::abs(mc[x] - exact) <= 3.0 * sigma);
        }
      }
}

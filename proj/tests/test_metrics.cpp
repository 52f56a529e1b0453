#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "schemes/constructions.hpp"
#include "schemes/metrics.hpp"
#include "schemes/random.hpp"
#include "schemes/suites.hpp"

using namespace schemes;

namespace {

PointSubset subset_of(std::size_t n, std::initializer_list<std::size_t> points) {
  PointSubset s(n);
  for (auto p : points) s.set(p);
  return s;
}

std::vector<std::size_t> to_points(const PointSubset& s) { return s.to_vector(); }

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("directed and undirected diameter") {
  CHECK(directed_diameter(directed_cycle(3)) == 2);
  CHECK(undirected_diameter(directed_cycle(3)) == 1);
  CHECK(directed_diameter(directed_cycle(5)) == 4);
  CHECK(undirected_diameter(directed_cycle(5)) == 2);
  CHECK(directed_diameter(Relation::full(6)) == 1);
  CHECK(directed_diameter(Relation::diagonal(1)) == 0);
  CHECK(directed_diameter(petersen_graph()) == 2);

  std::vector<PointPair> path{{0, 1}, {1, 2}};
  Relation const p = Relation::from_pairs(3, path);
  CHECK_FALSE(is_strongly_connected(p));
  CHECK(is_weakly_connected(p));
  CHECK_THROWS_AS(directed_diameter(p), NotConnectedError);
  CHECK(undirected_diameter(p) == 2);
  CHECK_THROWS_AS(undirected_diameter(Relation(4)), NotConnectedError);
}

TEST_CASE("distances agree with Floyd-Warshall") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t const n = 1 + rng.below(24);
    Relation a = random_relation(rng, n, 1, 1 + rng.below(8));
    auto const d = directed_distances(a);
    auto const o = oracle::distances(a);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (o[x][y] == oracle::inf)
          CHECK_FALSE(d.reachable(x, y));
        else
          CHECK(d(x, y) == o[x][y]);
      }
    auto const od = oracle::diameter(a);
    CHECK(is_strongly_connected(a) == od.has_value());
    if (od) CHECK(directed_diameter(a) == *od);
    auto const ud = oracle::diameter(oracle::symmetrize(a));
    CHECK(is_weakly_connected(a) == ud.has_value());
    if (ud) CHECK(undirected_diameter(a) == *ud);
  }
}

TEST_CASE("diameter is the least k with (a u 1)^k full") {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t const n = 2 + rng.below(14);
    Relation a = random_strongly_connected(rng, n, 1, 1 + rng.below(10));
    std::size_t k = 1;
    while (power_with_loops(a, k) != Relation::full(n)) ++k;
    CHECK(directed_diameter(a) == k);
  }
}

TEST_CASE("girth") {
  CHECK(directed_girth(directed_cycle(7)) == 7u);
  CHECK(directed_girth(undirected_cycle(7)) == 2u);
  CHECK(directed_girth(Relation::diagonal(3)) == 1u);
  std::vector<PointPair> dag{{0, 1}, {1, 2}, {0, 2}};
  CHECK_FALSE(directed_girth(Relation::from_pairs(3, dag)).has_value());
  std::vector<PointPair> loop{{0, 1}, {1, 0}, {2, 2}};
  CHECK(directed_girth(Relation::from_pairs(3, loop)) == 1u);

  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t const n = 1 + rng.below(16);
    Relation a = random_relation(rng, n, 1, 2 + rng.below(12));
    CHECK(directed_girth(a) == oracle::girth(a));
  }
}

TEST_CASE("boundary") {
  Relation const c5 = undirected_cycle(5);
  CHECK(to_points(boundary(c5, subset_of(5, {0}))) == std::vector<std::size_t>{1, 4});
  CHECK(to_points(boundary(c5, subset_of(5, {0, 1}))) == std::vector<std::size_t>{2, 4});
  CHECK(boundary(c5, PointSubset::filled(5)).none());
  CHECK(boundary(c5, PointSubset(5)).none());

  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t const n = 1 + rng.below(20);
    Relation b = oracle::symmetrize(random_relation(rng, n, 1, 4));
    PointSubset t(n);
    for (std::size_t i = 0; i < n; ++i)
      if (rng.chance(1, 3)) t.set(i);
    CHECK(to_points(boundary(b, t)) == oracle::boundary(b, to_points(t)));
  }
}

TEST_CASE("geodesic counts") {
  Relation const c4 = undirected_cycle(4);
  auto const g = geodesic_counts(c4);
  CHECK(g(0, 2) == 2);
  CHECK(g(0, 1) == 1);
  CHECK(g(0, 0) == 1);
  CHECK(g.distances()(0, 2) == 2);

  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t const n = 1 + rng.below(16);
    Relation a = random_relation(rng, n, 1, 1 + rng.below(5));
    auto const lib = geodesic_counts(a);
    auto const o = oracle::geodesic_counts(a);
    auto const d = oracle::distances(a);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (d[x][y] != oracle::inf) CHECK(lib(x, y) == o[x][y]);
  }
}

TEST_CASE("geodesics through a vertex") {
  // in K_3 only the pairs starting or ending at z route through it
  Relation const k3 = complement(Relation::diagonal(3));
  for (Point z = 0; z < 3; ++z) CHECK(through_vertex_count(k3, z) == 5);

  Relation const c5 = undirected_cycle(5);
  auto const d5 = directed_distances(c5);
  for (Point z = 0; z < 5; ++z) {
    CHECK(through_vertex_count(c5, z) == oracle::through_vertex(c5, z));
    CHECK(5 * through_vertex_count(c5, z) == Rational(distance_plus_one_sum(d5)));
  }

  Rng rng(26);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t const n = 2 + rng.below(14);
    Relation b = oracle::symmetrize(random_strongly_connected(rng, n, 1, 4));
    Rational total = 0;
    for (Point z = 0; z < n; ++z) {
      Rational const p = through_vertex_count(b, z);
      CHECK(p == oracle::through_vertex(b, z));
      total += p;
    }
    // summing over z counts every vertex of every geodesic once
    CHECK(total == Rational(distance_plus_one_sum(directed_distances(b))));
  }
}

TEST_CASE("vertex-transitive relations have constant P_z") {
  for (std::size_t q : {6u, 9u, 12u}) {
    Relation b = cyclic_cayley(q, {1, 2, q - 1, q - 2});
    Rational const p0 = through_vertex_count(b, 0);
    for (Point z = 1; z < q; ++z) CHECK(through_vertex_count(b, z) == p0);
    CHECK(q * p0 == Rational(distance_plus_one_sum(directed_distances(b))));
  }
  CHECK_THROWS_AS(through_vertex_count(directed_cycle(4), 0), std::invalid_argument);
}

}  // TEST_SUITE

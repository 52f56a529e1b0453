#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "schemes/constructions.hpp"
#include "schemes/inequalities.hpp"
#include "schemes/metrics.hpp"
#include "schemes/random.hpp"
#include "schemes/suites.hpp"

using namespace schemes;

namespace {

Scheme cyclic_scheme(std::size_t q) {
  std::vector<Permutation> g{cyclic_rotation(q)};
  return pair_orbit_scheme(g);
}

PointSubset subset_of(std::size_t n, std::initializer_list<std::size_t> points) {
  PointSubset s(n);
  for (auto p : points) s.set(p);
  return s;
}

// Expansion bound evaluated from scratch with the oracles.
bool expansion_holds(const Relation& b, const std::vector<std::size_t>& t) {
  std::size_t const n = b.size();
  auto const d = *oracle::diameter(b);
  Rational const frac = ratio(t.size(), n);
  Rational const bound = 2 * (1 - frac) / (Rational(d) + frac);
  return bound <= ratio(oracle::boundary(b, t).size(), t.size());
}

}  // namespace

TEST_SUITE("inequalities") {

TEST_CASE("bound reports") {
  auto const r = BoundReport::make("x", 1, 2, "w");
  CHECK(r.holds);
  CHECK_FALSE(BoundReport::make("x", 3, 2).holds);
  CHECK(BoundReport::make_equal("x", 2, 2).holds);
  CHECK_FALSE(BoundReport::make_equal("x", 1, 2).holds);
  auto const j = to_json(BoundReport::make("ratio", ratio(2, 4), ratio(3, 1), "T={0}"));
  CHECK(j["name"] == "ratio");
  CHECK(j["lhs"] == "1/2");
  CHECK(j["rhs"] == "3");
  CHECK(j["holds"] == true);
  CHECK(j["witness"] == "T={0}");
}

TEST_CASE("Ruzsa triangle inequality") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const n = 1 + rng.below(16);
    Relation a = random_relation(rng, n, 1, 3), c = random_relation(rng, n, 1, 3);
    Relation b = random_regular_relation(rng, n, 1 + rng.below(n));
    auto const r = check_ruzsa(a, b, c);
    CHECK(r.holds);
    Rational const lhs = Rational(oracle::max_out_degree(oracle::product(a, c))) *
                         oracle::max_out_degree(b);
    Rational const rhs = Rational(oracle::max_out_degree(oracle::product(a, b))) *
                         oracle::max_out_degree(oracle::product(transpose(b), c));
    CHECK(r.lhs == lhs);
    CHECK(r.rhs == rhs);
  }
  // b = 1 makes both sides ||ac|| <= ||a|| ||c||
  Relation a = directed_cycle(5), c = unite(directed_cycle(5), Relation::diagonal(5));
  auto const r = check_ruzsa(a, Relation::diagonal(5), c);
  CHECK(r.lhs == 2);
  CHECK(r.rhs == 2);

  std::vector<PointPair> p{{0, 1}, {0, 2}};
  Relation const irregular = Relation::from_pairs(3, p);
  CHECK_THROWS_AS(check_ruzsa(a, irregular, c), std::invalid_argument);
  CHECK_THROWS_AS(check_ruzsa(Relation(3), irregular, Relation(3)), PreconditionError);
}

TEST_CASE("commutative-index inequality on S-union relations") {
  Scheme const s = cyclic_scheme(12);
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    Relation a = s.union_of(random_basis_subset(rng, s, false));
    Relation b = s.union_of(random_basis_subset(rng, s, false));
    auto const r = check_comm_ind(s, a, b);
    CHECK(r.holds);
    Rational const ab = oracle::max_out_degree(oracle::product(a, b));
    CHECK(r.rhs == ab * ab);
  }
  std::vector<PointPair> p{{0, 1}};
  CHECK_THROWS_AS(check_comm_ind(s, Relation::from_pairs(12, p), s.basis(1)),
                  PreconditionError);
}

TEST_CASE("expansion examples") {
  Scheme const z9 = cyclic_scheme(9);
  Relation const c9 = undirected_cycle(9);
  ExpansionChecker const e(z9, c9);
  CHECK(e.diameter() == 4);
  auto const r = e.check(subset_of(9, {0, 1, 2}));
  // 2 (2/3) / (4 + 1/3) = 4/13 against 2/3
  CHECK(r.lhs == ratio(4, 13));
  CHECK(r.rhs == ratio(2, 3));
  CHECK(r.holds);
  auto const all = e.check(PointSubset::filled(9));
  CHECK(all.lhs == 0);
  CHECK(all.rhs == 0);
  CHECK(all.holds);
  auto const half = e.check_half(subset_of(9, {0}));
  CHECK(half.lhs == ratio(2, 9));
  CHECK(half.rhs == 2);
  CHECK_THROWS_AS(e.check_half(subset_of(9, {0, 1, 2, 3, 4})), PreconditionError);
  CHECK_THROWS_AS(e.check(PointSubset(9)), PreconditionError);

  CHECK_THROWS_AS(ExpansionChecker(z9, directed_cycle(9)), PreconditionError);
  CHECK_THROWS_AS(ExpansionChecker(z9, cyclic_cayley(9, {3, 6})), PreconditionError);

  std::vector<Relation> pet{petersen_graph()};
  Scheme const ps = std::get<Scheme>(wl_closure(pet));
  ExpansionChecker const pe(ps, petersen_graph());
  CHECK(pe.diameter() == 2);
  for (Point x = 0; x < 10; ++x) {
    PointSubset t(10);
    t.set(x);
    auto const rep = pe.check(t);
    CHECK(rep.rhs == 3);
    CHECK(rep.lhs == ratio(6, 7));
  }
}

TEST_CASE("expansion sweep matches brute force") {
  for (std::size_t q : {5u, 8u, 11u, 13u}) {
    Scheme const s = cyclic_scheme(q);
    Relation const b = cyclic_cayley(q, {1, q - 1});
    ExpansionChecker const e(s, b);
    auto const full = e.sweep(4, false);
    auto const rooted = e.sweep(4, true);
    CHECK_FALSE(full.failure.has_value());
    CHECK_FALSE(rooted.failure.has_value());
    std::uint64_t unrooted_count = 0, rooted_count = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << q); ++mask) {
      std::vector<std::size_t> t;
      for (std::size_t i = 0; i < q; ++i)
        if (mask >> i & 1) t.push_back(i);
      if (t.size() > 4) continue;
      ++unrooted_count;
      rooted_count += mask & 1;
      CHECK(expansion_holds(b, t));
    }
    CHECK(full.subsets == unrooted_count);
    CHECK(rooted.subsets == rooted_count);
    // the tightest subset is tightest under both enumerations up to rotation
    CHECK(full.tightest.rhs / full.tightest.lhs == rooted.tightest.rhs / rooted.tightest.lhs);
  }
}

TEST_CASE("expansion sweep on larger point sets") {
  // n > 64 goes through the general path
  Scheme const s = cyclic_scheme(70);
  ExpansionChecker const e(s, cyclic_cayley(70, {1, 69}));
  auto const sweep = e.sweep(2, true);
  CHECK(sweep.subsets == 70);
  CHECK_FALSE(sweep.failure.has_value());
  Scheme const small = cyclic_scheme(60);
  ExpansionChecker const es(small, cyclic_cayley(60, {1, 59}));
  auto const s2 = es.sweep(2, true);
  CHECK(s2.subsets == 60);
  // both paths agree on the tightest pair: two adjacent points
  CHECK(s2.tightest.rhs == 1);
  CHECK(sweep.tightest.rhs == 1);
}

TEST_CASE("random subsets on Cayley graphs") {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t const q = 4 + rng.below(30);
    Scheme const s = cyclic_scheme(q);
    Relation const b = cyclic_cayley(q, {1, 2, q - 1, q - 2});
    ExpansionChecker const e(s, b);
    PointSubset t(q);
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < q; ++i)
      if (rng.chance(1, 2)) {
        t.set(i);
        pts.push_back(i);
      }
    if (pts.empty()) continue;
    auto const r = e.check(t);
    CHECK(r.holds);
    CHECK(r.holds == expansion_holds(b, pts));
  }
}

TEST_CASE("iterated logarithm") {
  CHECK(ceil_log2_log2(1) == 0);
  CHECK(ceil_log2_log2(2) == 0);
  CHECK(ceil_log2_log2(3) == 1);
  CHECK(ceil_log2_log2(4) == 1);
  CHECK(ceil_log2_log2(5) == 2);
  CHECK(ceil_log2_log2(16) == 2);
  CHECK(ceil_log2_log2(17) == 3);
  CHECK(ceil_log2_log2(256) == 3);
  CHECK(ceil_log2_log2(257) == 4);
  CHECK(ceil_log2_log2(65536) == 4);
  CHECK(ceil_log2_log2(65537) == 5);
}

TEST_CASE("comm_bound") {
  Scheme const s = cyclic_scheme(101);
  auto const r = comm_bound(s, cyclic_cayley(101, {1, 5}));
  CHECK(r.holds);
  CHECK(r.lhs == Rational(*oracle::diameter(cyclic_cayley(101, {0, 1, 5}))));

  // the regular scheme of S_3 is not commutative
  std::vector<Permutation> regular;
  auto const elements = group_elements(symmetric_generators(3));
  for (auto const& g : symmetric_generators(3)) {
    std::vector<Point> images;
    for (auto const& x : elements)
      images.push_back(static_cast<Point>(
          std::find(elements.begin(), elements.end(), compose(x, g)) - elements.begin()));
    regular.emplace_back(images);
  }
  Scheme const s3 = pair_orbit_scheme(regular);
  CHECK(s3.rank() == 6);
  bool threw = false;
  for (std::size_t i = 1; i < s3.rank(); ++i) {
    Relation const a = s3.basis(i);
    if (product(a, transpose(a)) == product(transpose(a), a)) continue;
    CHECK_THROWS_AS(comm_bound(s3, a), PreconditionError);
    threw = true;
  }
  // single basis relations are permutations, so try unions
  for (std::size_t i = 1; i < s3.rank() && !threw; ++i)
    for (std::size_t j = i + 1; j < s3.rank() && !threw; ++j) {
      std::vector<std::size_t> idx{i, j};
      Relation const a = s3.union_of(idx);
      if (product(a, transpose(a)) == product(transpose(a), a)) continue;
      CHECK_THROWS_AS(comm_bound(s3, a), PreconditionError);
      threw = true;
    }
  CHECK(threw);
}

TEST_CASE("explicit bound") {
  CHECK(mains_explicit_bound(1, 2) == 12);
  CHECK_THROWS_AS(mains_explicit_bound(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(mains_explicit_bound(1, 1), std::invalid_argument);
  for (std::size_t d = 1; d <= 6; ++d)
    for (std::size_t n = 2; n <= 80; ++n) {
      CHECK(mains_explicit_bound(d, n) == oracle::mains_bound(d, n));
      CHECK(mains_explicit_bound(d, n) <= mains_explicit_bound(d, n + 1));
      CHECK(mains_explicit_bound(d, n) <= mains_explicit_bound(d + 1, n));
    }
  // on two points any connected relation has diameter one
  std::vector<Permutation> g{cyclic_rotation(2)};
  Scheme const z2 = pair_orbit_scheme(g);
  auto const r = check_mains(z2, z2.basis(1));
  CHECK(r.lhs == 1);
  CHECK(r.rhs == 12);
  CHECK(r.holds);
}

TEST_CASE("star ratio") {
  Scheme const s = cyclic_scheme(16);
  Relation const a = cyclic_cayley(16, {1});
  Relation const t = cyclic_cayley(16, {0, 1, 2});
  auto const r = check_star_ratio(s, a, t);
  // d = undirected diameter 8; t a' a'* has offsets -1..3
  CHECK(r.lhs == 1 + ratio(1, 16));
  CHECK(r.rhs == ratio(5, 3));
  CHECK(r.holds);
  CHECK_THROWS_AS(check_star_ratio(s, a, Relation::full(16)), PreconditionError);
}

TEST_CASE("pigeonhole doubling") {
  Relation const a = cyclic_cayley(7, {0, 1, 2, 4});
  auto const r = check_pigeonhole_doubling(a);
  CHECK(r.lhs == 49);
  CHECK(r.rhs == 49);
  CHECK(r.holds);
  CHECK_THROWS_AS(check_pigeonhole_doubling(cyclic_cayley(7, {0, 1, 2})), PreconditionError);
  std::vector<PointPair> p{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {2, 1}};
  CHECK_THROWS_AS(check_pigeonhole_doubling(Relation::from_pairs(3, p)), PreconditionError);

  Rng rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t const q = 2 + rng.below(30);
    std::vector<std::size_t> conn;
    for (std::size_t x = 0; x < q; ++x)
      if (rng.chance(3, 4)) conn.push_back(x);
    if (2 * conn.size() <= q) continue;
    Relation const b = cyclic_cayley(q, conn);
    CHECK(check_pigeonhole_doubling(b).holds);
    CHECK(oracle::product(b, b) == Relation::full(q));
  }
}

}  // TEST_SUITE

#include <doctest.h>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "schemes/constructions.hpp"
#include "schemes/metrics.hpp"
#include "schemes/random.hpp"

using namespace schemes;

namespace {

CyclicSet set_of(Residue q, std::vector<Residue> e) { return CyclicSet(q, std::move(e)); }

// A + B by the definition.
std::set<Residue> naive_sum(const CyclicSet& a, const CyclicSet& b) {
  std::set<Residue> out;
  for (auto x : a.elements())
    for (auto y : b.elements()) out.insert((x + y) % a.modulus());
  return out;
}

std::set<Residue> as_set(const CyclicSet& a) { return {a.elements().begin(), a.elements().end()}; }

CyclicSet random_set(Rng& rng, Residue q) {
  std::vector<Residue> e;
  for (Residue x = 0; x < q; ++x)
    if (rng.chance(1, 3)) e.push_back(x);
  if (e.empty()) e.push_back(0);
  return CyclicSet(q, e);
}

// Distances in the undirected graph and girth of the directed graph,
// recomputed with the oracles.
void check_girthex_with_oracles(const GirthexResult& r) {
  REQUIRE(r.inner.has_value());
  REQUIRE(r.outer.has_value());
  auto const inner_diam = oracle::diameter(oracle::symmetrize(*r.inner));
  auto const outer_diam = oracle::diameter(oracle::symmetrize(*r.outer));
  REQUIRE(inner_diam.has_value());
  REQUIRE(outer_diam.has_value());
  CHECK(*inner_diam <= 4);
  CHECK(*outer_diam <= 2);
  auto const inner_girth = oracle::girth(*r.inner);
  auto const outer_girth = oracle::girth(*r.outer);
  CHECK((!inner_girth || *inner_girth >= 2 * r.k));
  CHECK((!outer_girth || *outer_girth >= r.k));
}

}  // namespace

TEST_SUITE("constructions") {

TEST_CASE("cyclic sets") {
  CyclicSet const a = set_of(7, {3, 1, 3});
  CHECK(a.elements() == std::vector<Residue>{1, 3});
  CHECK(a.contains(3));
  CHECK_FALSE(a.contains(2));
  CHECK(to_string(a) == "{1,3} mod 7");
  CHECK(CyclicSet::from_bits(a.bits()) == a);
  CHECK(CyclicSet::whole(4).size() == 4);
  CHECK_THROWS_AS(set_of(5, {5}), std::invalid_argument);
  CHECK_THROWS_AS(set_of(0, {}), std::invalid_argument);
}

TEST_CASE("sumsets, shifts and scalings") {
  CHECK(sumset(set_of(7, {0, 1}), set_of(7, {0, 3})) == set_of(7, {0, 1, 3, 4}));
  CHECK(k_fold(set_of(7, {0, 1}), 3) == set_of(7, {0, 1, 2, 3}));
  CHECK(difference_set(set_of(7, {0, 1, 3})) == CyclicSet::whole(7));
  CHECK(shift_set(set_of(7, {5, 6}), 3) == set_of(7, {1, 2}));
  CHECK(normalize_shift(set_of(7, {2, 4})) == set_of(7, {0, 2}));
  CHECK(scale_set(set_of(7, {1, 2}), 3) == set_of(7, {3, 6}));
  CHECK_THROWS_AS(scale_set(set_of(6, {1}), 2), std::invalid_argument);
  CHECK_THROWS_AS(sumset(set_of(6, {1}), set_of(7, {1})), std::invalid_argument);
  CHECK_THROWS_AS(k_fold(set_of(6, {1}), 0), std::invalid_argument);
  CHECK_THROWS_AS(normalize_shift(set_of(6, {})), std::invalid_argument);

  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    Residue const q = 1 + static_cast<Residue>(rng.below(70));
    CyclicSet const a = random_set(rng, q), b = random_set(rng, q);
    CHECK(as_set(sumset(a, b)) == naive_sum(a, b));
    CHECK(k_fold(a, 2) == sumset(a, a));
    CHECK(k_fold(a, 3) == sumset(sumset(a, a), a));
    Residue const x = static_cast<Residue>(rng.below(q));
    CHECK(shift_set(shift_set(a, x), (q - x) % q) == a);
  }
}

TEST_CASE("modular arithmetic") {
  CHECK(inverse_mod(3, 7) == Residue{5});
  CHECK_FALSE(inverse_mod(2, 6).has_value());
  for (Residue q : {2u, 5u, 13u, 101u})
    for (Residue u = 1; u < q; ++u) CHECK(std::uint64_t{u} * *inverse_mod(u, q) % q == 1);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 0; n < 60; ++n)
    if (is_prime(n)) primes.push_back(n);
  CHECK(primes == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                             43, 47, 53, 59});
  CHECK(next_prime(13) == 17);
  CHECK(next_prime(1) == 2);
}

TEST_CASE("witnesses") {
  // a perfect difference set
  HRWitness const w = make_witness(set_of(13, {0, 1, 3, 9}), 2);
  CHECK(w.covers);
  CHECK(w.ka_size == 10);
  CHECK(w.ka_size == k_fold(w.a, 2).size());
  auto const j = to_json(w);
  CHECK(j["q"] == 13);
  CHECK(j["kA_size"] == 10);
  CHECK(j["A"] == std::vector<Residue>{0, 1, 3, 9});

  HRWitness const whole = make_witness(CyclicSet::whole(7), 2);
  CHECK(whole.covers);
  CHECK(whole.ka_size == 7);
  CHECK_FALSE(whole.progression_x.has_value());
  CHECK(to_json(whole)["progression_x"].is_null());
  CHECK_THROWS_AS(make_witness(CyclicSet::whole(7), 0), std::invalid_argument);
}

TEST_CASE("progression gaps") {
  CyclicSet sum(13, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  // {12, 11} = {-1, -2} is the first progression missing the sum
  CHECK(progression_gap(sum, 2) == Residue{12});
  CHECK(find_progression_gap(set_of(13, {0, 1, 2, 3, 4}), 2) == Residue{11});
  CHECK_FALSE(progression_gap(CyclicSet::whole(13), 2).has_value());

  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    Residue const q = static_cast<Residue>(next_prime(4 + rng.below(60)));
    CyclicSet const a = random_set(rng, q);
    std::size_t const k = 1 + rng.below(3);
    CyclicSet const s = k_fold(a, k);
    auto const cert = progression_gap_certificate(s, k);
    CHECK(cert.bound == k * s.size());
    CHECK(cert.union_size <= cert.bound);
    // a gap exists whenever some nonzero x avoids every P_i
    CHECK(progression_gap(s, k).has_value() == (cert.union_size < q - 1 + (s.contains(0) ? 1 : 0)));
    CHECK(progression_gap(s, k) == make_witness(a, k).progression_x);
  }
}

TEST_CASE("Haight-Ruzsa search") {
  for (Residue q : {11u, 31u, 61u, 97u}) {
    auto const w = search_hr_set(q, 2, 3000, 9);
    REQUIRE(w.has_value());
    CHECK(w->covers);
    CHECK(w->a.contains(0));
    CHECK(w->ka_size < q);
    HRWitness const again = make_witness(w->a, 2);
    CHECK(again.ka_size == w->ka_size);
    CHECK(again.covers);
  }
  auto const a = search_hr_set(61, 2, 2000, 4), b = search_hr_set(61, 2, 2000, 4);
  REQUIRE(a.has_value());
  CHECK(a->a == b->a);
  CHECK_THROWS_AS(search_hr_set(12, 2, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(search_hr_set(2, 2, 10, 1), std::invalid_argument);
}

TEST_CASE("cycle equation matches directed girth") {
  Rng rng(53);
  for (Residue q : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 8; ++trial) {
      CyclicSet const a = random_set(rng, q);
      Relation const g = build_cayley({CyclicSquare{q}, girthex_connection_set(a), true});
      auto const girth = oracle::girth(g);
      CHECK(cycle_equation_girth(a, g.size()) == girth);
      CHECK(directed_girth(g) == girth);
    }
  }
  // length cap
  CHECK_FALSE(cycle_equation_girth(set_of(11, {0, 6, 9, 10}), 5).has_value());
  CHECK(cycle_equation_girth(set_of(11, {0, 6, 9, 10}), 20) == std::size_t{6});
}

TEST_CASE("cycle set search") {
  auto const a = search_cycle_set(5, 4, 100, 1);
  REQUIRE(a.has_value());
  CHECK(*a == set_of(5, {0, 3, 4}));
  auto const b = search_cycle_set(11, 6, 100, 1);
  REQUIRE(b.has_value());
  CHECK(*b == set_of(11, {0, 6, 9, 10}));
  CHECK(difference_set(*b) == CyclicSet::whole(11));
  // hill climbing beyond the exhaustive range
  auto const c = search_cycle_set(23, 4, 20000, 3);
  REQUIRE(c.has_value());
  CHECK(difference_set(*c) == CyclicSet::whole(23));
  auto const girth = cycle_equation_girth(*c, 3);
  CHECK_FALSE(girth.has_value());
  CHECK_FALSE(search_cycle_set(3, 40, 100, 1).has_value());
}

TEST_CASE("Cayley graphs") {
  Relation const z5 = build_cayley({CyclicGroup{5}, {{1}}, false});
  CHECK(z5 == directed_cycle(5));
  CHECK_THROWS_AS(build_cayley({CyclicGroup{5}, {{0}}, false}), std::invalid_argument);
  CHECK_THROWS_AS(build_cayley({CyclicGroup{5}, {{5}}, false}), std::invalid_argument);
  CHECK(build_cayley({CyclicGroup{5}, {{0}}, true}) == Relation::diagonal(5));

  Relation const sq = build_cayley({CyclicSquare{3}, {{1, 0}, {0, 1}}, false});
  CHECK(sq.contains(0, 3));
  CHECK(sq.contains(0, 1));
  CHECK(sq.contains(8, 6));
  CHECK(sq.pair_count() == 18);
  CHECK_THROWS_AS(build_cayley({CyclicSquare{3}, {{1}}, false}), std::invalid_argument);

  auto const s3 = group_elements(symmetric_generators(3));
  CHECK(s3.size() == 6);
  CHECK(std::is_sorted(s3.begin(), s3.end()));
  CHECK(group_elements(dihedral_generators(6)).size() == 12);
  CHECK_THROWS_AS(group_elements(symmetric_generators(6), 100), std::length_error);

  // Cay(S_3, transpositions) is K_{3,3}
  std::vector<GroupElement> transpositions{{1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  Relation const k33 = build_cayley({PermutationGroup{symmetric_generators(3)},
                                     transpositions, false});
  CHECK(is_symmetric(k33));
  CHECK(directed_diameter(k33) == 2);
  CHECK(directed_girth(k33) == std::size_t{2});
  CHECK(oracle::girth(product(k33, k33)) == std::size_t{1});
  for (Point x = 0; x < 6; ++x) CHECK(k33.out_degree(x) == 3);
}

TEST_CASE("connection sets") {
  auto const b = girthex_connection_set(set_of(5, {0, 3}));
  CHECK(b == std::vector<GroupElement>{{0, 4}, {3, 4}, {4, 0}, {4, 3}});
  auto const neg = pair_negate(b, 5);
  CHECK(neg == std::vector<GroupElement>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  auto const twice = pair_sumset(b, b, 5);
  std::set<GroupElement> naive;
  for (auto const& x : b)
    for (auto const& y : b) naive.insert({(x[0] + y[0]) % 5, (x[1] + y[1]) % 5});
  CHECK(twice == std::vector<GroupElement>(naive.begin(), naive.end()));
}

TEST_CASE("graph families") {
  CHECK(petersen_graph().pair_count() == 30);
  CHECK(is_symmetric(petersen_graph()));
  CHECK(directed_girth(oracle::symmetrize(directed_cycle(4))) == std::size_t{2});
  CHECK(undirected_cycle(6) == oracle::symmetrize(directed_cycle(6)));
  CHECK(dihedral_generators(5).size() == 2);
  CHECK(symmetric_generators(5).size() == 2);
}

TEST_CASE("girthEx at the smallest moduli") {
  GirthexOptions opt;
  opt.k = 2;
  opt.seed = 1;
  GirthexResult const r = find_girthex(opt);
  REQUIRE(r.certified());
  CHECK(r.q == 5);
  CHECK(r.route == GirthexRoute::cycle_equation);
  check_girthex_with_oracles(r);
  CHECK(r.b.size() == 2 * r.witness->a.size() - 1);

  opt.k = 3;
  GirthexResult const r3 = find_girthex(opt);
  REQUIRE(r3.certified());
  CHECK(r3.q == 11);
  check_girthex_with_oracles(r3);

  opt.k = 1;
  GirthexResult const r1 = find_girthex(opt);
  REQUIRE(r1.certified());
  check_girthex_with_oracles(r1);

  auto const j = to_json(r);
  CHECK(j["q"] == 5);
  CHECK(j["route"] == "cycle-equation");
}

TEST_CASE("girthEx infeasibility is reported") {
  auto const bad = girthex_pipeline(2, 12, 1);
  CHECK_FALSE(bad.feasible);
  CHECK_FALSE(bad.certified());
  REQUIRE(bad.log.size() == 1);
  CHECK_FALSE(bad.log[0].success);

  auto const gap = girthex_pipeline(2, 5, 1, GirthexMode::gap, 500);
  CHECK_FALSE(gap.feasible);
  CHECK(gap.log.back().route == GirthexRoute::progression_gap);

  GirthexOptions opt;
  opt.k = 2;
  opt.mode = GirthexMode::gap;
  opt.q_max = 13;
  opt.budget = 200;
  auto const none = find_girthex(opt);
  CHECK_FALSE(none.feasible);
  CHECK(none.log.size() == 4);
  CHECK_THROWS_AS(girthex_pipeline(0, 5, 1), std::invalid_argument);
}

TEST_CASE("girthEx graphs are homogeneous under WL") {
  auto const r = girthex_pipeline(2, 5, 1, GirthexMode::cycle);
  REQUIRE(r.certified());
  std::vector<Relation> seed{*r.inner};
  auto const w = wl_closure(seed);
  REQUIRE(std::holds_alternative<Scheme>(w));
  CHECK(in_s_union(std::get<Scheme>(w), *r.inner));
  CHECK(in_s_union(std::get<Scheme>(w), *r.outer));
}

}  // TEST_SUITE

#include "schemes/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "schemes/metrics.hpp"
#include "schemes/random.hpp"

namespace schemes {

// ------------------------------------------------------------- CyclicSet

CyclicSet::CyclicSet(Residue q, std::vector<Residue> elements)
    : q_(q), elements_(std::move(elements)) {
  if (q == 0) throw std::invalid_argument("CyclicSet: modulus must be positive");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  if (!elements_.empty() && elements_.back() >= q)
    throw std::invalid_argument("CyclicSet: residue " + std::to_string(elements_.back()) +
                                " outside [0, " + std::to_string(q) + ")");
}

CyclicSet CyclicSet::whole(Residue q) {
  std::vector<Residue> all(q);
  std::iota(all.begin(), all.end(), Residue{0});
  return CyclicSet(q, std::move(all));
}

CyclicSet CyclicSet::from_bits(const Bitset& bits) {
  std::vector<Residue> el;
  bits.for_each([&](std::size_t x) { el.push_back(static_cast<Residue>(x)); });
  return CyclicSet(static_cast<Residue>(bits.size()), std::move(el));
}

bool CyclicSet::contains(Residue x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

Bitset CyclicSet::bits() const {
  Bitset b(q_);
  for (auto x : elements_) b.set(x);
  return b;
}

std::string to_string(const CyclicSet& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a.elements()[i]);
  }
  return out + "} mod " + std::to_string(a.modulus());
}

namespace {

void require_same_modulus(const CyclicSet& a, const CyclicSet& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("modulus mismatch: " + std::to_string(a.modulus()) +
                                " vs " + std::to_string(b.modulus()));
}

Bitset sum_bits(const Bitset& a, const Bitset& b) {
  Bitset out(a.size());
  a.for_each([&](std::size_t x) { out |= b.rotated(x); });
  return out;
}

Bitset k_fold_bits(const Bitset& a, std::size_t k) {
  Bitset out = a;
  for (std::size_t i = 1; i < k; ++i) out = sum_bits(out, a);
  return out;
}

Bitset difference_bits(const Bitset& a) {
  std::size_t const q = a.size();
  Bitset out(q);
  // a - x for each x in a
  a.for_each([&](std::size_t x) { out |= a.rotated((q - x) % q); });
  return out;
}

}  // namespace

CyclicSet sumset(const CyclicSet& a, const CyclicSet& b) {
  require_same_modulus(a, b);
  return CyclicSet::from_bits(sum_bits(a.bits(), b.bits()));
}

CyclicSet k_fold(const CyclicSet& a, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k_fold: k must be positive");
  return CyclicSet::from_bits(k_fold_bits(a.bits(), k));
}

CyclicSet difference_set(const CyclicSet& a) {
  return CyclicSet::from_bits(difference_bits(a.bits()));
}

CyclicSet shift_set(const CyclicSet& a, Residue x) {
  std::vector<Residue> el;
  for (auto v : a.elements())
    el.push_back(static_cast<Residue>((std::uint64_t{v} + x) % a.modulus()));
  return CyclicSet(a.modulus(), std::move(el));
}

CyclicSet normalize_shift(const CyclicSet& a) {
  if (a.empty()) throw std::invalid_argument("normalize_shift: empty set");
  return shift_set(a, (a.modulus() - a.elements().front()) % a.modulus());
}

std::optional<Residue> inverse_mod(Residue u, Residue q) {
  std::int64_t old_r = u % q, r = q, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t const t = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - t * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - t * s);
  }
  if (old_r != 1) return std::nullopt;
  std::int64_t inv = old_s % static_cast<std::int64_t>(q);
  if (inv < 0) inv += q;
  return static_cast<Residue>(inv);
}

CyclicSet scale_set(const CyclicSet& a, Residue u) {
  if (!inverse_mod(u, a.modulus()))
    throw std::invalid_argument("scale_set: " + std::to_string(u) + " is not a unit mod " +
                                std::to_string(a.modulus()));
  std::vector<Residue> el;
  for (auto v : a.elements())
    el.push_back(static_cast<Residue>(std::uint64_t{v} * u % a.modulus()));
  return CyclicSet(a.modulus(), std::move(el));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

// --------------------------------------------------------------- witness

HRWitness make_witness(const CyclicSet& a, std::size_t k) {
  if (k == 0) throw std::invalid_argument("make_witness: k must be positive");
  Residue const q = a.modulus();
  HRWitness w;
  w.q = q;
  w.k = k;
  w.a = a;

  std::vector<char> diff(q, 0);
  for (auto x : a.elements())
    for (auto y : a.elements()) diff[(x + q - y) % q] = 1;
  w.covers = std::all_of(diff.begin(), diff.end(), [](char c) { return c != 0; });

  std::vector<char> sums(q, 0);
  for (auto x : a.elements()) sums[x] = 1;
  for (std::size_t i = 1; i < k; ++i) {
    std::vector<char> next(q, 0);
    for (Residue s = 0; s < q; ++s)
      if (sums[s])
        for (auto x : a.elements()) next[(s + x) % q] = 1;
    sums = std::move(next);
  }
  w.ka_size = static_cast<std::size_t>(std::count(sums.begin(), sums.end(), 1));

  for (Residue x = 1; x < q && !w.progression_x; ++x) {
    bool clear = true;
    for (std::size_t i = 1; i <= k && clear; ++i) clear = !sums[i * x % q];
    if (clear) w.progression_x = x;
  }
  return w;
}

nlohmann::json to_json(const HRWitness& w) {
  nlohmann::json j{{"q", w.q},
                   {"k", w.k},
                   {"A", w.a.elements()},
                   {"kA_size", w.ka_size},
                   {"covers", w.covers}};
  j["progression_x"] = w.progression_x ? nlohmann::json(*w.progression_x) : nlohmann::json();
  return j;
}

std::optional<Residue> progression_gap(const CyclicSet& sum, std::size_t k) {
  Residue const q = sum.modulus();
  Bitset const bits = sum.bits();
  for (Residue x = 1; x < q; ++x) {
    bool clear = true;
    for (std::size_t i = 1; i <= k && clear; ++i) clear = !bits.test(i * x % q);
    if (clear) return x;
  }
  return std::nullopt;
}

std::optional<Residue> find_progression_gap(const CyclicSet& a, std::size_t k) {
  return progression_gap(k_fold(a, k), k);
}

GapCertificate progression_gap_certificate(const CyclicSet& sum, std::size_t k) {
  Residue const q = sum.modulus();
  Bitset const bits = sum.bits();
  GapCertificate c;
  for (Residue x = 0; x < q; ++x) {
    for (std::size_t i = 1; i <= k; ++i)
      if (bits.test(i * x % q)) {
        ++c.union_size;
        break;
      }
  }
  c.bound = k * sum.size();
  return c;
}

namespace {

struct Objective {
  std::size_t uncovered;
  std::size_t gap_missing;
  std::size_t ka_size;
  std::vector<Residue> elements;
  friend auto operator<=>(const Objective&, const Objective&) = default;
};

Objective hr_objective(const Bitset& a, std::size_t k) {
  std::size_t const q = a.size();
  Objective o;
  o.uncovered = q - difference_bits(a).count();
  CyclicSet const sum = CyclicSet::from_bits(k_fold_bits(a, k));
  o.gap_missing = progression_gap(sum, k) ? 0 : 1;
  o.ka_size = sum.size();
  a.for_each([&](std::size_t x) { o.elements.push_back(static_cast<Residue>(x)); });
  return o;
}

// Random add / remove / swap of one nonzero residue; 0 stays in the set.
Bitset propose(Rng& rng, const Bitset& a) {
  std::size_t const q = a.size();
  Bitset b = a;
  std::vector<std::size_t> in, out;
  for (std::size_t x = 1; x < q; ++x) (a.test(x) ? in : out).push_back(x);
  std::uint64_t const move = rng.below(3);
  bool const can_add = !out.empty(), can_remove = !in.empty();
  if ((move == 0 || !can_remove) && can_add) {
    b.set(out[rng.below(out.size())]);
  } else if ((move == 1 || !can_add) && can_remove) {
    b.reset(in[rng.below(in.size())]);
  } else if (can_add && can_remove) {
    b.reset(in[rng.below(in.size())]);
    b.set(out[rng.below(out.size())]);
  }
  return b;
}

Bitset random_start(Rng& rng, std::size_t q) {
  Bitset a(q);
  a.set(0);
  // about sqrt(2q) residues, enough for A - A to be near full
  std::size_t target = 1;
  while (target * target < 2 * q) ++target;
  target = std::min(target, q);
  while (a.count() < target) a.set(rng.below(q));
  return a;
}

void require_prime_above(Residue q, std::size_t k, const char* what) {
  if (!is_prime(q) || q <= k)
    throw std::invalid_argument(std::string(what) + ": q = " + std::to_string(q) +
                                " must be a prime greater than k = " + std::to_string(k));
}

}  // namespace

std::optional<HRWitness> search_hr_set(Residue q, std::size_t k, std::uint64_t budget,
                                       std::uint64_t seed) {
  require_prime_above(q, k, "search_hr_set");
  Rng rng(seed);
  Bitset current = random_start(rng, q);
  Objective current_obj = hr_objective(current, k);
  Bitset best = current;
  Objective best_obj = current_obj;
  for (std::uint64_t step = 0; step < budget; ++step) {
    Bitset candidate = propose(rng, current);
    Objective obj = hr_objective(candidate, k);
    // sideways moves are accepted; the element list only breaks ties for best
    if (std::tie(obj.uncovered, obj.gap_missing, obj.ka_size) <=
        std::tie(current_obj.uncovered, current_obj.gap_missing, current_obj.ka_size)) {
      current = std::move(candidate);
      current_obj = std::move(obj);
      if (current_obj < best_obj) {
        best = current;
        best_obj = current_obj;
      }
    }
  }
  if (best_obj.uncovered != 0) return std::nullopt;
  HRWitness w = make_witness(CyclicSet::from_bits(best), k);
  if (!w.covers) return std::nullopt;
  return w;
}

// ------------------------------------------------------- cycle equation

namespace {

// multiples[i] = i . A with 0 . A = {0}
std::vector<Bitset> multiples(const Bitset& a, std::size_t count) {
  std::vector<Bitset> m;
  m.reserve(count + 1);
  Bitset zero(a.size());
  zero.set(0);
  m.push_back(zero);
  for (std::size_t i = 1; i <= count; ++i) m.push_back(sum_bits(m.back(), a));
  return m;
}

// Number of (n, m) with 1 <= n + m <= max_length solving the cycle equation.
std::size_t short_walk_count(const Bitset& a, std::size_t max_length) {
  std::size_t const q = a.size();
  auto const mult = multiples(a, max_length);
  std::size_t count = 0;
  for (std::size_t len = 1; len <= max_length; ++len)
    for (std::size_t n = 0; n <= len; ++n) {
      std::size_t const m = len - n;
      if (mult[n].test(m % q) && mult[m].test(n % q)) ++count;
    }
  return count;
}

}  // namespace

std::optional<std::size_t> cycle_equation_girth(const CyclicSet& a,
                                                std::size_t max_length) {
  std::size_t const q = a.modulus();
  auto const mult = multiples(a.bits(), max_length);
  for (std::size_t len = 1; len <= max_length; ++len)
    for (std::size_t n = 0; n <= len; ++n) {
      std::size_t const m = len - n;
      if (mult[n].test(m % q) && mult[m].test(n % q)) return len;
    }
  return std::nullopt;
}

std::optional<CyclicSet> search_cycle_set(Residue q, std::size_t girth,
                                          std::uint64_t budget, std::uint64_t seed,
                                          Residue exhaustive_limit) {
  if (q == 0) throw std::invalid_argument("search_cycle_set: modulus must be positive");
  std::size_t const limit = girth == 0 ? 0 : girth - 1;
  auto accept = [&](const Bitset& a) {
    return difference_bits(a).all() && short_walk_count(a, limit) == 0;
  };

  if (q <= exhaustive_limit) {
    // subsets {0} u C, C a (s-1)-subset of {1..q-1}, by size then lexicographically
    std::size_t smallest = 1;
    while (smallest * (smallest - 1) + 1 < q) ++smallest;
    for (std::size_t s = smallest; s <= q; ++s) {
      std::vector<Residue> pick(s - 1);
      std::iota(pick.begin(), pick.end(), Residue{1});
      while (true) {
        Bitset a(q);
        a.set(0);
        for (auto x : pick) a.set(x);
        if (accept(a)) return CyclicSet::from_bits(a);
        // next combination
        std::size_t i = pick.size();
        while (i > 0 && pick[i - 1] == q - (pick.size() - (i - 1))) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    return std::nullopt;
  }

  Rng rng(seed);
  auto score = [&](const Bitset& a) {
    return std::make_pair(q - difference_bits(a).count(), short_walk_count(a, limit));
  };
  Bitset current = random_start(rng, q);
  auto current_score = score(current);
  for (std::uint64_t step = 0; step < budget; ++step) {
    if (current_score == std::make_pair(std::size_t{0}, std::size_t{0}))
      return CyclicSet::from_bits(current);
    Bitset candidate = propose(rng, current);
    auto s = score(candidate);
    if (s <= current_score) {
      current = std::move(candidate);
      current_score = s;
    }
  }
  if (current_score == std::make_pair(std::size_t{0}, std::size_t{0}))
    return CyclicSet::from_bits(current);
  return std::nullopt;
}

// ---------------------------------------------------------------- Cayley

std::vector<Permutation> group_elements(std::span<const Permutation> generators,
                                        std::size_t limit) {
  if (generators.empty()) throw std::invalid_argument("group_elements: no generators");
  std::size_t const n = generators.front().size();
  std::set<Permutation> seen{Permutation::identity(n)};
  std::vector<Permutation> queue{Permutation::identity(n)};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto const& g : generators) {
      if (g.size() != n) throw std::invalid_argument("group_elements: degree mismatch");
      Permutation next = compose(queue[head], g);
      if (seen.insert(next).second) {
        if (seen.size() > limit)
          throw std::length_error("group_elements: group exceeds " + std::to_string(limit) +
                                  " elements");
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

namespace {

[[noreturn]] void outside_group(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  throw std::invalid_argument("build_cayley: element " + s + ") is outside the group");
}

}  // namespace

Relation build_cayley(const CayleySpec& spec) {
  auto check_identity = [&](bool is_identity) {
    if (is_identity && !spec.allow_identity)
      throw std::invalid_argument("build_cayley: identity in connection set");
  };
  if (auto const* g = std::get_if<CyclicGroup>(&spec.group)) {
    Residue const q = g->q;
    if (q == 0) throw std::invalid_argument("build_cayley: empty group");
    Relation out(q);
    for (auto const& s : spec.connection_set) {
      if (s.size() != 1 || s[0] >= q) outside_group(s);
      check_identity(s[0] == 0);
      for (Residue x = 0; x < q; ++x) out.insert(x, (x + s[0]) % q);
    }
    return out;
  }
  if (auto const* g = std::get_if<CyclicSquare>(&spec.group)) {
    Residue const q = g->q;
    if (q == 0) throw std::invalid_argument("build_cayley: empty group");
    Relation out(std::size_t{q} * q);
    for (auto const& s : spec.connection_set) {
      if (s.size() != 2 || s[0] >= q || s[1] >= q) outside_group(s);
      check_identity(s[0] == 0 && s[1] == 0);
      for (Residue i = 0; i < q; ++i)
        for (Residue j = 0; j < q; ++j)
          out.insert(std::size_t{i} * q + j,
                     std::size_t{(i + s[0]) % q} * q + (j + s[1]) % q);
    }
    return out;
  }
  auto const& gens = std::get<PermutationGroup>(spec.group).generators;
  auto const elements = group_elements(gens);
  std::size_t const degree = elements.front().size();
  auto index_of = [&](const Permutation& p) -> std::optional<std::size_t> {
    auto it = std::lower_bound(elements.begin(), elements.end(), p);
    if (it == elements.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - elements.begin());
  };
  Relation out(elements.size());
  for (auto const& s : spec.connection_set) {
    if (s.size() != degree) outside_group(s);
    std::vector<Point> images(s.begin(), s.end());
    std::optional<Permutation> p;
    try {
      p.emplace(std::move(images));
    } catch (const std::invalid_argument&) {
      outside_group(s);
    }
    if (!index_of(*p)) outside_group(s);
    check_identity(p->is_identity());
    for (std::size_t x = 0; x < elements.size(); ++x)
      out.insert(x, *index_of(compose(elements[x], *p)));
  }
  return out;
}

std::vector<GroupElement> girthex_connection_set(const CyclicSet& a) {
  Residue const q = a.modulus(), minus_one = q - 1;
  std::set<GroupElement> b;
  for (auto x : a.elements()) {
    b.insert({x, minus_one});
    b.insert({minus_one, x});
  }
  return {b.begin(), b.end()};
}

std::vector<GroupElement> pair_sumset(std::span<const GroupElement> b,
                                      std::span<const GroupElement> c, Residue q) {
  Bitset seen(std::size_t{q} * q);
  for (auto const& x : b)
    for (auto const& y : c)
      seen.set(std::size_t{(x[0] + y[0]) % q} * q + (x[1] + y[1]) % q);
  std::vector<GroupElement> out;
  seen.for_each([&](std::size_t v) {
    out.push_back({static_cast<std::uint32_t>(v / q), static_cast<std::uint32_t>(v % q)});
  });
  return out;
}

std::vector<GroupElement> pair_negate(std::span<const GroupElement> b, Residue q) {
  std::set<GroupElement> out;
  for (auto const& x : b) out.insert({(q - x[0]) % q, (q - x[1]) % q});
  return {out.begin(), out.end()};
}

// -------------------------------------------------------------- families

Permutation cyclic_rotation(std::size_t n) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = (i + 1) % n;
  return Permutation(std::move(im));
}

std::vector<Permutation> dihedral_generators(std::size_t n) {
  std::vector<Point> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = (n - i) % n;
  return {cyclic_rotation(n), Permutation(std::move(refl))};
}

std::vector<Permutation> symmetric_generators(std::size_t n) {
  std::vector<Point> swap(n);
  std::iota(swap.begin(), swap.end(), Point{0});
  if (n > 1) std::swap(swap[0], swap[1]);
  return {Permutation(std::move(swap)), cyclic_rotation(n)};
}

Relation directed_cycle(std::size_t n) {
  Relation a(n);
  for (Point i = 0; i < n; ++i) a.insert(i, (i + 1) % n);
  return a;
}

Relation undirected_cycle(std::size_t n) {
  Relation a = directed_cycle(n);
  return unite(a, transpose(a));
}

Relation petersen_graph() {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
  Relation a(pairs.size());
  for (std::size_t x = 0; x < pairs.size(); ++x)
    for (std::size_t y = 0; y < pairs.size(); ++y) {
      auto [a1, a2] = pairs[x];
      auto [b1, b2] = pairs[y];
      if (a1 != b1 && a1 != b2 && a2 != b1 && a2 != b2) a.insert(x, y);
    }
  return a;
}

// --------------------------------------------------------------- girthEx

std::string to_string(GirthexRoute route) {
  return route == GirthexRoute::progression_gap ? "progression-gap" : "cycle-equation";
}

bool GirthexResult::certified() const {
  return feasible && reports.size() == 4 && inner_sumset_covers && outer_sumset_covers &&
         std::all_of(reports.begin(), reports.end(),
                     [](const BoundReport& r) { return r.holds; });
}

namespace {

BoundReport girth_report(std::string name, std::size_t required, const Relation& g) {
  auto girth = directed_girth(g);
  if (!girth)
    return BoundReport::make(std::move(name), Rational(required), Rational(g.size() + 1),
                             "acyclic");
  return BoundReport::make(std::move(name), Rational(required), Rational(*girth));
}

BoundReport diameter_report(std::string name, const Relation& g, std::size_t limit) {
  try {
    return BoundReport::make(std::move(name), Rational(undirected_diameter(g)),
                             Rational(limit));
  } catch (const NotConnectedError&) {
    return BoundReport::make(std::move(name), Rational(g.size()), Rational(limit),
                             "disconnected");
  }
}

// B - B + B - B = V
bool covers_square(std::span<const GroupElement> x, Residue q) {
  auto const diff = pair_sumset(x, pair_negate(x, q), q);
  return pair_sumset(diff, diff, q).size() == std::size_t{q} * q;
}

// Build and certify both Cayley graphs for a given A.
void certify(GirthexResult& r, const CyclicSet& a) {
  Residue const q = a.modulus();
  r.b = girthex_connection_set(a);
  r.doubled = pair_sumset(r.b, r.b, q);
  r.inner = build_cayley({CyclicSquare{q}, r.b, false});
  // 2B can contain the identity only if Cay(V, B) has a closed walk of
  // length 2; the girth report then fails rather than the build
  r.outer = build_cayley({CyclicSquare{q}, r.doubled, true});
  r.inner_sumset_covers = covers_square(r.b, q);
  auto const d = pair_negate(r.doubled, q);
  r.outer_sumset_covers = pair_sumset(r.doubled, d, q).size() == std::size_t{q} * q;
  r.reports = {diameter_report("inner_diameter", *r.inner, 4),
               girth_report("inner_girth", 2 * r.k, *r.inner),
               diameter_report("outer_diameter", *r.outer, 2),
               girth_report("outer_girth", r.k, *r.outer)};
  r.feasible = r.inner_sumset_covers && r.outer_sumset_covers &&
               std::all_of(r.reports.begin(), r.reports.end(),
                           [](const BoundReport& rep) { return rep.holds; });
}

bool try_gap(GirthexResult& r, Residue q, std::uint64_t seed, std::uint64_t budget) {
  std::size_t const big_k = 2 * r.k;
  auto found = search_hr_set(q, big_k, budget, seed);
  if (!found) {
    r.log.push_back({q, GirthexRoute::progression_gap, false, "no covering set found"});
    return false;
  }
  if (!found->progression_x) {
    r.log.push_back({q, GirthexRoute::progression_gap, false,
                     "best covering set has |" + std::to_string(big_k) +
                         "A| = " + std::to_string(found->ka_size) + " and no progression gap"});
    return false;
  }
  CyclicSet const shifted = normalize_shift(found->a);
  auto const x = find_progression_gap(shifted, big_k);
  if (!x) {
    r.log.push_back({q, GirthexRoute::progression_gap, false, "gap lost after shift"});
    return false;
  }
  CyclicSet const scaled = scale_set(shifted, *inverse_mod(*x, q));
  HRWitness w = make_witness(scaled, big_k);
  if (!w.covers || w.progression_x != Residue{1}) {
    r.log.push_back({q, GirthexRoute::progression_gap, false, "scaled set lost I_1 gap"});
    return false;
  }
  r.witness = w;
  r.route = GirthexRoute::progression_gap;
  certify(r, scaled);
  r.log.push_back({q, GirthexRoute::progression_gap, r.feasible,
                   r.feasible ? "certified" : "certification failed"});
  return r.feasible;
}

bool try_cycle(GirthexResult& r, Residue q, std::uint64_t seed, std::uint64_t budget) {
  auto found = search_cycle_set(q, 2 * r.k, budget, seed);
  if (!found) {
    r.log.push_back({q, GirthexRoute::cycle_equation, false,
                     "no covering set without closed walks shorter than " +
                         std::to_string(2 * r.k)});
    return false;
  }
  r.witness = make_witness(*found, 2 * r.k);
  r.route = GirthexRoute::cycle_equation;
  certify(r, *found);
  r.log.push_back({q, GirthexRoute::cycle_equation, r.feasible,
                   r.feasible ? "certified" : "certification failed"});
  return r.feasible;
}

void run_at(GirthexResult& r, Residue q, std::uint64_t seed, GirthexMode mode,
            std::uint64_t budget) {
  r.q = q;
  r.feasible = false;
  if (!is_prime(q) || q <= 2 * r.k) {
    r.log.push_back({q, GirthexRoute::progression_gap, false,
                     "q must be a prime greater than 2k"});
    return;
  }
  if (mode != GirthexMode::cycle && try_gap(r, q, seed, budget)) return;
  if (mode != GirthexMode::gap) try_cycle(r, q, seed, budget);
}

}  // namespace

GirthexResult girthex_pipeline(std::size_t k, Residue q, std::uint64_t seed,
                               GirthexMode mode, std::uint64_t budget) {
  if (k == 0) throw std::invalid_argument("girthex_pipeline: k must be positive");
  GirthexResult r;
  r.k = k;
  run_at(r, q, seed, mode, budget);
  return r;
}

GirthexResult find_girthex(const GirthexOptions& options) {
  if (options.k == 0) throw std::invalid_argument("find_girthex: k must be positive");
  GirthexResult r;
  r.k = options.k;
  Rng seeds(options.seed);
  std::uint64_t q = std::max<std::uint64_t>(options.q_min, 2 * options.k + 1);
  if (!is_prime(q)) q = next_prime(q);
  for (; q <= options.q_max; q = next_prime(q)) {
    GirthexResult attempt;
    attempt.k = options.k;
    attempt.log = std::move(r.log);
    run_at(attempt, static_cast<Residue>(q), seeds.fork(q).next(), options.mode,
           options.budget);
    r = std::move(attempt);
    if (r.feasible) return r;
  }
  // keep the log, drop the last partial attempt
  GirthexResult out;
  out.k = options.k;
  out.log = std::move(r.log);
  return out;
}

nlohmann::json to_json(const GirthexResult& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["feasible"] = r.feasible;
  if (r.feasible) {
    j["q"] = r.q;
    j["route"] = to_string(*r.route);
    j["A"] = r.witness->a.elements();
    j["witness"] = to_json(*r.witness);
    j["B"] = r.b;
    j["doubled_size"] = r.doubled.size();
    j["vertices"] = r.inner->size();
    j["inner_sumset_covers"] = r.inner_sumset_covers;
    j["outer_sumset_covers"] = r.outer_sumset_covers;
    j["reports"] = nlohmann::json::array();
    for (auto const& rep : r.reports) j["reports"].push_back(to_json(rep));
  }
  j["log"] = nlohmann::json::array();
  for (auto const& a : r.log)
    j["log"].push_back(
        {{"q", a.q}, {"route", to_string(a.route)}, {"success", a.success}, {"note", a.note}});
  return j;
}

}  // namespace schemes

#include "schemes/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "schemes/metrics.hpp"

namespace schemes {

// --- permutations ----------------------------------------------------------

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("permutation: empty image array");
  std::vector<bool> hit(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || hit[p])
      throw std::invalid_argument("permutation: images are not a bijection");
    hit[p] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> images(n);
  for (Point i = 0; i < n; ++i) images[i] = i;
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (Point i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(size());
  for (Point i = 0; i < size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.size() != second.size())
    throw std::invalid_argument("compose: permutations of different degree");
  std::vector<Point> images(first.size());
  for (Point i = 0; i < first.size(); ++i) images[i] = second(first(i));
  return Permutation(std::move(images));
}

std::vector<Permutation> read_generators(std::istream& in) {
  std::vector<Permutation> gens;
  std::string text;
  std::size_t line = 0, n = 0;
  bool have_n = false;
  while (std::getline(in, text)) {
    ++line;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    std::vector<std::size_t> values;
    for (std::string tok; ss >> tok;) {
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected a nonnegative integer, got '" + tok + "'");
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (!have_n) {
      if (values.size() != 1 || values[0] == 0)
        throw ParseError(line, "first line must hold the positive degree n");
      n = values[0];
      have_n = true;
      continue;
    }
    if (values.size() != n)
      throw ParseError(line, "generator must list " + std::to_string(n) + " images");
    try {
      gens.emplace_back(std::move(values));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }
  if (!have_n) throw ParseError(line + 1, "missing degree line");
  if (gens.empty()) gens.push_back(Permutation::identity(n));
  return gens;
}

PointSubset point_orbit(std::span<const Permutation> generators, Point start) {
  if (generators.empty()) throw std::invalid_argument("point_orbit: no generators");
  std::size_t const n = generators.front().size();
  PointSubset seen(n);
  std::vector<Point> queue{start};
  seen.set(start);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto const& g : generators) {
      Point y = g(queue[head]);
      if (!seen.test(y)) {
        seen.set(y);
        queue.push_back(y);
      }
    }
  return seen;
}

bool is_transitive(std::span<const Permutation> generators) {
  return point_orbit(generators, 0).all();
}

// --- scheme ----------------------------------------------------------------

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::partition: return "partition";
    case Axiom::diagonal: return "diagonal";
    case Axiom::transpose: return "transpose";
    case Axiom::intersection: return "intersection";
  }
  return "unknown";
}

struct Scheme::Cache {
  std::once_flag once;
  std::vector<std::uint32_t> constants;
};

std::size_t Scheme::intersection_number(std::size_t a, std::size_t b,
                                        std::size_t c) const {
  auto const& rel = basis(a);
  Point alpha = 0;
  while (rel.row(alpha).none()) ++alpha;
  Point beta = rel.row(alpha).find_first();
  // (g, beta) in c  <=>  (beta, g) in c*
  return (basis(b).row(alpha) & basis(transpose_of(c)).row(beta)).count();
}

const std::vector<std::uint32_t>& Scheme::structure_constants() const {
  std::call_once(cache_->once, [this] {
    std::size_t const r = rank();
    cache_->constants.assign(r * r * r, 0);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c)
          cache_->constants[(a * r + b) * r + c] =
              static_cast<std::uint32_t>(intersection_number(a, b, c));
  });
  return cache_->constants;
}

Relation Scheme::union_of(std::span<const std::size_t> indices) const {
  Relation out(n_);
  for (std::size_t i : indices) out = unite(out, basis(i));
  return out;
}

namespace {

constexpr std::uint32_t kNoColor = std::numeric_limits<std::uint32_t>::max();

SchemeViolation violation(Axiom axiom, std::string detail,
                          std::vector<std::size_t> relations = {}) {
  SchemeViolation v;
  v.axiom = axiom;
  v.detail = std::move(detail);
  v.relations = std::move(relations);
  return v;
}

std::string pair_str(PointPair p) {
  return "(" + std::to_string(p.first) + ", " + std::to_string(p.second) + ")";
}

// Reusable counter for the (b, c) profile of a pair.
class ProfileCounter {
 public:
  ProfileCounter(const std::vector<std::uint32_t>& colors, std::size_t n,
                 std::size_t rank)
      : colors_(colors), n_(n), rank_(rank), counts_(rank * rank, 0) {}

  void count(Point alpha, Point beta) {
    for (Point g = 0; g < n_; ++g) {
      std::size_t key = std::size_t{colors_[alpha * n_ + g]} * rank_ +
                        colors_[g * n_ + beta];
      if (counts_[key]++ == 0) touched_.push_back(key);
    }
  }
  void reset() {
    for (auto k : touched_) counts_[k] = 0;
    touched_.clear();
  }
  std::vector<std::pair<std::size_t, std::uint32_t>> snapshot() const {
    std::vector<std::pair<std::size_t, std::uint32_t>> out;
    for (auto k : touched_) out.emplace_back(k, counts_[k]);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::uint32_t at(std::size_t key) const { return counts_[key]; }
  std::size_t distinct() const { return touched_.size(); }
  const std::vector<std::size_t>& touched() const { return touched_; }

 private:
  const std::vector<std::uint32_t>& colors_;
  std::size_t n_, rank_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::size_t> touched_;
};

}  // namespace

std::variant<Scheme, SchemeViolation> verify_scheme(std::span<const Relation> basis,
                                                   Certification mode,
                                                   std::uint64_t seed) {
  if (basis.empty()) return violation(Axiom::partition, "empty basis");
  std::size_t const n = basis.front().size();
  for (auto const& rel : basis) require_same_domain(basis.front(), rel);

  // partition: every pair coloured exactly once
  std::vector<std::uint32_t> raw(n * n, kNoColor);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].empty())
      return violation(Axiom::partition,
                       "basis relation " + std::to_string(i) + " is empty", {i});
    for (auto [x, y] : basis[i].pairs()) {
      auto& slot = raw[x * n + y];
      if (slot != kNoColor)
        return violation(Axiom::partition,
                         "pair " + pair_str({x, y}) + " lies in relations " +
                             std::to_string(slot) + " and " + std::to_string(i),
                         {slot, i});
      slot = static_cast<std::uint32_t>(i);
    }
  }
  for (std::size_t k = 0; k < raw.size(); ++k)
    if (raw[k] == kNoColor)
      return violation(Axiom::partition,
                       "pair " + pair_str({k / n, k % n}) + " is not covered");

  // canonical numbering by first appearance
  std::vector<std::uint32_t> renumber(basis.size(), kNoColor);
  std::uint32_t next = 0;
  for (auto c : raw)
    if (renumber[c] == kNoColor) renumber[c] = next++;
  Scheme s;
  s.n_ = n;
  s.colors_.resize(n * n);
  for (std::size_t k = 0; k < raw.size(); ++k) s.colors_[k] = renumber[raw[k]];
  s.basis_.assign(basis.size(), Relation(n));
  for (std::size_t i = 0; i < basis.size(); ++i) s.basis_[renumber[i]] = basis[i];
  std::size_t const rank = basis.size();

  // axiom 1: the diagonal is a basis relation (necessarily index 0)
  if (s.basis_[0] != Relation::diagonal(n))
    return violation(Axiom::diagonal,
                     "the basis relation containing (0, 0) is not the diagonal",
                     {0});

  // axiom 2: closed under transposition
  s.transpose_map_.resize(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    auto const& rel = s.basis_[i];
    Point x = 0;
    while (rel.row(x).none()) ++x;
    Point y = rel.row(x).find_first();
    std::size_t j = s.colors_[y * n + x];
    if (transpose(rel) != s.basis_[j])
      return violation(Axiom::transpose,
                       "transpose of relation " + std::to_string(i) +
                           " is not a basis relation",
                       {i});
    s.transpose_map_[i] = j;
  }

  // axiom 3: intersection numbers do not depend on the pair
  ProfileCounter counter(s.colors_, n, rank);
  std::mt19937_64 rng(seed);
  constexpr std::size_t kSamplesPerRelation = 64;
  for (std::size_t a = 0; a < rank; ++a) {
    auto pairs = s.basis_[a].pairs();
    PointPair ref = pairs.front();
    counter.reset();
    counter.count(ref.first, ref.second);
    auto profile = counter.snapshot();

    auto check = [&](PointPair p) -> std::optional<SchemeViolation> {
      counter.reset();
      counter.count(p.first, p.second);
      bool same = counter.distinct() == profile.size();
      std::size_t bad_key = 0;
      std::uint32_t ref_count = 0;
      for (auto [key, cnt] : profile) {
        if (counter.at(key) != cnt) {
          same = false;
          bad_key = key;
          ref_count = cnt;
          break;
        }
      }
      if (same) return std::nullopt;
      if (ref_count == 0) {
        // a key present for p but absent from the reference
        for (auto key : counter.touched()) {
          if (!std::binary_search(
                  profile.begin(), profile.end(), std::make_pair(key, std::uint32_t{0}),
                  [](auto const& l, auto const& r) { return l.first < r.first; })) {
            bad_key = key;
            break;
          }
        }
      }
      std::size_t b = bad_key / rank, c = bad_key % rank;
      SchemeViolation v = violation(
          Axiom::intersection,
          "relations (a, b, c) = (" + std::to_string(a) + ", " + std::to_string(b) +
              ", " + std::to_string(c) + "): pair " + pair_str(ref) + " has " +
              std::to_string(ref_count) + " intermediate points, pair " + pair_str(p) +
              " has " + std::to_string(counter.at(bad_key)),
          {a, b, c});
      v.reference_pair = ref;
      v.offending_pair = p;
      v.reference_count = ref_count;
      v.offending_count = counter.at(bad_key);
      return v;
    };

    if (mode == Certification::exhaustive || pairs.size() <= kSamplesPerRelation) {
      for (std::size_t i = 1; i < pairs.size(); ++i)
        if (auto v = check(pairs[i])) return *v;
    } else {
      std::uniform_int_distribution<std::size_t> pick(1, pairs.size() - 1);
      for (std::size_t i = 0; i < kSamplesPerRelation; ++i)
        if (auto v = check(pairs[pick(rng)])) return *v;
    }
  }
  s.certification_ =
      mode == Certification::exhaustive ? Certification::exhaustive : Certification::sampled;
  s.cache_ = std::make_shared<Scheme::Cache>();
  return s;
}

Scheme certified(std::variant<Scheme, SchemeViolation> outcome) {
  if (auto* v = std::get_if<SchemeViolation>(&outcome))
    throw std::logic_error("scheme certification failed (" + to_string(v->axiom) +
                           "): " + v->detail);
  return std::get<Scheme>(std::move(outcome));
}

namespace {

std::vector<Relation> classes_from_colors(const std::vector<std::uint32_t>& colors,
                                          std::size_t n, std::size_t count) {
  std::vector<Relation> out(count, Relation(n));
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) out[colors[x * n + y]].row(x).set(y);
  return out;
}

}  // namespace

Scheme pair_orbit_scheme(std::span<const Permutation> generators) {
  if (generators.empty())
    throw std::invalid_argument("pair_orbit_scheme: no generators");
  std::size_t const n = generators.front().size();
  for (auto const& g : generators)
    if (g.size() != n)
      throw std::invalid_argument("pair_orbit_scheme: generators of different degree");
  if (!is_transitive(generators))
    throw IntransitiveGroupError("pair_orbit_scheme: group is not transitive on " +
                                 std::to_string(n) + " points");

  std::vector<std::uint32_t> orbit(n * n, kNoColor);
  std::uint32_t count = 0;
  std::vector<std::size_t> queue;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (orbit[start] != kNoColor) continue;
    orbit[start] = count;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Point x = queue[head] / n, y = queue[head] % n;
      for (auto const& g : generators) {
        std::size_t img = g(x) * n + g(y);
        if (orbit[img] == kNoColor) {
          orbit[img] = count;
          queue.push_back(img);
        }
      }
    }
    ++count;
  }
  auto basis = classes_from_colors(orbit, n, count);
  return certified(verify_scheme(basis));
}

WlOutcome wl_closure(std::span<const Relation> seed) {
  if (seed.empty()) throw std::invalid_argument("wl_closure: empty seed");
  std::size_t const n = seed.front().size();
  for (auto const& rel : seed) require_same_domain(seed.front(), rel);

  // initial colours: diagonal flag plus membership in each seed relation
  std::vector<std::uint32_t> colors(n * n);
  std::size_t classes = 0;
  {
    std::map<std::vector<bool>, std::uint32_t> ids;
    std::vector<std::vector<bool>> keys(n * n);
    for (Point x = 0; x < n; ++x)
      for (Point y = 0; y < n; ++y) {
        std::vector<bool> key{x == y};
        for (auto const& rel : seed) key.push_back(rel.contains(x, y));
        ids.emplace(key, 0);
        keys[x * n + y] = std::move(key);
      }
    std::uint32_t id = 0;
    for (auto& [key, value] : ids) value = id++;
    for (std::size_t k = 0; k < n * n; ++k) colors[k] = ids.at(keys[k]);
    classes = ids.size();
  }

  // refine until the number of classes stops growing
  std::vector<std::vector<std::uint64_t>> sigs(n * n);
  while (true) {
    std::uint64_t const base = classes;
    for (Point x = 0; x < n; ++x)
      for (Point y = 0; y < n; ++y) {
        auto& sig = sigs[x * n + y];
        sig.clear();
        // own colour first, so refinement never merges classes
        sig.push_back(colors[x * n + y]);
        sig.push_back(colors[y * n + x]);
        for (Point g = 0; g < n; ++g)
          sig.push_back(colors[x * n + g] * base + colors[g * n + y]);
        std::sort(sig.begin() + 2, sig.end());
      }
    std::vector<std::size_t> order(n * n);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return sigs[l] < sigs[r]; });
    std::vector<std::uint32_t> refined(n * n);
    std::uint32_t id = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0 && sigs[order[i]] != sigs[order[i - 1]]) ++id;
      refined[order[i]] = id;
    }
    std::size_t const refined_classes = std::size_t{id} + 1;
    colors = std::move(refined);
    if (refined_classes == classes) break;
    classes = refined_classes;
  }

  std::vector<std::uint32_t> diag;
  for (Point x = 0; x < n; ++x) diag.push_back(colors[x * n + x]);
  std::sort(diag.begin(), diag.end());
  diag.erase(std::unique(diag.begin(), diag.end()), diag.end());
  if (diag.size() > 1) return InhomogeneousColoring{diag.size(), classes};

  auto basis = classes_from_colors(colors, n, classes);
  auto verdict = verify_scheme(basis);
  if (auto* v = std::get_if<SchemeViolation>(&verdict)) return *v;
  return std::get<Scheme>(std::move(verdict));
}

bool in_s_union(const Scheme& scheme, const Relation& a) {
  if (a.size() != scheme.size())
    throw std::invalid_argument("in_s_union: domain mismatch");
  std::vector<std::uint8_t> seen(scheme.rank(), 0);  // bit 0 inside, bit 1 outside
  std::size_t const n = scheme.size();
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y) seen[scheme.color(x, y)] |= a.contains(x, y) ? 1 : 2;
  return std::none_of(seen.begin(), seen.end(), [](auto s) { return s == 3; });
}

bool distance_partition_in_s_union(const Scheme& scheme, const Relation& b) {
  if (!in_s_union(scheme, b))
    throw std::invalid_argument("distance partition: relation is not in S^u");
  if (!is_symmetric(b))
    throw std::invalid_argument("distance partition: relation is not symmetric");
  auto d = directed_distances(b);
  if (!d.all_reachable())
    throw std::invalid_argument("distance partition: relation is disconnected");
  std::size_t const n = scheme.size();
  for (std::size_t i = 0; i <= d.max_finite(); ++i) {
    Relation layer(n);
    for (Point x = 0; x < n; ++x)
      for (Point y = 0; y < n; ++y)
        if (d(x, y) == i) layer.row(x).set(y);
    if (!in_s_union(scheme, layer)) return false;
  }
  return true;
}

std::vector<std::uint64_t> chain_path_counts(const Scheme& scheme,
                                             std::span<const std::size_t> chain,
                                             std::size_t r) {
  if (chain.empty()) throw std::invalid_argument("path counts: chain must be nonempty");
  for (auto i : chain)
    if (i >= scheme.rank()) throw std::out_of_range("path counts: basis index");
  if (r >= scheme.rank()) throw std::out_of_range("path counts: basis index");
  std::size_t const n = scheme.size();
  std::vector<std::uint64_t> out, cur(n), nxt(n);
  for (Point u = 0; u < n; ++u) {
    if (scheme.basis(r).row(u).none()) continue;
    std::fill(cur.begin(), cur.end(), 0);
    cur[u] = 1;
    for (auto step : chain) {
      std::fill(nxt.begin(), nxt.end(), 0);
      for (Point x = 0; x < n; ++x) {
        if (cur[x] == 0) continue;
        scheme.basis(step).row(x).for_each([&](std::size_t y) { nxt[y] += cur[x]; });
      }
      std::swap(cur, nxt);
    }
    scheme.basis(r).row(u).for_each([&](std::size_t w) { out.push_back(cur[w]); });
  }
  return out;
}

bool path_count_invariance_check(const Scheme& scheme,
                                 std::span<const std::size_t> chain, std::size_t r) {
  auto counts = chain_path_counts(scheme, chain, r);
  return std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) ==
         counts.end();
}

}  // namespace schemes

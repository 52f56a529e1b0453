#include "schemes/inequalities.hpp"

#include <bit>
#include <vector>

#include "schemes/metrics.hpp"

namespace schemes {

BoundReport BoundReport::make(std::string name, Rational lhs, Rational rhs,
                              std::string witness) {
  BoundReport r;
  r.name = std::move(name);
  r.holds = lhs <= rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.witness = std::move(witness);
  return r;
}

BoundReport BoundReport::make_equal(std::string name, Rational lhs, Rational rhs,
                                    std::string witness) {
  BoundReport r = make(std::move(name), std::move(lhs), std::move(rhs), std::move(witness));
  r.holds = r.lhs == r.rhs;
  return r;
}

nlohmann::json to_json(const BoundReport& report) {
  return {{"name", report.name},
          {"lhs", to_string(report.lhs)},
          {"rhs", to_string(report.rhs)},
          {"holds", report.holds},
          {"witness", report.witness}};
}

namespace {

std::string subset_str(const PointSubset& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t x) {
    if (!first) out += ",";
    out += std::to_string(x);
    first = false;
  });
  return out + "}";
}

void require_member(const Scheme& scheme, const Relation& a, const char* what) {
  if (!in_s_union(scheme, a))
    throw PreconditionError(std::string(what) + ": relation is not in S^u");
}

Relation with_loops(const Relation& a) { return unite(a, Relation::diagonal(a.size())); }

}  // namespace

BoundReport check_ruzsa(const Relation& a, const Relation& b, const Relation& c) {
  require_same_domain(a, b);
  require_same_domain(a, c);
  if (auto v = irregular_vertex(b))
    throw PreconditionError("ruzsa: b is not regular (vertex " + std::to_string(*v) +
                            " has out-degree " + std::to_string(b.out_degree(*v)) +
                            ", vertex 0 has " + std::to_string(b.out_degree(0)) + ")");
  Rational lhs = Rational(norm(product(a, c))) * norm(b);
  Rational rhs = Rational(norm(product(a, b))) * norm(product(transpose(b), c));
  return BoundReport::make("ruzsa", lhs, rhs);
}

BoundReport check_comm_ind(const Scheme& scheme, const Relation& a, const Relation& b) {
  require_member(scheme, a, "comm_ind");
  require_member(scheme, b, "comm_ind");
  Rational lhs = Rational(norm(product(a, transpose(a)))) * norm(b);
  Rational ab = norm(product(a, b));
  return BoundReport::make("comm_ind", lhs, ab * ab);
}

ExpansionChecker::ExpansionChecker(const Scheme& scheme, const Relation& b)
    : b_(b), diameter_(0) {
  require_member(scheme, b, "expansion");
  if (!is_symmetric(b)) throw PreconditionError("expansion: relation is not symmetric");
  auto d = directed_distances(b);
  if (!d.all_reachable()) throw PreconditionError("expansion: relation is disconnected");
  diameter_ = d.max_finite();
}

BoundReport ExpansionChecker::check(const PointSubset& subset) const {
  std::size_t const n = b_.size(), t = subset.count();
  if (subset.size() != n || t == 0)
    throw PreconditionError("expansion: subset must be a nonempty subset of the points");
  std::size_t const boundary_size = boundary(b_, subset).count();
  Rational const frac = ratio(t, n);
  Rational bound = 2 * (1 - frac) / (Rational(diameter_) + frac);
  Rational const actual = ratio(boundary_size, t);
  return BoundReport::make("expansion", bound, actual, "T=" + subset_str(subset));
}

BoundReport ExpansionChecker::check_half(const PointSubset& subset) const {
  std::size_t const n = b_.size(), t = subset.count();
  if (subset.size() != n || t == 0 || 2 * t > n)
    throw PreconditionError("expansion: simplified form needs 0 < |T| <= n/2");
  std::size_t const boundary_size = boundary(b_, subset).count();
  Rational const bound = ratio(2, 2 * diameter_ + 1);
  Rational const actual = ratio(boundary_size, t);
  return BoundReport::make("expansion_half", bound, actual, "T=" + subset_str(subset));
}

namespace {

// |boundary| / t >= 2(n - t) / (d n + t), cross-multiplied as
// actual = |boundary| (d n + t) against needed = 2 t (n - t).
template <class Subset>
struct SweepState {
  std::size_t n = 0, d = 0;
  std::uint64_t subsets = 0;
  // tightest: smallest actual / needed over subsets with needed > 0
  unsigned __int128 best_actual = 1, best_needed = 0;
  Subset best{};
  std::optional<Subset> failing;

  void visit(const Subset& current, std::size_t t, std::size_t boundary_size) {
    ++subsets;
    unsigned __int128 const actual =
        static_cast<unsigned __int128>(boundary_size) * (d * n + t);
    unsigned __int128 const needed = static_cast<unsigned __int128>(2 * t) * (n - t);
    if (actual < needed && !failing) failing = current;
    if (needed == 0) return;
    if (best_needed == 0 || actual * best_needed < best_actual * needed) {
      best_actual = actual;
      best_needed = needed;
      best = current;
    }
  }
};

// Rows fit one machine word and subsets are bit masks. Every quantity is
// below 2^32 for n <= 64, so the cross-multiplied comparisons fit 64 bits.
struct SmallSweep {
  std::size_t n = 0;
  const std::uint64_t* rows = nullptr;
  std::uint64_t coef[66] = {};    // d n + t
  std::uint64_t needed[66] = {};  // 2 t (n - t)
  std::uint64_t subsets = 0;
  std::uint64_t best_actual = 1, best_needed = 0, best = 0;
  std::optional<std::uint64_t> failing;

  void visit(std::uint64_t m, std::size_t t, std::uint64_t boundary_size) {
    ++subsets;
    std::uint64_t const actual = boundary_size * coef[t], need = needed[t];
    if (actual * best_needed < best_actual * need || best_needed == 0) {
      if (need == 0) return;
      if (actual < need && !failing) failing = m;
      best_actual = actual;
      best_needed = need;
      best = m;
    }
  }

  void run(std::size_t start, std::size_t remaining, std::size_t t, std::uint64_t members,
           std::uint64_t reach) {
    if (remaining == 1) {
      for (std::size_t v = start; v < n; ++v) {
        std::uint64_t const m = members | (std::uint64_t{1} << v);
        visit(m, t + 1, static_cast<std::uint64_t>(std::popcount((reach | rows[v]) & ~m)));
      }
      return;
    }
    for (std::size_t v = start; v < n; ++v) {
      std::uint64_t const m = members | (std::uint64_t{1} << v);
      std::uint64_t const r = reach | rows[v];
      visit(m, t + 1, static_cast<std::uint64_t>(std::popcount(r & ~m)));
      run(v + 1, remaining - 1, t + 1, m, r);
    }
  }
};

void sweep_general(const Relation& b, std::size_t start, std::size_t remaining,
                   std::size_t t, const Bitset& members, const Bitset& reach,
                   SweepState<Bitset>& st) {
  for (std::size_t v = start; v < st.n; ++v) {
    Bitset m = members;
    m.set(v);
    Bitset r = reach | b.row(v);
    st.visit(m, t + 1, Bitset(r).subtract(m).count());
    if (remaining > 1) sweep_general(b, v + 1, remaining - 1, t + 1, m, r, st);
  }
}

PointSubset subset_of(std::size_t n, std::uint64_t mask) {
  PointSubset s(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1u) s.set(i);
  return s;
}

}  // namespace

ExpansionChecker::Sweep ExpansionChecker::sweep(std::size_t max_size, bool rooted) const {
  std::size_t const n = b_.size();
  Sweep out;
  auto finish = [&](auto& st, auto to_subset) {
    out.subsets = st.subsets;
    out.tightest = st.best_needed != 0 ? check(to_subset(st.best))
                                       : check(PointSubset::filled(n));
    if (st.failing) out.failure = check(to_subset(*st.failing));
  };
  if (n <= 64) {
    SmallSweep st;
    st.n = n;
    std::vector<std::uint64_t> rows(n);
    for (Point x = 0; x < n; ++x) rows[x] = b_.row(x).words()[0];
    st.rows = rows.data();
    for (std::size_t t = 0; t <= n; ++t) {
      st.coef[t] = diameter_ * n + t;
      st.needed[t] = 2 * t * (n - t);
    }
    if (max_size > 0) {
      if (rooted) {
        st.visit(1, 1, static_cast<std::uint64_t>(std::popcount(rows[0] & ~std::uint64_t{1})));
        if (max_size > 1) st.run(1, max_size - 1, 1, 1, rows[0]);
      } else {
        st.run(0, max_size, 0, 0, 0);
      }
    }
    finish(st, [&](std::uint64_t mask) { return subset_of(n, mask); });
  } else {
    SweepState<Bitset> st;
    st.n = n;
    st.d = diameter_;
    if (max_size > 0) {
      if (rooted) {
        Bitset m(n);
        m.set(0);
        st.visit(m, 1, Bitset(b_.row(0)).subtract(m).count());
        if (max_size > 1) sweep_general(b_, 1, max_size - 1, 1, m, b_.row(0), st);
      } else {
        sweep_general(b_, 0, max_size, 0, Bitset(n), Bitset(n), st);
      }
    }
    finish(st, [](const Bitset& s) { return s; });
  }
  return out;
}

BoundReport check_expansion(const Scheme& scheme, const Relation& b,
                            const PointSubset& subset) {
  return ExpansionChecker(scheme, b).check(subset);
}

std::size_t ceil_log2_log2(std::size_t n) {
  // least j with n <= 2^(2^j)
  std::size_t j = 0;
  while (true) {
    std::size_t const exponent = std::size_t{1} << j;
    if (exponent >= 64 || n <= (std::size_t{1} << exponent)) return j;
    ++j;
  }
}

BoundReport comm_bound(const Scheme& scheme, const Relation& a) {
  require_member(scheme, a, "comm_bound");
  Relation const at = transpose(a);
  Relation const left = product(a, at), right = product(at, a);
  if (left != right) {
    for (Point x = 0; x < a.size(); ++x) {
      Bitset diff = left.row(x) ^ right.row(x);
      if (auto y = diff.find_first(); y != Bitset::npos)
        throw PreconditionError("comm_bound: aa* != a*a at pair (" + std::to_string(x) +
                                ", " + std::to_string(y) + ")");
    }
  }
  std::size_t const diam = undirected_diameter(a);
  std::size_t const directed = directed_diameter(with_loops(a));
  std::size_t const n = a.size();
  Rational rhs = Rational(2 * diam) * (ceil_log2_log2(n) + 1);
  return BoundReport::make("comm_bound", Rational(directed), rhs,
                           "n=" + std::to_string(n) + " diam=" + std::to_string(diam));
}

std::uint64_t mains_explicit_bound(std::size_t d, std::size_t n) {
  if (d == 0 || n < 2)
    throw std::invalid_argument("mains_explicit_bound: needs d >= 1 and n >= 2");
  // k = 1 + ceil(log2(n^(4d)))
  BigInt power = 1;
  for (std::size_t i = 0; i < 4 * d; ++i) power *= n;
  std::uint64_t k = 1 + (power == 1 ? 0 : msb(BigInt(power - 1)) + 1);
  // least m with 4 (2d + 1)^m > n^2 (2d)^m
  BigInt lhs = 4, rhs = BigInt(n) * n;
  std::uint64_t m = 0;
  while (lhs <= rhs) {
    lhs *= 2 * d + 1;
    rhs *= 2 * d;
    ++m;
  }
  return 2 * m * (k + 1);
}

BoundReport check_mains(const Scheme& scheme, const Relation& a) {
  require_member(scheme, a, "mains");
  std::size_t const n = a.size();
  if (n < 2) throw PreconditionError("mains: needs at least two points");
  std::size_t const diam = undirected_diameter(a);
  std::size_t const directed = directed_diameter(with_loops(a));
  return BoundReport::make("mains", Rational(directed),
                           Rational(mains_explicit_bound(diam, n)),
                           "n=" + std::to_string(n) + " diam=" + std::to_string(diam));
}

BoundReport check_star_ratio(const Scheme& scheme, const Relation& a,
                             const Relation& t) {
  require_member(scheme, a, "star");
  require_member(scheme, t, "star");
  std::size_t const n = a.size(), tn = norm(t);
  if (tn == 0 || 2 * tn > n)
    throw PreconditionError("star: needs 0 < ||t|| <= n/2");
  std::size_t const d = undirected_diameter(a);
  if (d == 0) throw PreconditionError("star: needs at least two points");
  Relation const al = with_loops(a);
  std::size_t const grown = norm(product(product(t, al), transpose(al)));
  return BoundReport::make("star", 1 + ratio(1, 2 * d),
                           ratio(grown, tn),
                           "||t||=" + std::to_string(tn) + " d=" + std::to_string(d));
}

BoundReport check_pigeonhole_doubling(const Relation& a) {
  std::size_t const n = a.size();
  if (!is_biregular(a)) throw PreconditionError("pigeonhole: relation is not biregular");
  if (2 * norm(a) <= n) throw PreconditionError("pigeonhole: needs ||a|| > n/2");
  return BoundReport::make("pigeonhole", Rational(n * n),
                           Rational(product(a, a).pair_count()));
}

}  // namespace schemes

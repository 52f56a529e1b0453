#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "schemes/exact.hpp"
#include "schemes/relation.hpp"
#include "schemes/scheme.hpp"

namespace schemes {

/// Outcome of checking one inequality `lhs <= rhs` on one instance, or an
/// identity `lhs == rhs` when built with `make_equal`. Both sides are exact.
struct BoundReport {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool holds = false;
  std::string witness;

  static BoundReport make(std::string name, Rational lhs, Rational rhs,
                          std::string witness = {});
  static BoundReport make_equal(std::string name, Rational lhs, Rational rhs,
                                std::string witness = {});
};

nlohmann::json to_json(const BoundReport& report);

/// A hypothesis of the inequality being checked does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ||ac|| * ||b|| <= ||ab|| * ||b* c|| for regular b.
BoundReport check_ruzsa(const Relation& a, const Relation& b, const Relation& c);

/// ||aa*|| * ||b|| <= ||ab||^2 for a, b in S^u (both sides squared).
BoundReport check_comm_ind(const Scheme& scheme, const Relation& a, const Relation& b);

/// Vertex expansion of a symmetric connected relation of S^u.
///
/// Construction validates the hypotheses and computes the undirected
/// diameter once, so many subsets can be checked cheaply.
class ExpansionChecker {
 public:
  ExpansionChecker(const Scheme& scheme, const Relation& b);

  std::size_t diameter() const noexcept { return diameter_; }
  const Relation& relation() const noexcept { return b_; }

  /// 2(1 - t/n) / (diam + t/n) <= |boundary(T)| / t.
  BoundReport check(const PointSubset& subset) const;
  /// 2 / (2 diam + 1) <= |boundary(T)| / t, for 0 < t <= n/2.
  BoundReport check_half(const PointSubset& subset) const;

  struct Sweep {
    std::uint64_t subsets = 0;
    /// Subset attaining the smallest ratio of actual to bound.
    BoundReport tightest;
    std::optional<BoundReport> failure;
  };

  /// Every nonempty T with |T| <= max_size. With `rooted`, only subsets that
  /// contain point 0; that covers all subsets up to symmetry when b is
  /// invariant under a transitive group.
  Sweep sweep(std::size_t max_size, bool rooted) const;

 private:
  Relation b_;
  std::size_t diameter_;
};

BoundReport check_expansion(const Scheme& scheme, const Relation& b,
                            const PointSubset& subset);

/// ceil(log2(max(1, log2 n))), i.e. the least j >= 0 with n <= 2^(2^j).
std::size_t ceil_log2_log2(std::size_t n);

/// diam(a u 1) <= 2 diam(a) (ceil(log log n) + 1) for a in S^u with
/// aa* = a*a. Throws PreconditionError naming a pair that breaks
/// commutativity.
BoundReport comm_bound(const Scheme& scheme, const Relation& a);

/// 2 m (k + 1) with k = ceil(1 + 4 d log2 n) and m the least integer such
/// that (1 + 1/(2d))^(m/2) > n/2. d >= 1, n >= 2.
std::uint64_t mains_explicit_bound(std::size_t d, std::size_t n);

/// diam(a u 1) <= mains_explicit_bound(diam(a), n) for connected a in S^u.
BoundReport check_mains(const Scheme& scheme, const Relation& a);

/// For t in S^u with 0 < ||t|| <= n/2 and connected a in S^u:
/// 1 + 1/(2d) <= ||t a' a'*|| / ||t||, where a' = a u 1 and d = diam(a).
BoundReport check_star_ratio(const Scheme& scheme, const Relation& a,
                             const Relation& t);

/// aa is the full relation whenever a is biregular with ||a|| > n/2.
BoundReport check_pigeonhole_doubling(const Relation& a);

}  // namespace schemes

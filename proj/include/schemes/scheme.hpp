#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "schemes/relation.hpp"

namespace schemes {

/// A bijection of {0, ..., n-1}, stored as its image array.
class Permutation {
 public:
  /// Throws std::invalid_argument unless images is a bijection.
  explicit Permutation(std::vector<Point> images);
  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  Point operator()(Point x) const noexcept { return images_[x]; }
  const std::vector<Point>& images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

/// Apply `first`, then `second`: x -> second(first(x)).
Permutation compose(const Permutation& first, const Permutation& second);

/// `n` on the first line, then one generator per line as n images.
std::vector<Permutation> read_generators(std::istream& in);

/// Points reachable from `start` under the generators.
PointSubset point_orbit(std::span<const Permutation> generators, Point start);
bool is_transitive(std::span<const Permutation> generators);

class IntransitiveGroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axiom { partition, diagonal, transpose, intersection };

std::string to_string(Axiom axiom);

/// First failure found while certifying a candidate basis.
struct SchemeViolation {
  Axiom axiom;
  std::string detail;
  /// Basis indices (a, b, c) for intersection failures; (a) otherwise.
  std::vector<std::size_t> relations;
  /// Reference pair and offending pair for intersection failures.
  std::optional<PointPair> reference_pair;
  std::optional<PointPair> offending_pair;
  std::size_t reference_count = 0;
  std::size_t offending_count = 0;
};

enum class Certification {
  /// Every pair checked against every (b, c).
  exhaustive,
  /// Intersection numbers checked on a random sample of pairs only.
  sampled
};

/// A homogeneous coherent configuration on n points.
///
/// Basis relations are numbered by first appearance in a row-major scan of
/// the n x n colour matrix, so index 0 is always the diagonal and two schemes
/// with the same partition compare equal.
class Scheme {
 public:
  std::size_t size() const noexcept { return n_; }
  std::size_t rank() const noexcept { return basis_.size(); }

  std::uint32_t color(Point alpha, Point beta) const noexcept {
    return colors_[alpha * n_ + beta];
  }
  std::span<const std::uint32_t> color_matrix() const noexcept { return colors_; }

  const Relation& basis(std::size_t i) const { return basis_.at(i); }
  std::span<const Relation> basis() const noexcept { return basis_; }
  std::size_t transpose_of(std::size_t i) const { return transpose_map_.at(i); }
  std::span<const std::size_t> transpose_map() const noexcept { return transpose_map_; }
  /// Valency (common out-degree) of basis relation i.
  std::size_t valency(std::size_t i) const { return basis(i).out_degree(0); }

  Certification certification() const noexcept { return certification_; }

  /// |{g : (alpha, g) in b, (g, beta) in c}| for any (alpha, beta) in a.
  std::size_t intersection_number(std::size_t a, std::size_t b, std::size_t c) const;

  /// Dense rank^3 tensor of intersection numbers, index (a * rank + b) *
  /// rank + c. Computed on first use and cached; only sensible for small rank.
  const std::vector<std::uint32_t>& structure_constants() const;

  /// Union of the listed basis relations.
  Relation union_of(std::span<const std::size_t> indices) const;

  friend bool operator==(const Scheme& a, const Scheme& b) {
    return a.n_ == b.n_ && a.colors_ == b.colors_;
  }

 private:
  friend std::variant<Scheme, SchemeViolation> verify_scheme(std::span<const Relation>,
                                                            Certification,
                                                            std::uint64_t);
  Scheme() = default;

  struct Cache;

  std::size_t n_ = 0;
  std::vector<std::uint32_t> colors_;
  std::vector<Relation> basis_;
  std::vector<std::size_t> transpose_map_;
  Certification certification_ = Certification::exhaustive;
  std::shared_ptr<Cache> cache_;
};

/// Certify that `basis` is a scheme: a partition of all pairs containing the
/// diagonal as one cell, closed under transposition, with constant
/// intersection numbers. The sampled mode checks intersection numbers on a
/// seeded random sample of pairs and is meant for large n only.
std::variant<Scheme, SchemeViolation> verify_scheme(
    std::span<const Relation> basis,
    Certification mode = Certification::exhaustive, std::uint64_t seed = 0);

/// Throws std::logic_error carrying the violation when the outcome is not a
/// scheme.
Scheme certified(std::variant<Scheme, SchemeViolation> outcome);

/// Orbits of the generated group on ordered pairs. Throws
/// IntransitiveGroupError when the group is not transitive on points.
Scheme pair_orbit_scheme(std::span<const Permutation> generators);

/// The stable 2-dimensional Weisfeiler-Leman colouring splits the diagonal.
struct InhomogeneousColoring {
  std::size_t diagonal_classes;
  std::size_t total_classes;
};

using WlOutcome = std::variant<Scheme, InhomogeneousColoring, SchemeViolation>;

/// Coarsest coherent colouring refining the seed relations, the diagonal and
/// its complement.
WlOutcome wl_closure(std::span<const Relation> seed);

/// True iff every basis relation lies entirely inside or outside a.
bool in_s_union(const Scheme& scheme, const Relation& a);

/// Every distance-i relation of b lies in S^u. b must be a symmetric
/// connected member of S^u; violations throw std::invalid_argument.
bool distance_partition_in_s_union(const Scheme& scheme, const Relation& b);

/// Number of tuples (v_1, ..., v_m) with (v_1, v_m) = (u, w) and
/// (v_i, v_{i+1}) in chain[i - 1], for every (u, w) in relation r.
/// Returns the per-pair counts in row-major pair order.
std::vector<std::uint64_t> chain_path_counts(const Scheme& scheme,
                                             std::span<const std::size_t> chain,
                                             std::size_t r);

/// True iff chain_path_counts is constant over r.
bool path_count_invariance_check(const Scheme& scheme,
                                 std::span<const std::size_t> chain, std::size_t r);

}  // namespace schemes

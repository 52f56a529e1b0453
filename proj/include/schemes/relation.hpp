#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schemes/bitset.hpp"

namespace schemes {

using Point = std::size_t;
using PointPair = std::pair<Point, Point>;

/// A binary relation on {0, ..., n-1}, stored as n packed bit-rows.
///
/// Row alpha has bit beta set iff (alpha, beta) is in the relation. The
/// point set is never empty.
class Relation {
 public:
  /// Empty relation on n points. Throws std::invalid_argument when n == 0.
  explicit Relation(std::size_t n);

  static Relation diagonal(std::size_t n);
  static Relation full(std::size_t n);
  static Relation from_pairs(std::size_t n, std::span<const PointPair> pairs);

  std::size_t size() const noexcept { return rows_.size(); }

  bool contains(Point alpha, Point beta) const noexcept {
    return rows_[alpha].test(beta);
  }
  /// Bounds-checked membership.
  bool at(Point alpha, Point beta) const;

  void insert(Point alpha, Point beta);
  void erase(Point alpha, Point beta);

  /// The out-neighbourhood of alpha.
  const Bitset& row(Point alpha) const noexcept { return rows_[alpha]; }
  Bitset& row(Point alpha) noexcept { return rows_[alpha]; }

  std::size_t pair_count() const noexcept;
  bool empty() const noexcept { return pair_count() == 0; }
  std::size_t out_degree(Point alpha) const noexcept {
    return rows_[alpha].count();
  }
  std::vector<std::size_t> in_degrees() const;
  std::vector<PointPair> pairs() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::vector<Bitset> rows_;
};

/// { (a, b) | exists g: (a, g) in lhs and (g, b) in rhs }
Relation product(const Relation& lhs, const Relation& rhs);
Relation transpose(const Relation& a);
Relation unite(const Relation& a, const Relation& b);
Relation intersect(const Relation& a, const Relation& b);
Relation complement(const Relation& a);

bool is_subset(const Relation& a, const Relation& b);
bool is_symmetric(const Relation& a);

/// Maximum out-degree.
std::size_t norm(const Relation& a);

/// First vertex whose out-degree differs from that of vertex 0.
std::optional<Point> irregular_vertex(const Relation& a);
bool is_regular(const Relation& a);
/// All in-degrees and out-degrees equal one constant.
bool is_biregular(const Relation& a);

/// T a: union of the rows indexed by T.
PointSubset neighborhood(const Relation& a, const PointSubset& subset);

/// (a u 1)^k, by repeated squaring. k >= 1.
Relation power_with_loops(const Relation& a, std::size_t k);

/// Throws std::invalid_argument unless both relations live on the same
/// point set.
void require_same_domain(const Relation& a, const Relation& b);

/// Input error carrying the 1-based line number at which parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// `n` on the first line, then one `alpha beta` pair per line.
Relation read_edge_list(std::istream& in);
/// `n` on the first line, then n lines of n characters from {0, 1}.
Relation read_dense(std::istream& in);
/// Dense if the first data line is a single 0/1 token of length n,
/// edge list otherwise.
Relation read_relation(std::istream& in);

void write_edge_list(std::ostream& out, const Relation& a);
void write_dense(std::ostream& out, const Relation& a);

}  // namespace schemes

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schemes/exact.hpp"
#include "schemes/relation.hpp"

namespace schemes {

/// Raised when a metric needs (strong or weak) connectivity the input lacks.
class NotConnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All-pairs directed distances. Unreachable pairs hold the sentinel
/// `unreachable`, which never takes part in arithmetic.
class DistanceMatrix {
 public:
  using value_type = std::uint32_t;
  static constexpr value_type unreachable = std::numeric_limits<value_type>::max();

  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, unreachable) {}

  std::size_t size() const noexcept { return n_; }
  value_type operator()(Point x, Point y) const noexcept { return d_[x * n_ + y]; }
  value_type& operator()(Point x, Point y) noexcept { return d_[x * n_ + y]; }
  bool reachable(Point x, Point y) const noexcept {
    return (*this)(x, y) != unreachable;
  }
  bool all_reachable() const noexcept;
  /// Largest finite entry.
  value_type max_finite() const noexcept;

 private:
  std::size_t n_;
  std::vector<value_type> d_;
};

/// BFS distances from one source; unreachable points get the sentinel.
std::vector<DistanceMatrix::value_type> distances_from(const Relation& a, Point source);
DistanceMatrix directed_distances(const Relation& a);

bool is_strongly_connected(const Relation& a);
/// Connectivity of a u a*.
bool is_weakly_connected(const Relation& a);

/// Throws NotConnectedError unless a is strongly connected.
std::size_t directed_diameter(const Relation& a);
/// Directed diameter of a u a*. Throws NotConnectedError if that is
/// disconnected.
std::size_t undirected_diameter(const Relation& a);

/// Length of the shortest directed cycle; a self-loop counts as a cycle of
/// length one. std::nullopt for acyclic relations.
std::optional<std::size_t> directed_girth(const Relation& a);

/// Vertices outside T adjacent in b to a vertex of T. b must be symmetric.
PointSubset boundary(const Relation& b, const PointSubset& subset);

/// Number of shortest directed paths between every ordered pair, together
/// with the distances that define them. Geodesics are ordered sequences, so
/// p(x, y) and p(y, x) are counted independently.
class GeodesicCounts {
 public:
  explicit GeodesicCounts(std::size_t n) : distances_(n), p_(n * n, 0) {}

  std::size_t size() const noexcept { return distances_.size(); }
  const DistanceMatrix& distances() const noexcept { return distances_; }
  DistanceMatrix& distances() noexcept { return distances_; }
  std::uint64_t operator()(Point x, Point y) const noexcept {
    return p_[x * size() + y];
  }
  std::uint64_t& operator()(Point x, Point y) noexcept { return p_[x * size() + y]; }

 private:
  DistanceMatrix distances_;
  std::vector<std::uint64_t> p_;
};

/// Throws std::overflow_error if a count exceeds 64 bits.
GeodesicCounts geodesic_counts(const Relation& a);

/// P_z = sum over (x, y) of N_z(x, y) / p(x, y), where N_z counts the
/// geodesics from x to y passing through z. Requires a symmetric connected
/// relation.
Rational through_vertex_count(const Relation& a, Point z);
Rational through_vertex_count(const GeodesicCounts& counts, Point z);

/// sum over ordered pairs of (d(x, y) + 1). Requires all pairs reachable.
BigInt distance_plus_one_sum(const DistanceMatrix& d);

}  // namespace schemes

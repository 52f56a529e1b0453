#include "schemes/metrics.hpp"

#include <algorithm>
#include <map>

namespace schemes {

bool DistanceMatrix::all_reachable() const noexcept {
  return std::find(d_.begin(), d_.end(), unreachable) == d_.end();
}

DistanceMatrix::value_type DistanceMatrix::max_finite() const noexcept {
  value_type best = 0;
  for (auto v : d_)
    if (v != unreachable) best = std::max(best, v);
  return best;
}

std::vector<DistanceMatrix::value_type> distances_from(const Relation& a,
                                                       Point source) {
  std::size_t const n = a.size();
  if (source >= n) throw std::out_of_range("distances_from: source out of range");
  std::vector<DistanceMatrix::value_type> dist(n, DistanceMatrix::unreachable);
  Bitset visited(n), frontier(n);
  visited.set(source);
  frontier.set(source);
  dist[source] = 0;
  for (DistanceMatrix::value_type level = 1; frontier.any(); ++level) {
    Bitset next(n);
    frontier.for_each([&](std::size_t x) { next |= a.row(x); });
    next.subtract(visited);
    next.for_each([&](std::size_t y) { dist[y] = level; });
    visited |= next;
    frontier = std::move(next);
  }
  return dist;
}

DistanceMatrix directed_distances(const Relation& a) {
  DistanceMatrix d(a.size());
  for (Point x = 0; x < a.size(); ++x) {
    auto row = distances_from(a, x);
    for (Point y = 0; y < a.size(); ++y) d(x, y) = row[y];
  }
  return d;
}

namespace {

// Every vertex reachable from 0 and 0 reachable from every vertex.
bool strongly_connected_impl(const Relation& a) {
  auto fwd = distances_from(a, 0);
  auto bwd = distances_from(transpose(a), 0);
  for (Point x = 0; x < a.size(); ++x)
    if (fwd[x] == DistanceMatrix::unreachable ||
        bwd[x] == DistanceMatrix::unreachable)
      return false;
  return true;
}

}  // namespace

bool is_strongly_connected(const Relation& a) { return strongly_connected_impl(a); }

bool is_weakly_connected(const Relation& a) {
  return strongly_connected_impl(unite(a, transpose(a)));
}

std::size_t directed_diameter(const Relation& a) {
  auto d = directed_distances(a);
  if (!d.all_reachable())
    throw NotConnectedError("directed diameter: relation is not strongly connected");
  return d.max_finite();
}

std::size_t undirected_diameter(const Relation& a) {
  auto d = directed_distances(unite(a, transpose(a)));
  if (!d.all_reachable())
    throw NotConnectedError("undirected diameter: relation is disconnected");
  return d.max_finite();
}

std::optional<std::size_t> directed_girth(const Relation& a) {
  std::optional<std::size_t> best;
  for (Point v = 0; v < a.size(); ++v) {
    // shortest cycle through v: an edge u -> v closing a path v -> u
    auto from_v = distances_from(a, v);
    for (Point u = 0; u < a.size(); ++u) {
      if (!a.contains(u, v) || from_v[u] == DistanceMatrix::unreachable) continue;
      std::size_t len = std::size_t{from_v[u]} + 1;
      if (!best || len < *best) best = len;
    }
    if (best == 1u) break;
  }
  return best;
}

PointSubset boundary(const Relation& b, const PointSubset& subset) {
  if (!is_symmetric(b))
    throw std::invalid_argument("boundary: relation must be symmetric");
  PointSubset out = neighborhood(b, subset);
  out.subtract(subset);
  return out;
}

GeodesicCounts geodesic_counts(const Relation& a) {
  std::size_t const n = a.size();
  GeodesicCounts counts(n);
  std::vector<Point> queue;
  queue.reserve(n);
  for (Point x = 0; x < n; ++x) {
    auto& dist = counts.distances();
    queue.clear();
    queue.push_back(x);
    dist(x, x) = 0;
    counts(x, x) = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Point u = queue[head];
      auto const du = dist(x, u);
      std::uint64_t const pu = counts(x, u);
      a.row(u).for_each([&](std::size_t y) {
        if (dist(x, y) == DistanceMatrix::unreachable) {
          dist(x, y) = du + 1;
          queue.push_back(y);
        }
        if (dist(x, y) == du + 1) {
          if (__builtin_add_overflow(counts(x, y), pu, &counts(x, y)))
            throw std::overflow_error("geodesic_counts: count exceeds 64 bits");
        }
      });
    }
  }
  return counts;
}

Rational through_vertex_count(const GeodesicCounts& counts, Point z) {
  auto const& d = counts.distances();
  std::size_t const n = counts.size();
  if (z >= n) throw std::out_of_range("through_vertex_count: point out of range");
  if (!d.all_reachable())
    throw NotConnectedError("through_vertex_count: relation is disconnected");
  // group numerators by the denominator p(x, y) so that only a handful of
  // rational additions are needed
  std::map<std::uint64_t, BigInt> by_denominator;
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (std::uint64_t{d(x, z)} + d(z, y) != d(x, y)) continue;
      BigInt through = BigInt(counts(x, z)) * counts(z, y);
      by_denominator[counts(x, y)] += through;
    }
  }
  Rational total = 0;
  for (auto const& [den, num] : by_denominator) total += Rational(num, BigInt(den));
  return total;
}

Rational through_vertex_count(const Relation& a, Point z) {
  if (!is_symmetric(a))
    throw std::invalid_argument("through_vertex_count: relation must be symmetric");
  return through_vertex_count(geodesic_counts(a), z);
}

BigInt distance_plus_one_sum(const DistanceMatrix& d) {
  if (!d.all_reachable())
    throw NotConnectedError("distance sum: some pair is unreachable");
  std::uint64_t acc = 0;
  for (Point x = 0; x < d.size(); ++x)
    for (Point y = 0; y < d.size(); ++y) acc += std::uint64_t{d(x, y)} + 1;
  return BigInt(acc);
}

}  // namespace schemes

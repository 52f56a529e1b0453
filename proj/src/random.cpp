#include "schemes/random.hpp"

#include <numeric>
#include <stdexcept>

namespace schemes {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // reject the top partial block so every residue is equally likely
  std::uint64_t const limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  while (true) {
    std::uint64_t x = engine_();
    if (x <= limit) return x % bound;
  }
}

Rng Rng::fork(std::uint64_t index) {
  // splitmix64 finaliser over (draw, index)
  std::uint64_t z = next() + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return Rng(z ^ (z >> 31));
}

Relation random_relation(Rng& rng, std::size_t n, std::uint64_t num, std::uint64_t den) {
  Relation a(n);
  for (Point x = 0; x < n; ++x)
    for (Point y = 0; y < n; ++y)
      if (rng.chance(num, den)) a.insert(x, y);
  return a;
}

Relation random_regular_relation(Rng& rng, std::size_t n, std::size_t degree) {
  if (degree > n) throw std::invalid_argument("random_regular_relation: degree exceeds n");
  Relation a(n);
  std::vector<Point> points(n);
  for (Point x = 0; x < n; ++x) {
    std::iota(points.begin(), points.end(), Point{0});
    // partial Fisher-Yates
    for (std::size_t i = 0; i < degree; ++i) {
      std::swap(points[i], points[i + rng.below(n - i)]);
      a.insert(x, points[i]);
    }
  }
  return a;
}

Relation random_strongly_connected(Rng& rng, std::size_t n, std::uint64_t num,
                                   std::uint64_t den) {
  std::vector<Point> order(n);
  std::iota(order.begin(), order.end(), Point{0});
  rng.shuffle(order);
  Relation a = random_relation(rng, n, num, den);
  if (n > 1)
    for (std::size_t i = 0; i < n; ++i) a.insert(order[i], order[(i + 1) % n]);
  return a;
}

std::vector<std::size_t> random_basis_subset(Rng& rng, const Scheme& scheme,
                                             bool skip_diagonal) {
  std::size_t const first = skip_diagonal ? 1 : 0;
  std::vector<std::size_t> out;
  for (std::size_t i = first; i < scheme.rank(); ++i)
    if (rng.chance(1, 2)) out.push_back(i);
  if (out.empty() && first < scheme.rank())
    out.push_back(first + rng.below(scheme.rank() - first));
  return out;
}

}  // namespace schemes

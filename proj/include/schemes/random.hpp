#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "schemes/relation.hpp"
#include "schemes/scheme.hpp"

namespace schemes {

/// Seeded generator whose output is identical across standard libraries.
/// std::uniform_int_distribution is implementation-defined, so draws go
/// through `below` instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// True with probability num / den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  /// Independent stream for sub-task `index`.
  Rng fork(std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

/// Each pair independently with probability num / den.
Relation random_relation(Rng& rng, std::size_t n, std::uint64_t num, std::uint64_t den);

/// Every row a uniformly random `degree`-subset.
Relation random_regular_relation(Rng& rng, std::size_t n, std::size_t degree);

/// A random Hamiltonian cycle plus each other pair with probability num / den.
Relation random_strongly_connected(Rng& rng, std::size_t n, std::uint64_t num,
                                   std::uint64_t den);

/// Random subset of basis indices; each index kept with probability 1/2.
/// `skip_diagonal` drops index 0; the result is never empty when possible.
std::vector<std::size_t> random_basis_subset(Rng& rng, const Scheme& scheme,
                                             bool skip_diagonal);

}  // namespace schemes

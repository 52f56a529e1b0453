#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "schemes/inequalities.hpp"
#include "schemes/relation.hpp"
#include "schemes/scheme.hpp"

namespace schemes {

using Residue = std::uint32_t;

/// A subset of Z_q, kept sorted and duplicate-free.
class CyclicSet {
 public:
  /// Throws std::invalid_argument if q == 0 or a residue is outside [0, q).
  CyclicSet(Residue q, std::vector<Residue> elements);
  static CyclicSet whole(Residue q);
  static CyclicSet from_bits(const Bitset& bits);

  Residue modulus() const noexcept { return q_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(Residue x) const;
  const std::vector<Residue>& elements() const noexcept { return elements_; }
  Bitset bits() const;

  friend bool operator==(const CyclicSet&, const CyclicSet&) = default;

 private:
  Residue q_;
  std::vector<Residue> elements_;
};

std::string to_string(const CyclicSet& a);

/// A + B. Throws std::invalid_argument on modulus mismatch.
CyclicSet sumset(const CyclicSet& a, const CyclicSet& b);
/// k . A = A + ... + A (k >= 1 summands).
CyclicSet k_fold(const CyclicSet& a, std::size_t k);
/// A - A.
CyclicSet difference_set(const CyclicSet& a);
/// x + A for the x that maps min(A) to 0. Throws on empty A.
CyclicSet normalize_shift(const CyclicSet& a);
/// x + A.
CyclicSet shift_set(const CyclicSet& a, Residue x);
/// u . A. Throws std::invalid_argument unless gcd(u, q) = 1.
CyclicSet scale_set(const CyclicSet& a, Residue u);

/// Inverse of u modulo q, if gcd(u, q) = 1.
std::optional<Residue> inverse_mod(Residue u, Residue q);
bool is_prime(std::uint64_t n);
/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// A subset of Z_q with exhaustively verified additive data.
struct HRWitness {
  Residue q = 0;
  std::size_t k = 0;
  CyclicSet a{1, {}};
  std::size_t ka_size = 0;
  /// A - A = Z_q.
  bool covers = false;
  /// Least x != 0 with {x, 2x, ..., kx} disjoint from k . A.
  std::optional<Residue> progression_x;
};

/// Recompute every field of the witness from A alone, by naive enumeration
/// independent of the bitset sumsets.
HRWitness make_witness(const CyclicSet& a, std::size_t k);

nlohmann::json to_json(const HRWitness& w);

/// Seeded hill climbing over subsets of Z_q containing 0, one residue added,
/// removed or swapped per step. The objective is lexicographic: uncovered
/// differences, then whether k . A misses some progression I_x, then |k . A|,
/// ties broken by the sorted element list. Returns the best covering set
/// found within `budget` steps, re-verified by make_witness, or nothing if no
/// visited set covers Z_q.
std::optional<HRWitness> search_hr_set(Residue q, std::size_t k, std::uint64_t budget,
                                       std::uint64_t seed);

/// Least x != 0 with {x, ..., kx} disjoint from `sum` (the k-fold sumset).
std::optional<Residue> progression_gap(const CyclicSet& sum, std::size_t k);
/// Least x != 0 with {x, ..., kx} disjoint from k . A.
std::optional<Residue> find_progression_gap(const CyclicSet& a, std::size_t k);

/// |P_1 u ... u P_k| for P_i = {x | i x in sum}, against the bound k |sum|.
struct GapCertificate {
  std::size_t union_size = 0;
  std::size_t bound = 0;
};
GapCertificate progression_gap_certificate(const CyclicSet& sum, std::size_t k);

/// Shortest closed walk in Cay(Z_q x Z_q, B) for B = {(a, -1), (-1, a)}:
/// the least n + m >= 1 with m in n . A and n in m . A mod q, where 0 . A =
/// {0}. Returns nothing if every closed walk is longer than `max_length`.
std::optional<std::size_t> cycle_equation_girth(const CyclicSet& a,
                                                std::size_t max_length);

/// Least A (by size, then lexicographically) containing 0 with A - A = Z_q
/// and no closed walk shorter than `girth` in Cay(Z_q x Z_q, B). Exhaustive
/// when q <= exhaustive_limit, seeded hill climbing with `budget` steps
/// otherwise.
std::optional<CyclicSet> search_cycle_set(Residue q, std::size_t girth,
                                          std::uint64_t budget, std::uint64_t seed,
                                          Residue exhaustive_limit = 19);

// ---------------------------------------------------------------- Cayley

/// Tuple encoding of a group element: {r} for Z_q, {i, j} for Z_q x Z_q,
/// the image array for a permutation.
using GroupElement = std::vector<std::uint32_t>;

struct CyclicGroup {
  Residue q;
};
struct CyclicSquare {
  Residue q;
};
struct PermutationGroup {
  std::vector<Permutation> generators;
};

struct CayleySpec {
  std::variant<CyclicGroup, CyclicSquare, PermutationGroup> group;
  std::vector<GroupElement> connection_set;
  /// The identity makes every vertex a loop, so it is rejected unless set.
  bool allow_identity = false;
};

/// Vertex for element g: the residue for Z_q, i q + j for (i, j), and the
/// rank in lexicographic order of image arrays for permutation groups.
/// Edges (x, x g). Throws std::invalid_argument for elements outside the
/// group.
Relation build_cayley(const CayleySpec& spec);

/// All elements of the generated group in lexicographic order. Throws
/// std::length_error past `limit` elements.
std::vector<Permutation> group_elements(std::span<const Permutation> generators,
                                        std::size_t limit = 1u << 20);

/// B = {(a, -1), (-1, a) | a in A} as a sorted set.
std::vector<GroupElement> girthex_connection_set(const CyclicSet& a);
/// {x + y | x, y in b} in Z_q x Z_q.
std::vector<GroupElement> pair_sumset(std::span<const GroupElement> b,
                                      std::span<const GroupElement> c, Residue q);
std::vector<GroupElement> pair_negate(std::span<const GroupElement> b, Residue q);

// ------------------------------------------------------------ families

Permutation cyclic_rotation(std::size_t n);
/// Rotation and reflection i -> -i of the n-gon; the group has order 2n.
std::vector<Permutation> dihedral_generators(std::size_t n);
/// A transposition and an n-cycle.
std::vector<Permutation> symmetric_generators(std::size_t n);
Relation directed_cycle(std::size_t n);
Relation undirected_cycle(std::size_t n);
/// Kneser graph K(5, 2) on the ten 2-subsets of {0..4}, lexicographic order.
Relation petersen_graph();

// ------------------------------------------------------------- girthEx

enum class GirthexRoute {
  /// {1..2k} disjoint from 2k . A, as in the existence proof.
  progression_gap,
  /// No closed walk of Cay(V, B) shorter than 2k, checked exactly.
  cycle_equation
};
enum class GirthexMode { automatic, gap, cycle };

std::string to_string(GirthexRoute route);

struct GirthexAttempt {
  Residue q;
  GirthexRoute route;
  bool success;
  std::string note;
};

struct GirthexResult {
  std::size_t k = 0;
  bool feasible = false;
  Residue q = 0;
  std::optional<GirthexRoute> route;
  std::optional<HRWitness> witness;
  std::vector<GroupElement> b;
  std::vector<GroupElement> doubled;
  std::optional<Relation> inner;  ///< Cay(V, B)
  std::optional<Relation> outer;  ///< Cay(V, 2B)
  bool inner_sumset_covers = false;  ///< B - B + B - B = V
  bool outer_sumset_covers = false;  ///< 2B - 2B = V
  /// diam(inner) <= 4, 2k <= girth(inner), diam(outer) <= 2, k <= girth(outer).
  std::vector<BoundReport> reports;
  std::vector<GirthexAttempt> log;

  bool certified() const;
};

struct GirthexOptions {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  GirthexMode mode = GirthexMode::automatic;
  /// Smallest prime tried; 0 means the least prime above 2k.
  Residue q_min = 0;
  Residue q_max = 10000;
  /// Hill-climbing steps per modulus for each route.
  std::uint64_t budget = 20000;
};

/// Run the construction at one prime q. Infeasibility is reported in the
/// result, never thrown.
GirthexResult girthex_pipeline(std::size_t k, Residue q, std::uint64_t seed,
                               GirthexMode mode = GirthexMode::automatic,
                               std::uint64_t budget = 20000);

/// girthex_pipeline over primes q_min <= q <= q_max until one certifies.
GirthexResult find_girthex(const GirthexOptions& options);

nlohmann::json to_json(const GirthexResult& result);

}  // namespace schemes

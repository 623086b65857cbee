#pragma once

// Equivalence classes of U-states (m, K) under the moves
//   (m, K) ~ (m + n_v(K), K + 2PD[v]),   both powers non-negative,
// and the U-map (m, K) -> (m + 1, K) between them.
//
// Torsion sectors: the level is constant on a class and only finitely many
// characteristic vectors of the sector have K^2 above any bound, so every
// class is finite and is explored exactly.
//
// Non-torsion sectors: classes on the U-cycle are infinite. A class is
// explored inside the region |<K,v>| <= |m(v)| + 2e (and a cap on m); the
// region grows until the search either closes without touching the boundary
// (an exact, finite tail class) or reaches (m', K0) with m' != m for the start
// vector K0, which puts the class on the cycle.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "plumbhf/char_lattice.hpp"

namespace plumbhf {

struct Region {
  std::optional<std::int64_t> expansion;  // nullopt: coordinates unbounded
  std::optional<std::int64_t> m_cap;

  bool contains(const Lattice& lattice, const UState& s) const;
};

struct ExploredClass {
  std::unordered_set<UState, UStateHash> states;
  bool complete = true;                  // no move was blocked by the region
  std::optional<std::int64_t> witness;   // some m' != start.m with (m', start.k) in the class
  std::optional<UState> stopped_at;      // state that satisfied the stop predicate

  bool contains(const UState& s) const { return states.count(s) != 0; }
};

// Breadth-first closure of the class of `start`. The search ends early when
// `stop` returns true for a reached state. Throws StateCountExceeded.
ExploredClass explore_class(const Lattice& lattice, const UState& start, const Region& region,
                            std::size_t max_states, const std::function<bool(const UState&)>& stop = {});

struct ExploreOptions {
  std::int64_t expansion = 2;
  std::int64_t max_expansion = 64;
  std::size_t max_states = default_max_states();
};

// U-power cap used when exploring non-torsion classes from `start`.
std::int64_t nontorsion_m_cap(const Lattice& lattice, const UState& start, std::int64_t expansion);

enum class ClassKind { Tail, Cycle };

struct ResolvedClass {
  ClassKind kind = ClassKind::Tail;
  ExploredClass explored;
  std::int64_t expansion_used = 0;
};

// Decides whether the class of a non-torsion state is a (finite) tail class or
// lies on the U-cycle. Throws RegionUnstable if max_expansion is reached.
ResolvedClass resolve_nontorsion_class(const Lattice& lattice, const UState& start, const ExploreOptions& options = {});

// Tail length of a non-torsion basic vector: least n with (n,K) on the cycle.
std::int64_t height(const Lattice& lattice, const CharVector& k, std::int64_t depth, const ExploreOptions& options = {});

// True iff (0,K) ~ (l,K) for some l > 0. Always false for torsion K.
bool self_relation_exists(const Lattice& lattice, const CharVector& k, std::int64_t bound,
                          std::size_t max_states = default_max_states());

struct MinimalRelation {
  CharVector k1;
  CharVector k2;
  std::int64_t n = 0;
  std::int64_t m = 0;
};

// Lexicographically least (n, m) with U^n (x) K1 ~ U^m (x) K2.
MinimalRelation minimal_relation(const Lattice& lattice, const CharVector& k1, const CharVector& k2, std::int64_t depth,
                                 const ExploreOptions& options = {});

struct ClassNode {
  std::optional<Rational> level;          // torsion sectors
  std::optional<std::int64_t> depth;      // non-torsion tails: distance to the cycle
  std::optional<std::size_t> successor;   // U-map; empty at the top of a torsion stem
  bool on_cycle = false;
  std::vector<std::pair<std::size_t, std::int64_t>> members;  // (leaf index, m) of chain states
  std::size_t explored_size = 0;
};

struct ClassGraph {
  SpinCClass sector;
  std::vector<CharVector> leaves;          // basic vectors, sorted
  std::vector<Rational> leaf_levels;       // torsion sectors
  std::vector<std::int64_t> heights;       // non-torsion sectors
  std::vector<std::vector<std::size_t>> chains;  // chains[leaf][m] -> class index
  std::vector<ClassNode> classes;
  std::optional<std::int64_t> cycle_length;
  std::int64_t expansion_used = 0;
  bool region_stable = true;
  bool stabilized = false;  // torsion: a single stem was reached
  std::size_t explored_states = 0;

  std::size_t class_of(std::size_t leaf, std::int64_t m) const { return chains[leaf][static_cast<std::size_t>(m)]; }
};

struct ClassGraphOptions {
  // Torsion: explore up to U-power `depth` above the lowest leaf (default:
  // stop one level after all leaves have merged). Non-torsion: cap on heights.
  std::optional<std::int64_t> depth;
  ExploreOptions explore;
  bool verify_stability = true;
};

// Depth cap used when none is given: max(8, 2 * sum |m(v)|).
std::int64_t default_depth(const Lattice& lattice);

// `leaves` must be the basic vectors of one sector.
ClassGraph build_class_graph(const Lattice& lattice, std::span<const CharVector> leaves,
                             const ClassGraphOptions& options = {});

// Same merge pattern, heights, cycle length and levels.
bool same_shape(const ClassGraph& a, const ClassGraph& b);

}  // namespace plumbhf

#pragma once

// Box-and-walk search for basic vectors.
//
// From a characteristic vector K the walk repeatedly picks a vertex v with
// <K,v> = -m(v) and replaces K by K + 2PD[v]. It stops when no such vertex
// exists, either inside the box m(v) <= <L,v> <= -m(v) - 2 or with some
// <K,v> > -m(v); on semidefinite graphs it can also cycle.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "plumbhf/char_lattice.hpp"

namespace plumbhf {

enum class WalkKind { TerminatedInBox, Overflow, Periodic };

std::string_view to_string(WalkKind kind);

struct WalkStep {
  std::size_t vertex = 0;
  CharVector vector;  // vector after the step
};

struct WalkOutcome {
  WalkKind kind = WalkKind::TerminatedInBox;
  CharVector final_vector;     // L for TerminatedInBox, K_n for Overflow, repeated vector for Periodic
  std::size_t overflow_vertex = 0;
  std::size_t step = 0;        // number of steps taken
  std::size_t period_start = 0;
  std::size_t period_length = 0;
  std::vector<WalkStep> trace;  // first `trace_limit` steps
};

struct WalkOptions {
  std::size_t visit_cap = 1'000'000;
  std::size_t trace_limit = 64;
};

// Canonical vertex order 0..n-1.
std::vector<std::size_t> canonical_order(const Lattice& lattice);

// Requires m(v) <= <K,v> for every v (the walk preserves this bound).
WalkOutcome run_walk(const Lattice& lattice, const CharVector& k, std::span<const std::size_t> ordering,
                     const WalkOptions& options = {});
WalkOutcome run_walk(const Lattice& lattice, const CharVector& k, const WalkOptions& options = {});

// m(v) <= <K,v> <= -m(v)
bool in_torsion_box(const Lattice& lattice, const CharVector& k);
// m(v) + 2 <= <K,v> <= -m(v)
bool in_strict_box(const Lattice& lattice, const CharVector& k);

// Good torsion vector: in the torsion box and either (a) <K,v> != m(v) for
// all v with the walk ending in the box, or (b) <K,v> = m(v) for some v and
// the walk is periodic.
bool is_good_torsion(const Lattice& lattice, const CharVector& k, std::span<const std::size_t> ordering,
                     const WalkOptions& options = {});
bool is_good_torsion(const Lattice& lattice, const CharVector& k, const WalkOptions& options = {});

struct SearchOptions {
  WalkOptions walk;
  std::size_t box_cap = 50'000'000;  // largest box we are willing to enumerate
  std::int64_t self_relation_bound = 64;  // largest expansion tried by the self-relation test
  std::size_t max_states = default_max_states();
};

// Number of parity-correct vectors in the torsion box (saturating).
std::size_t torsion_box_size(const Lattice& lattice);

// Calls visit(K) for every characteristic K in the box lo <= K <= hi, in
// odometer order over the canonical vertex order.
void for_each_in_box(const Lattice& lattice, const IntVector& lo, const IntVector& hi,
                     const std::function<void(const CharVector&)>& visit);

std::vector<CharVector> enumerate_basic_torsion(const Lattice& lattice, const SearchOptions& options = {});

// Non-torsion K in the strict box whose walk ends in the box and which are
// not equivalent to U^l (x) K for any l > 0.
std::vector<CharVector> enumerate_basic_nontorsion(const Lattice& lattice, const SearchOptions& options = {});

}  // namespace plumbhf

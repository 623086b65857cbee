#pragma once

// Brute-force model of the U-state equivalence, independent of class_graph:
// every state (m, K) of one sector with m <= m_cap and |<K,v>| <= |m(v)| + 2 pad
// is enumerated, all moves inside the box are joined with union-find, and a
// class is reliable when none of its states has a valid move leaving the box.
//
// Only char_lattice primitives and exact ranks are shared with the pipeline.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plumbhf/hf_assembly.hpp"

namespace plumbhf {

struct OracleOptions {
  std::int64_t m_cap = 8;
  std::int64_t box_pad = 2;
  std::size_t max_states = default_max_states();
};

struct OracleClass {
  std::vector<std::size_t> states;  // indices into TruncatedStateModel::states
  bool reliable = true;
  bool cyclic = false;                   // contains (m, K) and (m', K) with m != m'
  bool basic = false;                    // reliable and every state has m = 0
  std::optional<Rational> level;         // torsion sectors
  std::optional<std::size_t> successor;  // class of (m + 1, K)
  std::optional<std::int64_t> depth;     // non-torsion: U-steps to a cyclic class
};

struct TruncatedStateModel {
  SpinCClass sector;
  OracleOptions options;
  std::vector<CharVector> vectors;
  std::unordered_map<CharVector, std::size_t, CharVectorHash> vector_index;
  std::vector<UState> states;         // state m * vectors.size() + i is (m, vectors[i])
  std::vector<std::size_t> class_of;  // per state
  std::vector<OracleClass> classes;

  std::optional<std::size_t> find_class(const UState& s) const;
};

// Throws StateCountExceeded when the box holds more than max_states states.
TruncatedStateModel brute_classes(const Lattice& lattice, const SpinCClass& sector, const OracleOptions& options);

// Sectors met by characteristic vectors of the box m(v) <= <K,v> <= -m(v).
std::vector<SpinCClass> box_sectors(const Lattice& lattice);

struct RankProfile {
  // (degree or depth, j) -> rank of U^j; zero entries omitted
  std::map<std::pair<Rational, std::int64_t>, std::size_t> ranks;
  Rational top;       // torsion: last degree covered; non-torsion: deepest depth
  bool complete = true;  // false if an unreliable class could hide generators
};

// Exact rank of U^j between the degree pieces of the reliable part of the
// model (0/1 incidence matrices), for j = 0 .. max_power.
RankProfile truncated_rank_profile(const Lattice& lattice, const TruncatedStateModel& model, std::int64_t max_power);

// Everything the pipeline claims about one sector.
struct PipelineSector {
  SpinCClass sector;
  std::vector<CharVector> basic;
  std::map<CharVector, std::int64_t> heights;
  std::map<std::pair<CharVector, CharVector>, std::pair<std::int64_t, std::int64_t>> relations;
  ModuleDecomposition module;
};

struct PipelineSummary {
  std::vector<PipelineSector> sectors;
};

PipelineSummary summarize_pipeline(const Lattice& lattice, const ClassGraphOptions& options = {},
                                   const SearchOptions& search = {});

struct CrossCheckOptions {
  OracleOptions oracle;
  std::int64_t max_power = 3;
  bool label_scaled_cap = true;  // m_cap += |label| in non-torsion sectors
  std::int64_t max_box_pad = 6;  // box_pad grows in steps of 2 up to this while classes stay open
};

struct CrossCheckReport {
  std::vector<std::string> mismatches;
  std::vector<std::string> inconclusive;
  std::size_t comparisons = 0;

  bool ok() const { return mismatches.empty(); }
};

CrossCheckReport cross_check(const Lattice& lattice, const PipelineSummary& pipeline,
                             const CrossCheckOptions& options = {});
CrossCheckReport cross_check(const PlumbingGraph& graph, const CrossCheckOptions& options = {});

struct RandomTreeOptions {
  std::size_t max_vertices = 5;
  std::int64_t min_weight = -6;
  std::int64_t max_weight = 0;
  bool allow_semidefinite = true;
};

// Random supported tree (definite or corank 1, at most one bad vertex).
PlumbingGraph random_tree(std::uint64_t seed, const RandomTreeOptions& options = {});

}  // namespace plumbhf

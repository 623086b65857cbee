#pragma once

// Turns class graphs into graded Z[U]-modules (elder rule on the merge
// forest), computes the correction terms d_{1/2}, d_{-1/2}, and bundles
// everything into a per-sector report.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plumbhf/basic_search.hpp"
#include "plumbhf/class_graph.hpp"

namespace plumbhf {

enum class SummandKind { Tower, Cyclic, EvenTower };
enum class Parity { Odd, Even };
enum class Provenance { Computed, Dual, User, Alexander, Unknown };

std::string_view to_string(SummandKind kind);
std::string_view to_string(Parity parity);
std::string_view to_string(Provenance provenance);

struct Summand {
  SummandKind kind = SummandKind::Tower;
  Parity parity = Parity::Odd;
  std::optional<Rational> bottom;     // absent for non-torsion pieces and unknown even towers
  std::int64_t length = 0;            // Cyclic only
  std::optional<std::int64_t> depth;  // non-torsion: distance of the generator from the U-cycle
  Provenance provenance = Provenance::Computed;

  bool operator==(const Summand&) const = default;
};

struct ModuleDecomposition {
  SpinCClass sector;
  std::vector<Summand> summands;
  std::optional<Rational> d;             // definite graphs: bottom of the tower
  std::optional<Rational> d_half;        // corank-1 torsion sectors
  std::optional<Rational> d_minus_half;  // when the even bottom is known
  std::vector<std::string> notes;

  bool zero() const { return summands.empty(); }
};

// Canonical order of summands: towers first, then cyclic pieces by
// (bottom, depth, length).
void normalize(ModuleDecomposition& module);

// Same summands up to order.
bool isomorphic(const ModuleDecomposition& a, const ModuleDecomposition& b);

// Elder rule over levels. Requires a stabilized torsion class graph.
ModuleDecomposition assemble_torsion(const Lattice& lattice, const ClassGraph& graph);
// Elder rule over depths to the U-cycle; the survivors die on the cycle.
ModuleDecomposition assemble_nontorsion(const Lattice& lattice, const ClassGraph& graph);

// Minimum level over Char of the sector of the torsion vector k:
//   d_{1/2} for corank-1 graphs, d for definite graphs.
// Exact tree dynamic program over K = k + 2Mx.
Rational d_half(const Lattice& lattice, const CharVector& k);

// d_{-1/2}(-Y(G), t) = -d_{1/2}(H, t') for a graph H with Y(H) = -Y(G). When
// either side has more than one torsion sector a torsion vector of H must be
// supplied; otherwise AmbiguousSectorMatching.
Rational d_minus_half_via_dual(const Lattice& g, const Lattice& h,
                               const std::optional<CharVector>& h_sector = std::nullopt);

struct AlexanderData {
  std::vector<std::int64_t> coeffs;       // a_0 .. a_d
  std::map<std::int64_t, std::int64_t> t;  // i -> t_i for |i| <= d

  std::int64_t t_at(std::int64_t i) const;  // 0 outside the stored range
};

// t_i = sum_{j >= 1} j a_{|i| + j}. Throws std::invalid_argument on empty input.
AlexanderData alexander_t(std::vector<std::int64_t> coeffs);

// Symmetrized Alexander polynomial of the (2, 2n+1) torus knot: a_i = (-1)^(n+i).
std::vector<std::int64_t> torus_knot_alexander(std::int64_t n);

struct EvenBottom {
  std::string sector;  // integer label, or the representative as comma-separated pairings
  Rational bottom;
};

struct ReportOptions {
  std::optional<PlumbingGraph> dual;
  std::optional<CharVector> dual_sector;  // torsion vector of the dual graph, if ambiguous
  std::vector<EvenBottom> even_bottoms;
  std::optional<AlexanderData> alexander;
  SearchOptions search;
  ClassGraphOptions classes;
  std::size_t jobs = 1;
  bool torsion_only = false;  // skip non-torsion sectors
};

struct SectorReport {
  ModuleDecomposition module;
  std::vector<CharVector> basic;
  std::vector<Rational> levels;       // torsion: level of (0, B) per basic vector
  std::vector<std::int64_t> heights;  // non-torsion: per basic vector
  std::optional<std::int64_t> cycle_length;
  std::int64_t expansion_used = 0;
  bool region_stable = true;
  std::size_t explored_states = 0;
};

struct FullReport {
  PlumbingGraph graph;
  FormClass form;
  std::optional<IntVector> kernel;
  Integer torsion_count;
  std::vector<SectorReport> sectors;  // report order
  std::vector<std::string> mismatches;
  std::int64_t depth = 0;
  std::int64_t expansion = 0;
  std::size_t max_states = 0;

  bool ok() const { return mismatches.empty(); }
};

// Torsion first, then by |label|, positive before negative, then by representative.
bool sector_before(const SpinCClass& a, const SpinCClass& b);

// True if `key` names `sector` (see EvenBottom).
bool sector_matches(std::string_view key, const SpinCClass& sector);

// Basic vectors grouped by sector, in report order, one per class.
std::vector<std::pair<SpinCClass, std::vector<CharVector>>> basic_vectors_by_sector(const Lattice& lattice,
                                                                                    const SearchOptions& options);

// Throws UnsupportedGraph unless the graph is definite or corank-1 with at
// most one bad vertex.
FullReport full_report(const PlumbingGraph& graph, const ReportOptions& options = {});

// Rank of U^j from degree x to degree x + 2j (torsion; x is a level) or from
// depth x to depth x - j (non-torsion), predicted by the summands. Keys are
// (x, j) with j = 0 .. max_power.
std::map<std::pair<Rational, std::int64_t>, std::size_t> module_rank_profile(const ModuleDecomposition& module,
                                                                            const Rational& top,
                                                                            std::int64_t max_power);

}  // namespace plumbhf

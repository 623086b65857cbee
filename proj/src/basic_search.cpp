#include "plumbhf/basic_search.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "plumbhf/class_graph.hpp"

namespace plumbhf {

std::string_view to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::TerminatedInBox:
      return "terminated-in-box";
    case WalkKind::Overflow:
      return "overflow";
    case WalkKind::Periodic:
      return "periodic";
  }
  return "unknown";
}

std::vector<std::size_t> canonical_order(const Lattice& lattice) {
  std::vector<std::size_t> order(lattice.size());
  std::iota(order.begin(), order.end(), 0);
  return order;
}

WalkOutcome run_walk(const Lattice& lattice, const CharVector& k, std::span<const std::size_t> ordering,
                     const WalkOptions& options) {
  if (k.size() != lattice.size()) throw DimensionMismatch("run_walk: vector has wrong length");
  if (ordering.size() != lattice.size()) throw DimensionMismatch("run_walk: ordering has wrong length");
  for (std::size_t v = 0; v < lattice.size(); ++v)
    if (k[v] < lattice.weight(v))
      throw std::invalid_argument("run_walk: " + lattice.format(k) + " violates the lower bound at vertex " +
                                  lattice.graph().id(v));

  WalkOutcome out;
  CharVector current = k;
  std::unordered_map<CharVector, std::size_t, CharVectorHash> seen;
  seen.emplace(current, 0);
  for (;;) {
    std::optional<std::size_t> chosen;
    for (auto v : ordering)
      if (current[v] == -lattice.weight(v)) {
        chosen = v;
        break;
      }
    if (!chosen) {
      for (auto v : ordering)
        if (current[v] > -lattice.weight(v)) {
          out.kind = WalkKind::Overflow;
          out.overflow_vertex = v;
          out.final_vector = std::move(current);
          return out;
        }
      out.kind = WalkKind::TerminatedInBox;
      out.final_vector = std::move(current);
      return out;
    }
    lattice.shift_in_place(current, *chosen);
    ++out.step;
    if (out.trace.size() < options.trace_limit) out.trace.push_back({*chosen, current});
    auto [it, fresh] = seen.emplace(current, out.step);
    if (!fresh) {
      out.kind = WalkKind::Periodic;
      out.period_start = it->second;
      out.period_length = out.step - it->second;
      out.final_vector = std::move(current);
      return out;
    }
    if (seen.size() > options.visit_cap)
      throw VisitCapExceeded("walk from " + lattice.format(k) + " visited more than " +
                             std::to_string(options.visit_cap) + " vectors");
  }
}

WalkOutcome run_walk(const Lattice& lattice, const CharVector& k, const WalkOptions& options) {
  const auto order = canonical_order(lattice);
  return run_walk(lattice, k, order, options);
}

bool in_torsion_box(const Lattice& lattice, const CharVector& k) {
  for (std::size_t v = 0; v < lattice.size(); ++v)
    if (k[v] < lattice.weight(v) || k[v] > -lattice.weight(v)) return false;
  return true;
}

bool in_strict_box(const Lattice& lattice, const CharVector& k) {
  for (std::size_t v = 0; v < lattice.size(); ++v)
    if (k[v] < lattice.weight(v) + 2 || k[v] > -lattice.weight(v)) return false;
  return true;
}

bool is_good_torsion(const Lattice& lattice, const CharVector& k, std::span<const std::size_t> ordering,
                     const WalkOptions& options) {
  if (!lattice.is_characteristic(k) || !lattice.is_torsion(k) || !in_torsion_box(lattice, k)) return false;
  bool touches_lower = false;
  for (std::size_t v = 0; v < lattice.size(); ++v)
    if (k[v] == lattice.weight(v)) touches_lower = true;
  const auto walk = run_walk(lattice, k, ordering, options);
  return touches_lower ? walk.kind == WalkKind::Periodic : walk.kind == WalkKind::TerminatedInBox;
}

bool is_good_torsion(const Lattice& lattice, const CharVector& k, const WalkOptions& options) {
  const auto order = canonical_order(lattice);
  return is_good_torsion(lattice, k, order, options);
}

namespace {

std::size_t box_size(const IntVector& lo, const IntVector& hi) {
  std::size_t total = 1;
  for (std::size_t v = 0; v < lo.size(); ++v) {
    if (hi[v] < lo[v]) return 0;
    const auto count = static_cast<std::size_t>((hi[v] - lo[v]) / 2 + 1);
    if (total > SIZE_MAX / count) return SIZE_MAX;
    total *= count;
  }
  return total;
}

IntVector lower_corner(const Lattice& lattice, std::int64_t offset) {
  IntVector lo(lattice.size());
  for (std::size_t v = 0; v < lattice.size(); ++v) lo[v] = lattice.weight(v) + offset;
  return lo;
}

IntVector upper_corner(const Lattice& lattice) {
  IntVector hi(lattice.size());
  for (std::size_t v = 0; v < lattice.size(); ++v) hi[v] = -lattice.weight(v);
  return hi;
}

void check_cap(std::size_t size, const SearchOptions& options) {
  if (size > options.box_cap)
    throw StateCountExceeded("box of " + std::to_string(size) + " vectors exceeds the cap of " +
                             std::to_string(options.box_cap));
}

}  // namespace

std::size_t torsion_box_size(const Lattice& lattice) {
  return box_size(lower_corner(lattice, 0), upper_corner(lattice));
}

void for_each_in_box(const Lattice& lattice, const IntVector& lo, const IntVector& hi,
                     const std::function<void(const CharVector&)>& visit) {
  const std::size_t n = lattice.size();
  if (lo.size() != n || hi.size() != n) throw DimensionMismatch("for_each_in_box: corner has wrong length");
  CharVector k{IntVector(n)};
  for (std::size_t v = 0; v < n; ++v) {
    // first value >= lo[v] with the parity of m(v)
    k[v] = lo[v] + (((lo[v] - lattice.weight(v)) % 2 != 0) ? 1 : 0);
    if (k[v] > hi[v]) return;
  }
  for (;;) {
    visit(k);
    std::size_t v = n;
    while (v > 0) {
      --v;
      if (k[v] + 2 <= hi[v]) {
        k[v] += 2;
        break;
      }
      k[v] = lo[v] + (((lo[v] - lattice.weight(v)) % 2 != 0) ? 1 : 0);
      if (v == 0) return;
    }
    if (n == 0) return;
  }
}

std::vector<CharVector> enumerate_basic_torsion(const Lattice& lattice, const SearchOptions& options) {
  const auto lo = lower_corner(lattice, 0);
  const auto hi = upper_corner(lattice);
  check_cap(box_size(lo, hi), options);
  const auto order = canonical_order(lattice);
  std::vector<CharVector> out;
  for_each_in_box(lattice, lo, hi, [&](const CharVector& k) {
    if (lattice.is_torsion(k) && is_good_torsion(lattice, k, order, options.walk)) out.push_back(k);
  });
  return out;
}

std::vector<CharVector> enumerate_basic_nontorsion(const Lattice& lattice, const SearchOptions& options) {
  if (!lattice.semidefinite()) return {};
  const auto lo = lower_corner(lattice, 2);
  const auto hi = upper_corner(lattice);
  check_cap(box_size(lo, hi), options);
  const auto order = canonical_order(lattice);
  std::vector<CharVector> candidates;
  for_each_in_box(lattice, lo, hi, [&](const CharVector& k) {
    if (lattice.is_torsion(k)) return;
    if (run_walk(lattice, k, order, options.walk).kind == WalkKind::TerminatedInBox) candidates.push_back(k);
  });
  std::vector<CharVector> out;
  for (const auto& k : candidates)
    if (!self_relation_exists(lattice, k, options.self_relation_bound, options.max_states)) out.push_back(k);
  return out;
}

}  // namespace plumbhf

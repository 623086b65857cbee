#include "plumbhf/class_graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace plumbhf {

bool Region::contains(const Lattice& lattice, const UState& s) const {
  if (m_cap && s.m > *m_cap) return false;
  if (!expansion) return true;
  for (std::size_t v = 0; v < lattice.size(); ++v) {
    const std::int64_t bound = std::abs(lattice.weight(v)) + 2 * *expansion;
    if (std::abs(s.k[v]) > bound) return false;
  }
  return true;
}

ExploredClass explore_class(const Lattice& lattice, const UState& start, const Region& region,
                            std::size_t max_states, const std::function<bool(const UState&)>& stop) {
  ExploredClass out;
  std::deque<UState> queue;
  out.states.insert(start);
  queue.push_back(start);
  auto visit = [&](const UState& s) {
    if (s.k == start.k && s.m != start.m && !out.witness) out.witness = s.m;
    if (stop && stop(s)) {
      out.stopped_at = s;
      return true;
    }
    return false;
  };
  if (visit(start)) return out;
  while (!queue.empty()) {
    const UState s = std::move(queue.front());
    queue.pop_front();
    for (std::size_t v = 0; v < lattice.size(); ++v) {
      for (int dir : {1, -1}) {
        auto t = dir > 0 ? lattice.apply_move(s, v) : lattice.apply_inverse_move(s, v);
        if (!t || out.states.count(*t)) continue;
        if (!region.contains(lattice, *t)) {
          out.complete = false;
          continue;
        }
        if (out.states.size() >= max_states)
          throw StateCountExceeded("class exploration exceeded " + std::to_string(max_states) + " states");
        out.states.insert(*t);
        if (visit(*t)) return out;
        queue.push_back(std::move(*t));
      }
    }
  }
  return out;
}

std::int64_t nontorsion_m_cap(const Lattice& lattice, const UState& start, std::int64_t expansion) {
  const auto label = lattice.label_of(start.k).value_or(0);
  return start.m + std::abs(label) + 8 + 4 * expansion;
}

ResolvedClass resolve_nontorsion_class(const Lattice& lattice, const UState& start, const ExploreOptions& options) {
  if (lattice.is_torsion(start.k)) throw std::invalid_argument("resolve_nontorsion_class: torsion vector");
  const auto stop = [&](const UState& s) { return s.k == start.k && s.m != start.m; };
  for (std::int64_t e = std::max<std::int64_t>(1, options.expansion); e <= options.max_expansion; e *= 2) {
    const Region region{e, nontorsion_m_cap(lattice, start, e)};
    ResolvedClass out;
    out.explored = explore_class(lattice, start, region, options.max_states, stop);
    out.expansion_used = e;
    if (out.explored.witness) {
      out.kind = ClassKind::Cycle;
      return out;
    }
    if (out.explored.complete) {
      out.kind = ClassKind::Tail;
      return out;
    }
  }
  throw RegionUnstable("class of (" + std::to_string(start.m) + ", " + lattice.format(start.k) +
                       ") unresolved up to expansion " + std::to_string(options.max_expansion));
}

std::int64_t height(const Lattice& lattice, const CharVector& k, std::int64_t depth, const ExploreOptions& options) {
  if (lattice.is_torsion(k)) throw std::invalid_argument("height: vector is torsion");
  for (std::int64_t m = 0; m <= depth; ++m)
    if (resolve_nontorsion_class(lattice, UState{m, k}, options).kind == ClassKind::Cycle) return m;
  throw NotRelatedWithinDepth("height of " + lattice.format(k) + " exceeds depth " + std::to_string(depth));
}

bool self_relation_exists(const Lattice& lattice, const CharVector& k, std::int64_t bound, std::size_t max_states) {
  if (lattice.is_torsion(k)) return false;
  ExploreOptions options;
  options.max_expansion = std::max<std::int64_t>(bound, 1);
  options.expansion = std::min<std::int64_t>(options.expansion, options.max_expansion);
  options.max_states = max_states;
  return resolve_nontorsion_class(lattice, UState{0, k}, options).kind == ClassKind::Cycle;
}

namespace {

// Some m with (m, target) in the class of `from`, which must lie on the cycle.
std::int64_t locate_on_cycle(const Lattice& lattice, const UState& from, const CharVector& target,
                             const ExploreOptions& options) {
  const auto stop = [&](const UState& s) { return s.k == target; };
  for (std::int64_t e = std::max<std::int64_t>(1, options.expansion); e <= options.max_expansion; e *= 2) {
    const Region region{e, nontorsion_m_cap(lattice, from, e) + 4 * e};
    const auto found = explore_class(lattice, from, region, options.max_states, stop);
    if (found.stopped_at) return found.stopped_at->m;
    if (found.complete) break;
  }
  throw RegionUnstable("could not place " + lattice.format(target) + " on the cycle of " + lattice.format(from.k));
}

// Least d > 0 with (h + d, K) ~ (h, K), given a witness (w, K) in the same class.
// The lifted invariant m + chi(x) changes by the label under x -> x + z, so
// d is a multiple of |label| dividing |w - h|.
std::int64_t cycle_length_from_witness(const Lattice& lattice, const CharVector& k, std::int64_t h, std::int64_t w,
                                       const ExploreOptions& options) {
  const std::int64_t d0 = std::abs(w - h);
  const std::int64_t step = std::max<std::int64_t>(1, std::abs(lattice.label_of(k).value_or(1)));
  for (std::int64_t d = step; d < d0; d += step) {
    if (d0 % d != 0) continue;
    const UState target{h + d, k};
    const auto stop = [&](const UState& s) { return s == target; };
    for (std::int64_t e = std::max<std::int64_t>(1, options.expansion); e <= options.max_expansion; e *= 2) {
      const Region region{e, nontorsion_m_cap(lattice, UState{h, k}, e) + d};
      const auto found = explore_class(lattice, UState{h, k}, region, options.max_states, stop);
      if (found.stopped_at) return d;
      if (found.complete) break;
    }
  }
  return d0;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return ((a % b) + b) % b; }

}  // namespace

MinimalRelation minimal_relation(const Lattice& lattice, const CharVector& k1, const CharVector& k2,
                                 std::int64_t depth, const ExploreOptions& options) {
  MinimalRelation out{k1, k2, 0, 0};
  if (k1 == k2) return out;
  if (lattice.spinc_of(k1) != lattice.spinc_of(k2))
    throw std::invalid_argument("minimal_relation: vectors lie in different sectors");
  if (lattice.is_torsion(k1)) {
    const Rational diff = (lattice.level(UState{0, k1}) - lattice.level(UState{0, k2})) / 2;
    const std::int64_t shift = to_int64(diff);
    for (std::int64_t n = std::max<std::int64_t>(0, -shift); n <= depth; ++n) {
      const UState target{n + shift, k2};
      const auto found = explore_class(lattice, UState{n, k1}, Region{}, options.max_states,
                                       [&](const UState& s) { return s == target; });
      if (found.stopped_at) {
        out.n = n;
        out.m = target.m;
        return out;
      }
    }
    throw NotRelatedWithinDepth("no relation between " + lattice.format(k1) + " and " + lattice.format(k2) +
                                " within depth " + std::to_string(depth));
  }
  const std::int64_t h2 = height(lattice, k2, depth, options);
  for (std::int64_t n = 0; n <= depth; ++n) {
    const UState start{n, k1};
    const auto resolved = resolve_nontorsion_class(lattice, start, options);
    if (resolved.kind == ClassKind::Tail) {
      std::optional<std::int64_t> best;
      for (const auto& s : resolved.explored.states)
        if (s.k == k2 && (!best || s.m < *best)) best = s.m;
      if (best) {
        out.n = n;
        out.m = *best;
        return out;
      }
      continue;
    }
    const std::int64_t length =
        cycle_length_from_witness(lattice, k1, n, *resolved.explored.witness, options);
    const std::int64_t at = locate_on_cycle(lattice, start, k2, options);
    out.n = n;
    out.m = h2 + floor_mod(at - h2, length);
    return out;
  }
  throw NotRelatedWithinDepth("no relation between " + lattice.format(k1) + " and " + lattice.format(k2) +
                              " within depth " + std::to_string(depth));
}

std::int64_t default_depth(const Lattice& lattice) {
  std::int64_t total = 0;
  for (std::size_t v = 0; v < lattice.size(); ++v) total += std::abs(lattice.weight(v));
  return std::max<std::int64_t>(8, 2 * total);
}

namespace {

ClassGraph build_torsion(const Lattice& lattice, std::span<const CharVector> leaves, const ClassGraphOptions& options) {
  ClassGraph g;
  g.leaves.assign(leaves.begin(), leaves.end());
  std::sort(g.leaves.begin(), g.leaves.end());
  g.sector = lattice.spinc_of(g.leaves.front());
  for (const auto& k : g.leaves) g.leaf_levels.push_back(lattice.level(UState{0, k}));
  g.chains.assign(g.leaves.size(), {});
  const Rational bottom = *std::min_element(g.leaf_levels.begin(), g.leaf_levels.end());
  const std::int64_t limit = options.depth.value_or(default_depth(lattice));

  std::unordered_map<UState, std::size_t, UStateHash> owner;
  for (std::int64_t step = 0; step <= limit; ++step) {
    const Rational level = bottom + 2 * step;
    bool all_born = true;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < g.leaves.size(); ++i) {
      if (g.leaf_levels[i] > level) {
        all_born = false;
        continue;
      }
      const UState s{to_int64(Rational((level - g.leaf_levels[i]) / 2)), g.leaves[i]};
      std::size_t cls;
      if (auto it = owner.find(s); it != owner.end()) {
        cls = it->second;
      } else {
        auto explored = explore_class(lattice, s, Region{}, options.explore.max_states);
        cls = g.classes.size();
        ClassNode node;
        node.level = level;
        node.explored_size = explored.states.size();
        g.explored_states += explored.states.size();
        g.classes.push_back(std::move(node));
        for (auto& t : explored.states) owner.emplace(t, cls);
      }
      g.classes[cls].members.emplace_back(i, s.m);
      if (!g.chains[i].empty()) {
        auto& prev = g.classes[g.chains[i].back()];
        if (prev.successor && *prev.successor != cls) throw UnstableInput("U-map is not well defined on a class");
        prev.successor = cls;
      }
      g.chains[i].push_back(cls);
      current.push_back(cls);
    }
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    if (all_born && current.size() == 1) {
      g.stabilized = true;
      if (!options.depth) break;
    } else if (options.depth) {
      g.stabilized = false;
    }
  }
  g.region_stable = true;  // torsion classes are explored exactly
  return g;
}

ClassGraph build_nontorsion(const Lattice& lattice, std::span<const CharVector> leaves,
                            const ClassGraphOptions& options, std::int64_t base_expansion) {
  ExploreOptions explore = options.explore;
  explore.expansion = base_expansion;
  ClassGraph g;
  g.leaves.assign(leaves.begin(), leaves.end());
  std::sort(g.leaves.begin(), g.leaves.end());
  g.sector = lattice.spinc_of(g.leaves.front());
  g.chains.assign(g.leaves.size(), {});
  const std::int64_t limit = options.depth.value_or(default_depth(lattice));

  std::unordered_map<UState, std::size_t, UStateHash> owner;
  std::vector<std::int64_t> witness(g.leaves.size());
  for (std::size_t i = 0; i < g.leaves.size(); ++i) {
    std::int64_t m = 0;
    for (;; ++m) {
      if (m > limit)
        throw NotRelatedWithinDepth("height of " + lattice.format(g.leaves[i]) + " exceeds depth " +
                                    std::to_string(limit));
      const UState s{m, g.leaves[i]};
      if (auto it = owner.find(s); it != owner.end()) {
        g.chains[i].push_back(it->second);
        continue;
      }
      auto resolved = resolve_nontorsion_class(lattice, s, explore);
      g.expansion_used = std::max(g.expansion_used, resolved.expansion_used);
      g.explored_states += resolved.explored.states.size();
      if (resolved.kind == ClassKind::Cycle) {
        witness[i] = *resolved.explored.witness;
        break;
      }
      const std::size_t cls = g.classes.size();
      ClassNode node;
      node.explored_size = resolved.explored.states.size();
      g.classes.push_back(std::move(node));
      for (auto& t : resolved.explored.states) owner.emplace(t, cls);
      g.chains[i].push_back(cls);
    }
    g.heights.push_back(m);
  }

  // Tail depths and U-map along the tails.
  for (std::size_t i = 0; i < g.leaves.size(); ++i) {
    const std::int64_t h = g.heights[i];
    for (std::int64_t m = 0; m < h; ++m) {
      auto& node = g.classes[g.chains[i][static_cast<std::size_t>(m)]];
      node.members.emplace_back(i, m);
      if (node.depth && *node.depth != h - m) throw UnstableInput("inconsistent tail depth in a non-torsion class");
      node.depth = h - m;
    }
  }

  const std::int64_t length =
      cycle_length_from_witness(lattice, g.leaves[0], g.heights[0], witness[0], explore);
  g.cycle_length = length;
  const std::size_t first_cycle = g.classes.size();
  for (std::int64_t p = 0; p < length; ++p) {
    ClassNode node;
    node.on_cycle = true;
    node.depth = 0;
    node.successor = first_cycle + static_cast<std::size_t>((p + 1) % length);
    g.classes.push_back(std::move(node));
  }
  const UState anchor{g.heights[0], g.leaves[0]};
  for (std::size_t i = 0; i < g.leaves.size(); ++i) {
    const std::int64_t h = g.heights[i];
    const std::int64_t offset = i == 0 ? h : locate_on_cycle(lattice, anchor, g.leaves[i], explore);
    for (std::int64_t m = h; m < h + length; ++m) {
      const std::size_t cls = first_cycle + static_cast<std::size_t>(floor_mod(m - offset, length));
      g.classes[cls].members.emplace_back(i, m);
      g.chains[i].push_back(cls);
    }
    for (std::size_t m = 0; m + 1 < g.chains[i].size(); ++m) {
      auto& node = g.classes[g.chains[i][m]];
      if (node.on_cycle) continue;
      if (node.successor && *node.successor != g.chains[i][m + 1])
        throw UnstableInput("U-map is not well defined on a class");
      node.successor = g.chains[i][m + 1];
    }
  }
  g.stabilized = true;
  return g;
}

}  // namespace

ClassGraph build_class_graph(const Lattice& lattice, std::span<const CharVector> leaves,
                             const ClassGraphOptions& options) {
  if (leaves.empty()) throw std::invalid_argument("build_class_graph: sector has no basic vectors");
  const auto sector = lattice.spinc_of(leaves.front());
  for (const auto& k : leaves)
    if (lattice.spinc_of(k) != sector) throw std::invalid_argument("build_class_graph: leaves span several sectors");
  if (sector.torsion) return build_torsion(lattice, leaves, options);
  auto g = build_nontorsion(lattice, leaves, options, options.explore.expansion);
  if (options.verify_stability) {
    const auto again = build_nontorsion(lattice, leaves, options, options.explore.expansion + 1);
    g.region_stable = same_shape(g, again);
  }
  return g;
}

bool same_shape(const ClassGraph& a, const ClassGraph& b) {
  if (a.leaves != b.leaves || a.leaf_levels != b.leaf_levels || a.heights != b.heights ||
      a.cycle_length != b.cycle_length || a.chains != b.chains || a.classes.size() != b.classes.size())
    return false;
  for (std::size_t c = 0; c < a.classes.size(); ++c) {
    const auto& x = a.classes[c];
    const auto& y = b.classes[c];
    if (x.level != y.level || x.depth != y.depth || x.successor != y.successor || x.on_cycle != y.on_cycle ||
        x.members != y.members)
      return false;
  }
  return true;
}

}  // namespace plumbhf

#include "plumbhf/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace plumbhf {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Odometer over characteristic vectors with |<K,v>| <= |m(v)| + 2 pad.
template <typename F>
void for_each_box_vector(const Lattice& lattice, std::int64_t pad, F&& visit) {
  const std::size_t n = lattice.size();
  IntVector lo(n), hi(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::int64_t r = std::abs(lattice.weight(v)) + 2 * pad;
    lo[v] = -r;
    if ((lo[v] - lattice.weight(v)) % 2 != 0) ++lo[v];
    hi[v] = r;
  }
  CharVector k{lo};
  for (;;) {
    visit(k);
    std::size_t v = n;
    for (;;) {
      if (v == 0) return;
      --v;
      if (k[v] + 2 <= hi[v]) {
        k[v] += 2;
        break;
      }
      k[v] = lo[v];
    }
  }
}

bool in_central_box(const Lattice& lattice, const CharVector& k) {
  for (std::size_t v = 0; v < lattice.size(); ++v)
    if (std::abs(k[v]) > std::abs(lattice.weight(v))) return false;
  return true;
}

std::string show(const Lattice& lattice, const SpinCClass& sector) {
  std::ostringstream out;
  out << (sector.torsion ? "torsion " : "sector ");
  if (sector.label) out << *sector.label << ' ';
  out << lattice.format(sector.representative);
  return out.str();
}

}  // namespace

std::optional<std::size_t> TruncatedStateModel::find_class(const UState& s) const {
  if (s.m < 0 || s.m > options.m_cap) return std::nullopt;
  auto it = vector_index.find(s.k);
  if (it == vector_index.end()) return std::nullopt;
  return class_of[static_cast<std::size_t>(s.m) * vectors.size() + it->second];
}

namespace {

using BoxPartition = std::map<SpinCClass, std::vector<CharVector>>;

BoxPartition partition_box(const Lattice& lattice, std::int64_t pad, std::size_t cap) {
  double size = 1;
  for (std::size_t v = 0; v < lattice.size(); ++v) size *= static_cast<double>(std::abs(lattice.weight(v)) + 2 * pad + 1);
  if (size > static_cast<double>(cap))
    throw StateCountExceeded("oracle box with pad " + std::to_string(pad) + " exceeds " + std::to_string(cap) +
                             " vectors");
  BoxPartition out;
  for_each_box_vector(lattice, pad, [&](const CharVector& k) { out[lattice.spinc_of(k)].push_back(k); });
  return out;
}

TruncatedStateModel build_model(const Lattice& lattice, const SpinCClass& sector, const OracleOptions& options,
                                std::vector<CharVector> vectors) {
  TruncatedStateModel model;
  model.sector = sector;
  model.options = options;
  const auto layers = static_cast<std::size_t>(options.m_cap + 1);
  if (vectors.size() * layers > options.max_states)
    throw StateCountExceeded("oracle model exceeds " + std::to_string(options.max_states) + " states");
  model.vectors = std::move(vectors);
  for (std::size_t i = 0; i < model.vectors.size(); ++i) model.vector_index.emplace(model.vectors[i], i);
  const std::size_t width = model.vectors.size();
  const std::size_t n = lattice.size();
  for (std::size_t m = 0; m < layers; ++m)
    for (const auto& k : model.vectors) model.states.push_back(UState{static_cast<std::int64_t>(m), k});

  // K +- 2PD[v] inside the box, shared by all layers.
  constexpr std::size_t outside = static_cast<std::size_t>(-1);
  std::vector<std::size_t> up(width * n, outside), down(width * n, outside);
  for (std::size_t i = 0; i < width; ++i)
    for (std::size_t v = 0; v < n; ++v) {
      for (int dir : {1, -1}) {
        auto it = model.vector_index.find(lattice.shifted(model.vectors[i], v, dir));
        if (it != model.vector_index.end()) (dir > 0 ? up : down)[i * n + v] = it->second;
      }
    }

  const std::size_t count = model.states.size();
  DisjointSets sets(count);
  std::vector<bool> leaky(count, false);
  for (std::size_t i = 0; i < width; ++i) {
    const auto& k = model.vectors[i];
    for (std::size_t v = 0; v < n; ++v) {
      const std::int64_t forward = lattice.move_coefficient(k, v);
      const std::int64_t backward = -(k[v] - lattice.weight(v)) / 2;
      for (std::size_t m = 0; m < layers; ++m) {
        const std::size_t s = m * width + i;
        for (auto [shift, target] : {std::pair{forward, up[i * n + v]}, std::pair{backward, down[i * n + v]}}) {
          const std::int64_t to = static_cast<std::int64_t>(m) + shift;
          if (to < 0) continue;
          if (target == outside || to > options.m_cap)
            leaky[s] = true;
          else
            sets.unite(s, static_cast<std::size_t>(to) * width + target);
        }
      }
    }
  }

  std::unordered_map<std::size_t, std::size_t> compact;
  model.class_of.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto root = sets.find(i);
    auto [it, fresh] = compact.emplace(root, model.classes.size());
    if (fresh) model.classes.emplace_back();
    model.class_of[i] = it->second;
    auto& cls = model.classes[it->second];
    cls.states.push_back(i);
    if (leaky[i]) cls.reliable = false;
  }

  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    auto& cls = model.classes[c];
    std::unordered_map<CharVector, std::int64_t, CharVectorHash> seen_m;
    std::set<std::size_t> next;
    bool all_zero = true;
    for (auto i : cls.states) {
      const auto& s = model.states[i];
      if (s.m != 0) all_zero = false;
      auto [it, fresh] = seen_m.emplace(s.k, s.m);
      if (!fresh && it->second != s.m) cls.cyclic = true;
      if (s.m < options.m_cap) next.insert(model.class_of[i + width]);
    }
    // Images split only when the truncation cuts the path joining them; that
    // is a bug if every image is reliable, otherwise U is left undetermined.
    if (next.size() == 1) {
      cls.successor = *next.begin();
    } else if (next.size() > 1 && cls.reliable &&
               std::all_of(next.begin(), next.end(), [&](auto d) { return model.classes[d].reliable; })) {
      throw Error("oracle: U-map is not well defined on a reliable class");
    }
    cls.basic = cls.reliable && all_zero;
    if (sector.torsion) cls.level = lattice.level(model.states[cls.states.front()]);
  }

  if (!sector.torsion) {
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
      std::vector<std::size_t> path;
      std::optional<std::int64_t> depth;
      std::size_t cur = c;
      for (;;) {
        const auto& cls = model.classes[cur];
        if (cls.depth) {
          depth = cls.depth;
          break;
        }
        if (cls.cyclic) {
          depth = 0;
          break;
        }
        if (!cls.reliable || !cls.successor || path.size() > model.classes.size()) break;
        path.push_back(cur);
        cur = *cls.successor;
      }
      if (!depth) continue;
      if (model.classes[cur].cyclic) model.classes[cur].depth = 0;
      for (auto it = path.rbegin(); it != path.rend(); ++it) model.classes[*it].depth = ++*depth;
    }
  }
  return model;
}

}  // namespace

TruncatedStateModel brute_classes(const Lattice& lattice, const SpinCClass& sector, const OracleOptions& options) {
  std::vector<CharVector> vectors;
  const auto label = sector.label;
  const auto layers = static_cast<std::size_t>(options.m_cap + 1);
  for_each_box_vector(lattice, options.box_pad, [&](const CharVector& k) {
    if (label && lattice.label_of(k) != label) return;
    if (lattice.spinc_of(k).representative != sector.representative) return;
    vectors.push_back(k);
    if (vectors.size() * layers > options.max_states)
      throw StateCountExceeded("oracle model exceeds " + std::to_string(options.max_states) + " states");
  });
  return build_model(lattice, sector, options, std::move(vectors));
}

std::vector<SpinCClass> box_sectors(const Lattice& lattice) {
  std::set<SpinCClass> found;
  for_each_box_vector(lattice, 0, [&](const CharVector& k) {
    if (in_central_box(lattice, k)) found.insert(lattice.spinc_of(k));
  });
  return {found.begin(), found.end()};
}

namespace {

std::optional<std::size_t> iterate(const TruncatedStateModel& model, std::size_t c, std::int64_t j) {
  std::optional<std::size_t> cur = c;
  for (std::int64_t i = 0; i < j && cur; ++i) cur = model.classes[*cur].successor;
  return cur;
}

// Classes of (0, K) for K in the central box.
std::vector<std::size_t> central_classes(const Lattice& lattice, const TruncatedStateModel& model) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < model.states.size(); ++i) {
    const auto& s = model.states[i];
    if (s.m == 0 && in_central_box(lattice, s.k)) out.insert(model.class_of[i]);
  }
  return {out.begin(), out.end()};
}

std::size_t incidence_rank(const TruncatedStateModel& model, const std::vector<std::size_t>& from,
                           const std::vector<std::size_t>& to, std::int64_t j, bool& complete) {
  if (from.empty() || to.empty()) return 0;
  IntMatrix m(to.size(), from.size());
  for (std::size_t c = 0; c < from.size(); ++c) {
    const auto image = iterate(model, from[c], j);
    if (!image) {
      complete = false;
      continue;
    }
    auto it = std::find(to.begin(), to.end(), *image);
    if (it != to.end()) m(static_cast<std::size_t>(it - to.begin()), c) = 1;
  }
  return rank(m);
}

}  // namespace

RankProfile truncated_rank_profile(const Lattice& lattice, const TruncatedStateModel& model, std::int64_t max_power) {
  RankProfile out;
  const auto central = central_classes(lattice, model);
  if (model.sector.torsion) {
    std::optional<Rational> low, unreliable;
    for (const auto& cls : model.classes) {
      if (!low || *cls.level < *low) low = cls.level;
      if (!cls.reliable && (!unreliable || *cls.level < *unreliable)) unreliable = cls.level;
    }
    if (!low) return out;
    Rational top = *low + 2 * model.options.m_cap - 2;
    if (unreliable) top = std::min<Rational>(top, *unreliable - 2);
    out.top = top;
    std::map<Rational, std::vector<std::size_t>> by_level;
    for (std::size_t c = 0; c < model.classes.size(); ++c)
      if (*model.classes[c].level <= top) by_level[*model.classes[c].level].push_back(c);
    for (const auto& [x, from] : by_level)
      for (std::int64_t j = 0; j <= max_power && x + 2 * j <= top; ++j) {
        auto it = by_level.find(x + 2 * j);
        if (it == by_level.end()) continue;
        const auto r = incidence_rank(model, from, it->second, j, out.complete);
        if (r) out.ranks[{x, j}] = r;
      }
    return out;
  }
  // Tail classes are exactly the classes on the U-orbits of central classes
  // before they reach a cyclic class.
  std::set<std::size_t> tails;
  for (auto c : central) {
    std::optional<std::size_t> cur = c;
    while (cur && !model.classes[*cur].cyclic) {
      const auto& cls = model.classes[*cur];
      if (!cls.reliable || !cls.depth) {
        out.complete = false;
        break;
      }
      tails.insert(*cur);
      cur = cls.successor;
    }
  }
  std::map<std::int64_t, std::vector<std::size_t>> by_depth;
  for (auto c : tails) by_depth[*model.classes[c].depth].push_back(c);
  out.top = by_depth.empty() ? 0 : by_depth.rbegin()->first;
  for (const auto& [d, from] : by_depth)
    for (std::int64_t j = 0; j <= max_power && d - j >= 1; ++j) {
      auto it = by_depth.find(d - j);
      if (it == by_depth.end()) continue;
      const auto r = incidence_rank(model, from, it->second, j, out.complete);
      if (r) out.ranks[{Rational(d), j}] = r;
    }
  return out;
}

PipelineSummary summarize_pipeline(const Lattice& lattice, const ClassGraphOptions& options,
                                   const SearchOptions& search) {
  PipelineSummary out;
  const std::int64_t depth = options.depth.value_or(default_depth(lattice));
  for (auto& [sector, basic] : basic_vectors_by_sector(lattice, search)) {
    PipelineSector s;
    s.sector = sector;
    s.basic = basic;
    const auto graph = build_class_graph(lattice, basic, options);
    s.module = sector.torsion ? assemble_torsion(lattice, graph) : assemble_nontorsion(lattice, graph);
    for (std::size_t i = 0; i < graph.heights.size(); ++i) s.heights[graph.leaves[i]] = graph.heights[i];
    for (const auto& a : basic)
      for (const auto& b : basic) {
        if (a == b) continue;
        const auto r = minimal_relation(lattice, a, b, depth, options.explore);
        s.relations[{a, b}] = {r.n, r.m};
      }
    out.sectors.push_back(std::move(s));
  }
  return out;
}

namespace {

// An open class may still be basic only if all its known states have m = 0;
// truncation loses equivalences but never invents them.
bool undecided(const TruncatedStateModel& model, std::size_t c) {
  const auto& states = model.classes[c].states;
  return std::all_of(states.begin(), states.end(), [&](auto i) { return model.states[i].m == 0; });
}

struct SectorCheck {
  const Lattice& lattice;
  const TruncatedStateModel& model;
  CrossCheckReport& report;
  std::string name;

  void mismatch(const std::string& what) { report.mismatches.push_back(name + ": " + what); }
  void unknown(const std::string& what) { report.inconclusive.push_back(name + ": " + what); }

  std::optional<std::size_t> cls(std::int64_t m, const CharVector& k) const { return model.find_class(UState{m, k}); }

  void basic_vectors(const std::vector<CharVector>& basic) {
    std::set<std::size_t> claimed;
    for (const auto& b : basic) {
      ++report.comparisons;
      const auto c = cls(0, b);
      if (!c) {
        unknown("basic vector " + lattice.format(b) + " outside the model");
        continue;
      }
      const auto& oc = model.classes[*c];
      if (!oc.reliable) {
        unknown("class of basic vector " + lattice.format(b) + " not closed in the model");
        continue;
      }
      if (!oc.basic) mismatch(lattice.format(b) + " is equivalent to a state with positive U-power");
      if (!claimed.insert(*c).second) mismatch(lattice.format(b) + " is equivalent to another basic vector");
    }
    for (auto c : central_classes(lattice, model)) {
      const auto& oc = model.classes[c];
      if (!oc.reliable) {
        if (undecided(model, c)) unknown("central class not closed in the model");
        continue;
      }
      ++report.comparisons;
      if (oc.basic && !claimed.count(c)) {
        const auto& s = model.states[oc.states.front()];
        mismatch("basic class of " + lattice.format(s.k) + " has no basic vector");
      }
    }
  }

  void height(const CharVector& k, std::int64_t claimed) {
    ++report.comparisons;
    for (std::int64_t n = 0; n <= model.options.m_cap; ++n) {
      const auto c = cls(n, k);
      if (!c) break;
      const auto& oc = model.classes[*c];
      if (oc.cyclic) {
        if (n != claimed) mismatch("height of " + lattice.format(k) + " is " + std::to_string(n) + ", pipeline says " +
                                   std::to_string(claimed));
        return;
      }
      if (!oc.reliable) break;
    }
    unknown("height of " + lattice.format(k) + " not determined by the model");
  }

  void relation(const CharVector& a, const CharVector& b, std::pair<std::int64_t, std::int64_t> claimed) {
    ++report.comparisons;
    const auto cap = model.options.m_cap;
    for (std::int64_t n = 0; n <= cap; ++n) {
      const auto c1 = cls(n, a);
      if (!c1) break;
      if (model.classes[*c1].reliable) {
        for (std::int64_t m = 0; m <= cap; ++m)
          if (cls(m, b) == c1) return compare_relation(a, b, {n, m}, claimed);
        if (std::abs(n - claimed.first) <= 0 && claimed.second > cap) break;
        continue;
      }
      for (std::int64_t m = 0; m <= cap; ++m) {
        const auto c2 = cls(m, b);
        if (!c2) break;
        if (c2 == c1) return compare_relation(a, b, {n, m}, claimed);
        if (!model.classes[*c2].reliable) break;
      }
      break;
    }
    unknown("relation between " + lattice.format(a) + " and " + lattice.format(b) + " not determined by the model");
  }

  void compare_relation(const CharVector& a, const CharVector& b, std::pair<std::int64_t, std::int64_t> found,
                        std::pair<std::int64_t, std::int64_t> claimed) {
    if (found != claimed)
      mismatch("minimal relation between " + lattice.format(a) + " and " + lattice.format(b) + " is (" +
               std::to_string(found.first) + "," + std::to_string(found.second) + "), pipeline says (" +
               std::to_string(claimed.first) + "," + std::to_string(claimed.second) + ")");
  }

  void profile(const ModuleDecomposition& module, std::int64_t max_power) {
    ++report.comparisons;
    const auto oracle = truncated_rank_profile(lattice, model, max_power);
    if (!oracle.complete) {
      unknown("rank profile incomplete in the model");
      return;
    }
    const auto predicted = module_rank_profile(module, oracle.top, max_power);
    auto restricted = predicted;
    if (!model.sector.torsion) {
      for (auto it = restricted.begin(); it != restricted.end();)
        it = it->first.first > oracle.top ? restricted.erase(it) : std::next(it);
    }
    if (restricted != oracle.ranks) {
      std::ostringstream out;
      out << "rank profile differs (module " << predicted.size() << " entries, model " << oracle.ranks.size()
          << " entries)";
      for (const auto& [key, r] : oracle.ranks) {
        auto it = restricted.find(key);
        if (it == restricted.end() || it->second != r) {
          out << "; at (" << to_string(key.first) << ", U^" << key.second << ") model " << r << " module "
              << (it == restricted.end() ? 0 : it->second);
          break;
        }
      }
      mismatch(out.str());
    }
  }
};

// Central classes and the classes of the claimed basic vectors are closed
// (or visibly on the U-cycle); in non-torsion sectors the U-orbit of each
// claimed basic vector must also be closed up to the cycle.
bool settled(const Lattice& lattice, const TruncatedStateModel& model, const PipelineSector* claimed) {
  for (auto c : central_classes(lattice, model))
    if (!model.classes[c].reliable && undecided(model, c)) return false;
  if (!claimed) return true;
  for (const auto& b : claimed->basic) {
    const auto c = model.find_class(UState{0, b});
    if (!c || !model.classes[*c].reliable) return false;
    if (model.sector.torsion) continue;
    bool cycle = false;
    for (std::int64_t n = 0; n <= model.options.m_cap && !cycle; ++n) {
      const auto d = model.find_class(UState{n, b});
      if (!d) return false;
      if (model.classes[*d].cyclic) cycle = true;
      else if (!model.classes[*d].reliable) return false;
    }
    if (!cycle) return false;
  }
  return true;
}

}  // namespace

CrossCheckReport cross_check(const Lattice& lattice, const PipelineSummary& pipeline,
                             const CrossCheckOptions& options) {
  CrossCheckReport report;
  std::set<SpinCClass> covered;
  std::vector<SpinCClass> sectors;
  for (const auto& s : pipeline.sectors) {
    covered.insert(s.sector);
    sectors.push_back(s.sector);
  }
  for (const auto& s : box_sectors(lattice))
    if (!covered.count(s)) sectors.push_back(s);
  std::map<std::int64_t, BoxPartition> boxes;
  auto model_for = [&](const SpinCClass& sector, OracleOptions oracle) {
    auto slot = boxes.find(oracle.box_pad);
    if (slot == boxes.end())
      slot = boxes.emplace(oracle.box_pad, partition_box(lattice, oracle.box_pad, oracle.max_states)).first;
    auto it = slot->second.find(sector);
    return build_model(lattice, sector, oracle, it == slot->second.end() ? std::vector<CharVector>{} : it->second);
  };

  for (const auto& sector : sectors) {
    OracleOptions oracle = options.oracle;
    if (options.label_scaled_cap && sector.label) oracle.m_cap += std::abs(*sector.label);
    auto claimed = std::find_if(pipeline.sectors.begin(), pipeline.sectors.end(),
                                [&](const PipelineSector& p) { return p.sector == sector; });
    // Grow the box until every class that matters is closed in it; shrink
    // the starting pad when even that box is over the cap.
    std::optional<TruncatedStateModel> model;
    std::string failure;
    for (;;) {
      try {
        model.emplace(model_for(sector, oracle));
        break;
      } catch (const StateCountExceeded& e) {
        failure = e.what();
        if (oracle.box_pad == 0) break;
        --oracle.box_pad;
      }
    }
    while (model && !settled(lattice, *model, claimed == pipeline.sectors.end() ? nullptr : &*claimed) &&
           oracle.box_pad + 2 <= options.max_box_pad) {
      oracle.box_pad += 2;
      try {
        model.emplace(model_for(sector, oracle));
      } catch (const StateCountExceeded&) {
        break;
      }
    }
    if (!model) {
      report.inconclusive.push_back(show(lattice, sector) + ": " + failure);
      continue;
    }
    SectorCheck check{lattice, *model, report, show(lattice, sector)};
    if (claimed == pipeline.sectors.end()) {
      check.basic_vectors({});
      continue;
    }
    const auto& it = claimed;
    check.basic_vectors(it->basic);
    for (const auto& [k, h] : it->heights) check.height(k, h);
    for (const auto& [pair, rel] : it->relations) check.relation(pair.first, pair.second, rel);
    check.profile(it->module, options.max_power);
  }
  return report;
}

CrossCheckReport cross_check(const PlumbingGraph& graph, const CrossCheckOptions& options) {
  const Lattice lattice(graph);
  return cross_check(lattice, summarize_pipeline(lattice), options);
}

PlumbingGraph random_tree(std::uint64_t seed, const RandomTreeOptions& options) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, std::max<std::size_t>(1, options.max_vertices));
  std::uniform_int_distribution<std::int64_t> weight_dist(options.min_weight, options.max_weight);
  for (;;) {
    const std::size_t n = size_dist(rng);
    std::vector<Vertex> vertices;
    for (std::size_t i = 0; i < n; ++i) vertices.push_back({"v" + std::to_string(i), weight_dist(rng)});
    std::vector<PlumbingGraph::IdEdge> edges;
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> parent(0, i - 1);
      edges.emplace_back(vertices[parent(rng)].id, vertices[i].id);
    }
    PlumbingGraph g(std::move(vertices), edges, "random-" + std::to_string(seed));
    const auto form = classify_form(g);
    if (!form.supported()) continue;
    if (!options.allow_semidefinite && form.kind != FormKind::NegativeDefinite) continue;
    return g;
  }
}

}  // namespace plumbhf

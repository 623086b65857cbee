#include "plumbhf/hf_assembly.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace plumbhf {

std::string_view to_string(SummandKind kind) {
  switch (kind) {
    case SummandKind::Tower:
      return "tower";
    case SummandKind::Cyclic:
      return "cyclic";
    case SummandKind::EvenTower:
      return "even-tower";
  }
  return "unknown";
}

std::string_view to_string(Parity parity) { return parity == Parity::Odd ? "odd" : "even"; }

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Computed:
      return "computed";
    case Provenance::Dual:
      return "dual";
    case Provenance::User:
      return "user";
    case Provenance::Alexander:
      return "alexander";
    case Provenance::Unknown:
      break;
  }
  return "unknown";
}

namespace {

auto summand_key(const Summand& s) {
  return std::make_tuple(static_cast<int>(s.kind), s.bottom.has_value(), s.bottom.value_or(Rational(0)),
                         s.depth.value_or(0), s.length, static_cast<int>(s.parity), static_cast<int>(s.provenance));
}

// Union-find over leaf indices; the root carries the component's elder.
struct Components {
  std::vector<std::size_t> parent;
  explicit Components(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

}  // namespace

void normalize(ModuleDecomposition& module) {
  std::sort(module.summands.begin(), module.summands.end(),
            [](const Summand& a, const Summand& b) { return summand_key(a) < summand_key(b); });
}

bool isomorphic(const ModuleDecomposition& a, const ModuleDecomposition& b) {
  auto x = a;
  auto y = b;
  normalize(x);
  normalize(y);
  return x.summands == y.summands;
}

ModuleDecomposition assemble_torsion(const Lattice& lattice, const ClassGraph& graph) {
  if (!graph.sector.torsion) throw std::invalid_argument("assemble_torsion: sector is not torsion");
  if (!graph.stabilized) throw UnstableInput("torsion class graph did not reach a single stem");
  const Parity parity = lattice.semidefinite() ? Parity::Odd : Parity::Even;
  const std::size_t n = graph.leaves.size();
  const Rational bottom = *std::min_element(graph.leaf_levels.begin(), graph.leaf_levels.end());

  Components comps(n);
  std::size_t top = 0;
  for (const auto& chain : graph.chains) top = std::max(top, chain.size());
  ModuleDecomposition out;
  out.sector = graph.sector;
  auto elder_before = [&](std::size_t a, std::size_t b) {
    return std::tie(graph.leaf_levels[a], a) < std::tie(graph.leaf_levels[b], b);
  };
  for (std::size_t step = 0;; ++step) {
    const Rational level = bottom + 2 * static_cast<std::int64_t>(step);
    std::map<std::size_t, std::vector<std::size_t>> at;  // class -> component roots
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (graph.leaf_levels[i] > level) continue;
      const auto m = static_cast<std::size_t>(to_int64(Rational((level - graph.leaf_levels[i]) / 2)));
      if (m >= graph.chains[i].size()) continue;
      any = true;
      at[graph.chains[i][m]].push_back(comps.find(i));
    }
    if (!any) break;
    for (auto& [cls, roots] : at) {
      std::sort(roots.begin(), roots.end(), elder_before);
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      for (std::size_t r = 1; r < roots.size(); ++r) {
        const Rational birth = graph.leaf_levels[roots[r]];
        const auto length = to_int64(Rational((level - birth) / 2));
        if (length > 0) {
          Summand s;
          s.kind = SummandKind::Cyclic;
          s.parity = parity;
          s.bottom = birth;
          s.length = length;
          out.summands.push_back(s);
        }
        comps.parent[roots[r]] = roots[0];
      }
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) roots.insert(comps.find(i));
  if (roots.size() != 1) throw UnstableInput("torsion sector has " + std::to_string(roots.size()) + " surviving towers");
  Summand tower;
  tower.kind = SummandKind::Tower;
  tower.parity = parity;
  tower.bottom = graph.leaf_levels[*roots.begin()];
  out.summands.push_back(tower);
  normalize(out);
  return out;
}

ModuleDecomposition assemble_nontorsion(const Lattice& lattice, const ClassGraph& graph) {
  (void)lattice;
  if (graph.sector.torsion) throw std::invalid_argument("assemble_nontorsion: sector is torsion");
  if (!graph.cycle_length) throw UnstableInput("non-torsion class graph has no cycle");
  const std::size_t n = graph.leaves.size();
  Components comps(n);
  ModuleDecomposition out;
  out.sector = graph.sector;
  const std::int64_t deepest = *std::max_element(graph.heights.begin(), graph.heights.end());
  auto elder_before = [&](std::size_t a, std::size_t b) {
    return std::make_pair(-graph.heights[a], a) < std::make_pair(-graph.heights[b], b);
  };
  auto die = [&](std::size_t root, std::int64_t depth) {
    const std::int64_t birth = graph.heights[root];
    if (birth - depth <= 0) return;
    Summand s;
    s.kind = SummandKind::Cyclic;
    s.parity = Parity::Odd;
    s.length = birth - depth;
    s.depth = birth;
    out.summands.push_back(s);
  };
  for (std::int64_t depth = deepest; depth >= 1; --depth) {
    std::map<std::size_t, std::vector<std::size_t>> at;
    for (std::size_t i = 0; i < n; ++i) {
      if (graph.heights[i] < depth) continue;
      at[graph.chains[i][static_cast<std::size_t>(graph.heights[i] - depth)]].push_back(comps.find(i));
    }
    for (auto& [cls, roots] : at) {
      std::sort(roots.begin(), roots.end(), elder_before);
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      for (std::size_t r = 1; r < roots.size(); ++r) {
        die(roots[r], depth);
        comps.parent[roots[r]] = roots[0];
      }
    }
  }
  std::set<std::size_t> survivors;
  for (std::size_t i = 0; i < n; ++i) survivors.insert(comps.find(i));
  for (auto r : survivors) die(r, 0);
  normalize(out);
  return out;
}

namespace {

Integer floor_of(const Rational& q) {
  Integer num = numerator(q);
  Integer den = denominator(q);
  Integer f = num / den;
  if (num % den != 0 && num < 0) f -= 1;
  return f;
}

Integer ceil_of(const Rational& q) { return -floor_of(-q); }

// chi(x) = -(K.x + x^T M x)/2; K + 2Mx has square K^2 - 8 chi(x).
Rational chi(const Lattice& lattice, const CharVector& k, const RationalVector& x) {
  const auto& m = lattice.form();
  Rational total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (m(i, j) != 0) row += m(i, j) * x[j];
    total += x[i] * (k[i] + row);
  }
  return -total / 2;
}

}  // namespace

Rational d_half(const Lattice& lattice, const CharVector& k) {
  if (!lattice.is_characteristic(k)) throw std::invalid_argument("d_half: vector is not characteristic");
  if (!lattice.is_torsion(k)) throw NonTorsionError("d_half: vector is not torsion");
  const std::size_t n = lattice.size();
  const auto& form = lattice.form();
  const auto& graph = lattice.graph();

  // Coordinate fixed to a fundamental domain of x -> x + z.
  std::optional<std::size_t> fixed;
  std::int64_t period = 1;
  if (const auto& z = lattice.kernel_generator()) {
    for (std::size_t v = 0; v < n; ++v)
      if ((*z)[v] != 0) {
        fixed = v;
        period = std::abs((*z)[v]);
        break;
      }
  }
  std::vector<std::size_t> loose;
  for (std::size_t v = 0; v < n; ++v)
    if (v != fixed) loose.push_back(v);
  const std::size_t f = loose.size();
  RationalMatrix a(f, f);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) a(i, j) = -form(loose[i], loose[j]);
  const auto a_inv = f ? inverse(a) : std::optional<RationalMatrix>(RationalMatrix());
  if (!a_inv) throw Error("d_half: reduced form is singular");

  // Rooted forest: the fixed coordinate roots its component.
  std::vector<std::size_t> order;
  std::vector<std::optional<std::size_t>> parent(n);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> roots;
  auto grow = [&](std::size_t root) {
    roots.push_back(root);
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (auto w : graph.neighbors(u))
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = u;
          stack.push_back(w);
        }
    }
  };
  if (fixed) grow(*fixed);
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) grow(v);

  std::optional<Integer> best;
  for (std::int64_t xr = 0; xr < period; ++xr) {
    // Continuous minimiser over the loose coordinates.
    RationalVector rhs(f);
    for (std::size_t i = 0; i < f; ++i) {
      rhs[i] = Rational(k[loose[i]], 2);
      if (fixed) rhs[i] += xr * form(loose[i], *fixed);
    }
    const auto u = f ? multiply(*a_inv, rhs) : RationalVector();
    RationalVector exact(n, Rational(0)), rounded(n, Rational(0));
    if (fixed) exact[*fixed] = rounded[*fixed] = xr;
    for (std::size_t i = 0; i < f; ++i) {
      exact[loose[i]] = u[i];
      rounded[loose[i]] = Rational(floor_of(u[i] + Rational(1, 2)));
    }
    const Rational gap = chi(lattice, k, rounded) - chi(lattice, k, exact);
    // (x - u)^T A (x - u) <= 2 gap bounds each coordinate by sqrt(2 gap (A^-1)_vv).
    std::vector<std::int64_t> lo(n), hi(n);
    if (fixed) lo[*fixed] = hi[*fixed] = xr;
    for (std::size_t i = 0; i < f; ++i) {
      const Rational q = 2 * gap * (*a_inv)(i, i);
      const Integer r = sqrt(floor_of(q)) + 1;
      lo[loose[i]] = to_int64(ceil_of(u[i] - r));
      hi[loose[i]] = to_int64(floor_of(u[i] + r));
    }
    // f_v(a) = c_v(a) + sum over children min_b (f_c(b) - a b)
    std::vector<std::vector<Integer>> table(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto v = *it;
      auto& tab = table[v];
      tab.assign(static_cast<std::size_t>(hi[v] - lo[v] + 1), Integer(0));
      for (std::int64_t x = lo[v]; x <= hi[v]; ++x) {
        Integer cost = -(Integer(k[v]) * x + Integer(form(v, v)) * x * x) / 2;
        for (auto c : graph.neighbors(v)) {
          if (parent[c] != v) continue;
          std::optional<Integer> inner;
          for (std::int64_t y = lo[c]; y <= hi[c]; ++y) {
            Integer value = table[c][static_cast<std::size_t>(y - lo[c])] - Integer(x) * y;
            if (!inner || value < *inner) inner = value;
          }
          cost += *inner;
        }
        tab[static_cast<std::size_t>(x - lo[v])] = cost;
      }
    }
    Integer total = 0;
    for (auto r : roots) total += *std::min_element(table[r].begin(), table[r].end());
    if (!best || total < *best) best = total;
  }
  return lattice.level(UState{0, k}) + 2 * Rational(*best);
}

Rational d_minus_half_via_dual(const Lattice& g, const Lattice& h, const std::optional<CharVector>& h_sector) {
  if (!g.semidefinite() || !h.semidefinite())
    throw UnsupportedGraph("d_{-1/2} via a dual graph needs corank-1 forms on both sides");
  CharVector k;
  if (h_sector) {
    if (!h.is_characteristic(*h_sector) || !h.is_torsion(*h_sector))
      throw std::invalid_argument("dual sector vector must be a torsion characteristic vector of the dual graph");
    k = *h_sector;
  } else {
    if (g.torsion_count() != 1 || h.torsion_count() != 1)
      throw AmbiguousSectorMatching("graph has " + g.torsion_count().str() + " torsion sectors and its dual " +
                                    h.torsion_count().str() + "; an explicit matching is required");
    k = h.some_torsion_vector();
  }
  return -d_half(h, k);
}

std::int64_t AlexanderData::t_at(std::int64_t i) const {
  auto it = t.find(i);
  return it == t.end() ? 0 : it->second;
}

AlexanderData alexander_t(std::vector<std::int64_t> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("alexander_t: empty coefficient list");
  AlexanderData out;
  out.coeffs = std::move(coeffs);
  const auto d = static_cast<std::int64_t>(out.coeffs.size()) - 1;
  for (std::int64_t i = -d; i <= d; ++i) {
    std::int64_t t = 0;
    for (std::int64_t j = 1; std::abs(i) + j <= d; ++j) t += j * out.coeffs[static_cast<std::size_t>(std::abs(i) + j)];
    out.t[i] = t;
  }
  return out;
}

std::vector<std::int64_t> torus_knot_alexander(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("torus_knot_alexander: n must be positive");
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i <= n; ++i) out.push_back((n + i) % 2 == 0 ? 1 : -1);
  return out;
}

bool sector_before(const SpinCClass& a, const SpinCClass& b) {
  if (a.torsion != b.torsion) return a.torsion;
  const auto la = a.label.value_or(0);
  const auto lb = b.label.value_or(0);
  if (std::abs(la) != std::abs(lb)) return std::abs(la) < std::abs(lb);
  if (la != lb) return la > lb;
  return a.representative < b.representative;
}

bool sector_matches(std::string_view key, const SpinCClass& sector) {
  if (key.find(',') != std::string_view::npos) {
    IntVector values;
    std::string token;
    std::stringstream in{std::string(key)};
    while (std::getline(in, token, ',')) {
      try {
        values.push_back(std::stoll(token));
      } catch (const std::exception&) {
        return false;
      }
    }
    return values == sector.representative.pairings;
  }
  std::int64_t label = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), label);
  if (ec != std::errc() || ptr != key.data() + key.size()) return false;
  return sector.label.value_or(0) == label;
}

namespace {

// The walk test can accept several vectors of one class (e.g. after a
// blow-up); keep the least of each class. Equivalent states at m = 0 have
// equal squares (torsion) or equal labels, so only those pairs are explored.
std::vector<CharVector> distinct_classes(const Lattice& lattice, const SpinCClass& sector,
                                         std::vector<CharVector> vectors, const SearchOptions& options) {
  std::sort(vectors.begin(), vectors.end());
  if (vectors.size() < 2) return vectors;
  std::vector<std::optional<Rational>> squares;
  for (const auto& k : vectors) squares.push_back(sector.torsion ? std::optional(lattice.square(k)) : std::nullopt);
  std::vector<bool> absorbed(vectors.size(), false);
  std::vector<CharVector> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (absorbed[i]) continue;
    out.push_back(vectors[i]);
    bool rivals = false;
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (!absorbed[j] && squares[j] == squares[i]) rivals = true;
    if (!rivals) continue;
    const UState start{0, vectors[i]};
    const auto explored = sector.torsion ? explore_class(lattice, start, Region{}, options.max_states)
                                         : resolve_nontorsion_class(lattice, start).explored;
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      if (!absorbed[j] && squares[j] == squares[i] && explored.contains(UState{0, vectors[j]})) absorbed[j] = true;
  }
  return out;
}

}  // namespace

std::vector<std::pair<SpinCClass, std::vector<CharVector>>> basic_vectors_by_sector(const Lattice& lattice,
                                                                                    const SearchOptions& options) {
  std::map<SpinCClass, std::vector<CharVector>> grouped;
  for (auto& k : enumerate_basic_torsion(lattice, options)) grouped[lattice.spinc_of(k)].push_back(std::move(k));
  for (auto& k : enumerate_basic_nontorsion(lattice, options)) grouped[lattice.spinc_of(k)].push_back(std::move(k));
  std::vector<std::pair<SpinCClass, std::vector<CharVector>>> out(grouped.begin(), grouped.end());
  for (auto& [sector, vectors] : out) vectors = distinct_classes(lattice, sector, std::move(vectors), options);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return sector_before(a.first, b.first); });
  return out;
}

namespace {

SectorReport build_sector(const Lattice& lattice, const SpinCClass& sector, const std::vector<CharVector>& basic,
                          const ReportOptions& options, std::vector<std::string>& mismatches) {
  SectorReport out;
  out.basic = basic;
  const auto graph = build_class_graph(lattice, basic, options.classes);
  out.cycle_length = graph.cycle_length;
  out.heights = graph.heights;
  out.levels = graph.leaf_levels;
  out.expansion_used = graph.expansion_used;
  out.region_stable = graph.region_stable;
  out.explored_states = graph.explored_states;
  if (!graph.region_stable) mismatches.push_back("sector " + lattice.format(sector.representative) + ": region unstable");
  if (sector.torsion) {
    out.module = assemble_torsion(lattice, graph);
    const auto minimum = d_half(lattice, basic.front());
    const auto& tower = out.module.summands.front();
    if (tower.bottom != minimum)
      mismatches.push_back("sector " + lattice.format(sector.representative) + ": tower bottom " +
                           to_string(*tower.bottom) + " differs from the minimised level " + to_string(minimum));
    if (lattice.semidefinite())
      out.module.d_half = minimum;
    else
      out.module.d = minimum;
  } else {
    out.module = assemble_nontorsion(lattice, graph);
  }
  out.module.sector = sector;
  return out;
}

void attach_even_tower(const Lattice& lattice, SectorReport& report, const ReportOptions& options,
                       const std::optional<Lattice>& dual, std::vector<std::string>& mismatches) {
  auto& module = report.module;
  std::vector<std::pair<Provenance, Rational>> sources;
  for (const auto& e : options.even_bottoms)
    if (sector_matches(e.sector, module.sector)) sources.emplace_back(Provenance::User, e.bottom);
  if (dual) {
    try {
      sources.emplace_back(Provenance::Dual, d_minus_half_via_dual(lattice, *dual, options.dual_sector));
    } catch (const AmbiguousSectorMatching& e) {
      module.notes.push_back(e.what());
    }
  }
  if (options.alexander) sources.emplace_back(Provenance::Alexander, 2 * Rational(options.alexander->t_at(0)) - Rational(1, 2));
  Summand even;
  even.kind = SummandKind::EvenTower;
  even.parity = Parity::Even;
  even.provenance = Provenance::Unknown;
  if (!sources.empty()) {
    even.provenance = sources.front().first;
    even.bottom = sources.front().second;
    module.d_minus_half = even.bottom;
    for (std::size_t i = 1; i < sources.size(); ++i)
      if (sources[i].second != sources.front().second)
        mismatches.push_back("sector " + lattice.format(module.sector.representative) + ": even bottom " +
                             to_string(sources.front().second) + " (" + std::string(to_string(sources.front().first)) +
                             ") disagrees with " + to_string(sources[i].second) + " (" +
                             std::string(to_string(sources[i].first)) + ")");
  } else {
    module.notes.push_back("even tower bottom unknown: supply a dual graph or an explicit value");
  }
  module.summands.push_back(even);
  normalize(module);
}

void check_alexander(const Lattice& lattice, const FullReport& report, const AlexanderData& data, bool nontorsion,
                     std::vector<std::string>& mismatches) {
  std::set<std::int64_t> labels;
  for (const auto& s : report.sectors) {
    const auto& module = s.module;
    if (module.sector.torsion) {
      if (module.d_half && *module.d_half != Rational(1, 2))
        mismatches.push_back("torsion sector: odd tower bottom " + to_string(*module.d_half) + ", the torus-knot family predicts 1/2");
      continue;
    }
    const auto label = module.sector.label.value_or(0);
    labels.insert(label);
    const auto t = data.t_at(std::abs(label));
    // chi(HF+(-Y, t_i)) = -t_i and non-torsion groups are supported in odd degree.
    std::int64_t rank = 0;
    for (const auto& summand : module.summands) rank += summand.length;
    if (rank != t)
      mismatches.push_back("sector " + std::to_string(label) + ": rank " + std::to_string(rank) +
                           " differs from the torsion coefficient t = " + std::to_string(t));
  }
  if (!nontorsion) return;
  for (const auto& [i, t] : data.t)
    if (i != 0 && t > 0 && !labels.count(i))
      mismatches.push_back("sector " + std::to_string(i) + ": missing, but the torsion coefficient is t = " +
                           std::to_string(t));
  (void)lattice;
}

}  // namespace

FullReport full_report(const PlumbingGraph& graph, const ReportOptions& options) {
  FullReport report;
  report.graph = graph;
  report.form = classify_form(graph);
  if (!report.form.supported())
    throw UnsupportedGraph(report.form.kind == FormKind::Unsupported
                               ? "intersection form is neither negative definite nor corank-1 negative semidefinite"
                               : "graph has " + std::to_string(report.form.bad_vertices.size()) + " bad vertices");
  const Lattice lattice(graph);
  report.kernel = lattice.kernel_generator();
  report.torsion_count = lattice.torsion_count();
  report.depth = options.classes.depth.value_or(default_depth(lattice));
  report.expansion = options.classes.explore.expansion;
  report.max_states = options.classes.explore.max_states;

  std::optional<Lattice> dual;
  if (options.dual) {
    if (!lattice.semidefinite()) {
      report.mismatches.push_back("dual graph given for a definite graph");
    } else {
      dual.emplace(*options.dual);
    }
  }

  auto sectors = basic_vectors_by_sector(lattice, options.search);
  if (options.torsion_only)
    std::erase_if(sectors, [](const auto& entry) { return !entry.first.torsion; });
  report.sectors.resize(sectors.size());
  std::vector<std::vector<std::string>> local(sectors.size());
  std::vector<std::exception_ptr> errors(sectors.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sectors.size(); i = next++) {
      try {
        report.sectors[i] = build_sector(lattice, sectors[i].first, sectors[i].second, options, local[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, sectors.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& m : local) report.mismatches.insert(report.mismatches.end(), m.begin(), m.end());

  if (lattice.semidefinite()) {
    for (auto& s : report.sectors)
      if (s.module.sector.torsion) attach_even_tower(lattice, s, options, dual, report.mismatches);
  } else if (!options.even_bottoms.empty() || options.alexander) {
    report.mismatches.push_back("even-part data given for a definite graph");
  }
  if (options.alexander) check_alexander(lattice, report, *options.alexander, !options.torsion_only, report.mismatches);
  return report;
}

std::map<std::pair<Rational, std::int64_t>, std::size_t> module_rank_profile(const ModuleDecomposition& module,
                                                                            const Rational& top,
                                                                            std::int64_t max_power) {
  std::map<std::pair<Rational, std::int64_t>, std::size_t> out;
  if (module.sector.torsion) {
    std::optional<Rational> low;
    for (const auto& s : module.summands)
      if (s.kind != SummandKind::EvenTower && s.bottom && (!low || *s.bottom < *low)) low = s.bottom;
    if (!low) return out;
    auto alive = [](const Summand& s, const Rational& x) {
      if (x < *s.bottom) return false;
      return s.kind == SummandKind::Tower || x <= *s.bottom + 2 * (s.length - 1);
    };
    for (Rational x = *low; x <= top; x += 2)
      for (std::int64_t j = 0; j <= max_power && x + 2 * j <= top; ++j) {
        std::size_t rank = 0;
        for (const auto& s : module.summands)
          if (s.kind != SummandKind::EvenTower && alive(s, x) && alive(s, x + 2 * j)) ++rank;
        if (rank) out[{x, j}] = rank;
      }
    return out;
  }
  for (const auto& s : module.summands) {
    const auto birth = s.depth.value_or(s.length);
    for (std::int64_t d = birth; d > birth - s.length; --d)
      for (std::int64_t j = 0; j <= max_power && d - j > birth - s.length; ++j) ++out[{Rational(d), j}];
  }
  return out;
}

}  // namespace plumbhf

// plumbhf: command-line front end.
//
// Exit codes: 0 ok, 1 mismatch or instability, 2 unsupported graph,
// 3 I/O or parse error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plumbhf/oracle.hpp"
#include "plumbhf/report.hpp"

using namespace plumbhf;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUnsupported = 2;
constexpr int kInputError = 3;

struct Common {
  std::string graph;
  bool json = false;
  std::optional<std::int64_t> depth;
  std::int64_t expansion = 2;
  std::optional<std::size_t> max_states;
  std::size_t jobs = 1;
};

struct EvenData {
  std::string dual;
  std::string dual_sector;
  std::vector<std::string> even_bottoms;
  std::string alexander;
};

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("malformed integer '" + item + "' in " + what);
    }
  }
  if (out.empty()) throw ParseError(what + " is empty");
  return out;
}

void add_common(CLI::App* cmd, Common& c, bool search) {
  cmd->add_option("graph", c.graph, "Graph file (JSON)")->required();
  cmd->add_flag("--json", c.json, "Emit a JSON report (schema 1)");
  if (!search) return;
  cmd->add_option("--depth", c.depth, "U-power depth of the class graphs (default: automatic)")->check(CLI::PositiveNumber);
  cmd->add_option("--expansion", c.expansion, "Initial region expansion for non-torsion classes")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-states", c.max_states, "State cap (default 2e6 or PLUMBHF_MAX_STATES)")
      ->check(CLI::PositiveNumber);
}

void add_even(CLI::App* cmd, EvenData& e) {
  cmd->add_option("--dual", e.dual, "Graph H with Y(H) = -Y(G); yields the even tower bottom");
  cmd->add_option("--dual-sector", e.dual_sector, "Torsion vector of H (comma-separated), if H has several");
  cmd->add_option("--even-bottom", e.even_bottoms, "Even tower bottom, SECTOR=RATIONAL (label or pairings)");
  cmd->add_option("--alexander", e.alexander, "Symmetrized Alexander coefficients a0,a1,...,ad");
}

ReportOptions report_options(const Common& c, const EvenData& e) {
  ReportOptions options;
  if (c.depth) options.classes.depth = *c.depth;
  options.classes.explore.expansion = c.expansion;
  if (c.max_states) {
    options.classes.explore.max_states = *c.max_states;
    options.search.max_states = *c.max_states;
  }
  options.jobs = std::max<std::size_t>(1, c.jobs);
  if (!e.dual.empty()) options.dual = load_plumbing(e.dual);
  if (!e.dual_sector.empty()) options.dual_sector = CharVector{parse_int_list(e.dual_sector, "--dual-sector")};
  for (const auto& item : e.even_bottoms) {
    const auto eq = item.rfind('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("--even-bottom expects SECTOR=RATIONAL, got '" + item + "'");
    options.even_bottoms.push_back({item.substr(0, eq), parse_rational(item.substr(eq + 1))});
  }
  if (!e.alexander.empty()) options.alexander = alexander_t(parse_int_list(e.alexander, "--alexander"));
  return options;
}

void emit(const Json& doc, bool json, const std::string& text) {
  if (json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_classify(const Common& c) {
  const auto graph = load_plumbing(c.graph);
  const auto form = classify_form(graph);
  std::optional<Lattice> lattice;
  if (form.kind != FormKind::Unsupported) lattice.emplace(graph);
  Json doc = report_header("classify");
  doc["graph"] = graph_json(graph, form, lattice ? lattice->kernel_generator() : std::nullopt);
  doc["supported"] = form.supported();
  if (lattice) doc["torsion_count"] = lattice->torsion_count().str();

  std::ostringstream text;
  text << to_string(form.kind) << "\n";
  text << "inertia (+, 0, -) = (" << form.inertia.positive << ", " << form.inertia.zero << ", "
       << form.inertia.negative << ")\n";
  text << "bad vertices:";
  for (const auto& v : form.bad_vertices) text << " " << v;
  text << (form.bad_vertices.empty() ? " none\n" : "\n");
  if (lattice && lattice->kernel_generator()) text << "kernel " << lattice->format(CharVector{*lattice->kernel_generator()}) << "\n";
  if (lattice) text << "torsion Spin^c structures: " << lattice->torsion_count() << "\n";
  if (!form.supported()) text << "unsupported: the model needs a definite or corank-1 form with at most one bad vertex\n";
  emit(doc, c.json, text.str());
  return form.supported() ? kOk : kUnsupported;
}

// Throws UnsupportedGraph (exit 2) for graphs outside the model.
Lattice supported_lattice(const PlumbingGraph& graph) {
  const auto form = classify_form(graph);
  if (!form.supported())
    throw UnsupportedGraph(form.kind == FormKind::Unsupported ? "intersection form is not supported"
                                                              : "graph has more than one bad vertex");
  return Lattice(graph);
}

int cmd_spinc(const Common& c) {
  const auto lattice = supported_lattice(load_plumbing(c.graph));
  const auto& graph = lattice.graph();
  const auto sectors = torsion_sectors(lattice);
  Json doc = report_header("spinc");
  doc["graph"] = graph_json(graph, lattice.form_class(), lattice.kernel_generator());
  doc["torsion_count"] = lattice.torsion_count().str();
  doc["torsion_sectors"] = Json::array();
  std::ostringstream text;
  text << lattice.torsion_count() << " torsion Spin^c structure(s)\n";
  for (const auto& s : sectors) {
    Json entry = sector_json(graph, s);
    entry["square"] = rational_json(lattice.square(s.representative));
    doc["torsion_sectors"].push_back(entry);
    text << "  " << sector_name(graph, s) << "  K^2 = " << to_string(lattice.square(s.representative)) << "\n";
  }
  if (lattice.semidefinite())
    text << "non-torsion structures are indexed by label <K,z>/2 != 0, z = "
         << lattice.format(CharVector{*lattice.kernel_generator()}) << "\n";
  emit(doc, c.json, text.str());
  return kOk;
}

bool keep_sector(const std::string& filter, const SpinCClass& sector) {
  if (filter == "all") return true;
  if (filter == "torsion") return sector.torsion;
  if (filter == "nontorsion") return !sector.torsion;
  return sector_matches(filter, sector);
}

SearchOptions search_options(const Common& c) {
  SearchOptions options;
  if (c.max_states) options.max_states = *c.max_states;
  return options;
}

int cmd_basic(const Common& c, const std::string& filter) {
  const auto lattice = supported_lattice(load_plumbing(c.graph));
  const auto& graph = lattice.graph();
  Json doc = report_header("basic");
  doc["graph"] = graph_json(graph, lattice.form_class(), lattice.kernel_generator());
  doc["sectors"] = Json::array();
  std::ostringstream text;
  for (const auto& [sector, vectors] : basic_vectors_by_sector(lattice, search_options(c))) {
    if (!keep_sector(filter, sector)) continue;
    Json entry = sector_json(graph, sector);
    entry["basic"] = Json::array();
    text << sector_name(graph, sector) << "\n";
    for (const auto& k : vectors) {
      entry["basic"].push_back(vector_json(graph, k));
      text << "  " << lattice.format(k);
      if (sector.torsion) text << "  level " << to_string(lattice.level(UState{0, k}));
      text << "\n";
    }
    doc["sectors"].push_back(entry);
  }
  emit(doc, c.json, text.str());
  return kOk;
}

int cmd_relations(const Common& c, const std::string& filter) {
  const auto lattice = supported_lattice(load_plumbing(c.graph));
  const auto& graph = lattice.graph();
  ClassGraphOptions options;
  options.depth = c.depth;
  options.explore.expansion = c.expansion;
  if (c.max_states) options.explore.max_states = *c.max_states;
  const auto depth = c.depth.value_or(default_depth(lattice));
  Json doc = report_header("relations");
  doc["graph"] = graph_json(graph, lattice.form_class(), lattice.kernel_generator());
  doc["sectors"] = Json::array();
  std::ostringstream text;
  for (const auto& [sector, vectors] : basic_vectors_by_sector(lattice, search_options(c))) {
    if (!keep_sector(filter, sector)) continue;
    const auto classes = build_class_graph(lattice, vectors, options);
    Json entry = sector_json(graph, sector);
    entry["basic"] = Json::array();
    text << sector_name(graph, sector) << "\n";
    for (std::size_t i = 0; i < classes.leaves.size(); ++i) {
      Json b;
      b["vector"] = vector_json(graph, classes.leaves[i]);
      text << "  " << lattice.format(classes.leaves[i]);
      if (sector.torsion) {
        b["level"] = rational_json(classes.leaf_levels[i]);
        text << "  level " << to_string(classes.leaf_levels[i]);
      } else {
        b["height"] = classes.heights[i];
        text << "  height " << classes.heights[i];
      }
      text << "\n";
      entry["basic"].push_back(b);
    }
    entry["relations"] = Json::array();
    for (std::size_t i = 0; i < classes.leaves.size(); ++i)
      for (std::size_t j = i + 1; j < classes.leaves.size(); ++j) {
        const auto r = minimal_relation(lattice, classes.leaves[i], classes.leaves[j], depth, options.explore);
        entry["relations"].push_back(
            {{"from", vector_json(graph, r.k1)}, {"to", vector_json(graph, r.k2)}, {"n", r.n}, {"m", r.m}});
        text << "  U^" << r.n << " " << lattice.format(r.k1) << " ~ U^" << r.m << " " << lattice.format(r.k2) << "\n";
      }
    if (classes.cycle_length) entry["cycle_length"] = *classes.cycle_length;
    doc["sectors"].push_back(entry);
  }
  emit(doc, c.json, text.str());
  return kOk;
}

int cmd_hf(const Common& c, const EvenData& e) {
  const auto graph = load_plumbing(c.graph);
  const auto report = full_report(graph, report_options(c, e));
  emit(full_report_json(report, "hf"), c.json, full_report_text(report));
  return report.ok() ? kOk : kMismatch;
}

int cmd_d_invariants(const Common& c, const EvenData& e) {
  const auto graph = load_plumbing(c.graph);
  auto options = report_options(c, e);
  options.torsion_only = true;
  const auto report = full_report(graph, options);
  Json doc = report_header("d-invariants");
  doc["graph"] = graph_json(report.graph, report.form, report.kernel);
  doc["sectors"] = Json::array();
  std::ostringstream text;
  for (const auto& s : report.sectors) {
    const auto& m = s.module;
    Json entry = sector_json(report.graph, m.sector);
    text << sector_name(report.graph, m.sector) << ":";
    auto put = [&](const char* key, const char* name, const std::optional<Rational>& q) {
      if (!q) return;
      entry[key] = rational_json(*q);
      text << " " << name << " = " << to_string(*q);
    };
    put("d", "d", m.d);
    put("d_half", "d_1/2", m.d_half);
    put("d_minus_half", "d_-1/2", m.d_minus_half);
    if (report.form.kind == FormKind::NegativeSemidefiniteCorank1 && !m.d_minus_half) {
      entry["d_minus_half"] = nullptr;
      text << " d_-1/2 unknown";
    }
    text << "\n";
    entry["notes"] = m.notes;
    doc["sectors"].push_back(entry);
  }
  doc["mismatches"] = report.mismatches;
  for (const auto& mm : report.mismatches) text << "mismatch: " << mm << "\n";
  emit(doc, c.json, text.str());
  return report.ok() ? kOk : kMismatch;
}

struct OracleArgs {
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::int64_t m_cap = 8;
  std::int64_t box_pad = 2;
  std::int64_t max_power = 3;
  std::size_t max_vertices = 5;
  bool inject_fault = false;
};

int cmd_oracle_check(const Common& c, const OracleArgs& a) {
  std::vector<PlumbingGraph> graphs;
  if (c.graph == "random") {
    RandomTreeOptions random;
    random.max_vertices = a.max_vertices;
    for (std::size_t i = 0; i < a.count; ++i) graphs.push_back(random_tree(a.seed + i, random));
  } else {
    graphs.push_back(load_plumbing(c.graph));
  }
  CrossCheckOptions options;
  options.oracle.m_cap = a.m_cap;
  options.oracle.box_pad = a.box_pad;
  options.max_power = a.max_power;
  if (c.max_states) options.oracle.max_states = *c.max_states;
  Json doc = report_header("oracle-check");
  doc["graphs"] = Json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& graph : graphs) {
    const auto lattice = supported_lattice(graph);
    auto pipeline = summarize_pipeline(lattice);
    if (a.inject_fault)
      for (auto& s : pipeline.sectors)
        for (auto& [k, h] : s.heights) ++h;
    const auto result = cross_check(lattice, pipeline, options);
    ok = ok && result.ok();
    Json entry;
    entry["name"] = graph.name() ? Json(*graph.name()) : Json(nullptr);
    entry["comparisons"] = result.comparisons;
    entry["mismatches"] = result.mismatches;
    entry["inconclusive"] = result.inconclusive;
    doc["graphs"].push_back(entry);
    text << graph.name().value_or(c.graph) << ": " << result.comparisons << " comparisons, "
         << result.mismatches.size() << " mismatches, " << result.inconclusive.size() << " inconclusive\n";
    for (const auto& m : result.mismatches) text << "  mismatch: " << m << "\n";
    for (const auto& m : result.inconclusive) text << "  inconclusive: " << m << "\n";
  }
  doc["ok"] = ok;
  emit(doc, c.json, text.str());
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heegaard Floer homology of plumbed three-manifolds"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Common common;
  EvenData even;
  std::string filter = "all";
  OracleArgs oracle;

  auto* classify = app.add_subcommand("classify", "Intersection form, bad vertices, kernel");
  add_common(classify, common, false);
  auto* spinc = app.add_subcommand("spinc", "Torsion Spin^c structures");
  add_common(spinc, common, false);
  auto* basic = app.add_subcommand("basic", "Basic vectors grouped by sector");
  add_common(basic, common, true);
  basic->add_option("--sector", filter, "all, torsion, nontorsion, a label or comma-separated pairings");
  auto* relations = app.add_subcommand("relations", "Heights and minimal relations between basic vectors");
  add_common(relations, common, true);
  relations->add_option("--sector", filter, "all, torsion, nontorsion, a label or comma-separated pairings");
  auto* hf = app.add_subcommand("hf", "HF+(-Y(G)) in every sector");
  add_common(hf, common, true);
  add_even(hf, even);
  hf->add_option("--jobs", common.jobs, "Sectors computed in parallel")->check(CLI::PositiveNumber);
  auto* dinv = app.add_subcommand("d-invariants", "Correction terms of the torsion sectors");
  add_common(dinv, common, true);
  add_even(dinv, even);
  dinv->add_option("--jobs", common.jobs, "Sectors computed in parallel")->check(CLI::PositiveNumber);
  auto* check = app.add_subcommand("oracle-check", "Compare the pipeline with brute-force enumeration");
  add_common(check, common, false);
  check->add_option("--max-states", common.max_states, "State cap of the oracle")->check(CLI::PositiveNumber);
  check->add_option("--seed", oracle.seed, "First seed when the graph is 'random'");
  check->add_option("--count", oracle.count, "Number of random trees")->check(CLI::PositiveNumber);
  check->add_option("--max-vertices", oracle.max_vertices, "Size bound of random trees")->check(CLI::PositiveNumber);
  check->add_option("--m-cap", oracle.m_cap, "Largest U-power in the oracle model")->check(CLI::NonNegativeNumber);
  check->add_option("--box-pad", oracle.box_pad, "Initial padding of the oracle box")->check(CLI::NonNegativeNumber);
  check->add_option("--max-power", oracle.max_power, "Largest j in the U^j rank comparison")
      ->check(CLI::NonNegativeNumber);
  check->add_flag("--inject-fault", oracle.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*classify) return cmd_classify(common);
    if (*spinc) return cmd_spinc(common);
    if (*basic) return cmd_basic(common, filter);
    if (*relations) return cmd_relations(common, filter);
    if (*hf) return cmd_hf(common, even);
    if (*dinv) return cmd_d_invariants(common, even);
    if (*check) return cmd_oracle_check(common, oracle);
  } catch (const UnsupportedGraph& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kMismatch;
  }
  return kOk;
}

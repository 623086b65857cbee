// Thin binding layer: graphs and reports cross the boundary as JSON text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plumbhf/oracle.hpp"
#include "plumbhf/report.hpp"

namespace py = pybind11;
using namespace plumbhf;

namespace {

Lattice supported(const std::string& text) {
  const auto graph = parse_plumbing(text);
  if (!classify_form(graph).supported()) throw UnsupportedGraph("graph is outside the supported class");
  return Lattice(graph);
}

std::string classify(const std::string& text) {
  const auto graph = parse_plumbing(text);
  const auto form = classify_form(graph);
  std::optional<Lattice> lattice;
  if (form.kind != FormKind::Unsupported) lattice.emplace(graph);
  Json doc = report_header("classify");
  doc["graph"] = graph_json(graph, form, lattice ? lattice->kernel_generator() : std::nullopt);
  doc["supported"] = form.supported();
  if (lattice) doc["torsion_count"] = lattice->torsion_count().str();
  return doc.dump();
}

std::string basic_vectors(const std::string& text) {
  const auto lattice = supported(text);
  Json doc = report_header("basic");
  doc["sectors"] = Json::array();
  for (const auto& [sector, vectors] : basic_vectors_by_sector(lattice, {})) {
    Json entry = sector_json(lattice.graph(), sector);
    entry["basic"] = Json::array();
    for (const auto& k : vectors) entry["basic"].push_back(vector_json(lattice.graph(), k));
    doc["sectors"].push_back(entry);
  }
  return doc.dump();
}

std::string hf(const std::string& text, const std::optional<std::string>& dual_text,
               const std::optional<std::vector<std::int64_t>>& alexander,
               const std::map<std::string, std::string>& even_bottoms, std::size_t jobs, bool torsion_only,
               std::optional<std::int64_t> depth, std::optional<std::int64_t> expansion) {
  const auto graph = parse_plumbing(text);
  ReportOptions options;
  if (dual_text) options.dual = parse_plumbing(*dual_text);
  if (alexander) options.alexander = alexander_t(*alexander);
  for (const auto& [sector, bottom] : even_bottoms) options.even_bottoms.push_back({sector, parse_rational(bottom)});
  options.jobs = jobs;
  options.torsion_only = torsion_only;
  options.classes.depth = depth;
  if (expansion) options.classes.explore.expansion = *expansion;
  return full_report_json(full_report(graph, options), torsion_only ? "d-invariants" : "hf").dump();
}

py::dict cross_check_graph(const std::string& text) {
  const auto r = cross_check(parse_plumbing(text));
  py::dict out;
  out["comparisons"] = r.comparisons;
  out["mismatches"] = r.mismatches;
  out["inconclusive"] = r.inconclusive;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heegaard Floer homology of plumbed three-manifolds";
  static py::exception<Error> error(m, "Error");
  static py::exception<UnsupportedGraph> unsupported(m, "UnsupportedGraph", error.ptr());
  static py::exception<ParseError> parse(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const UnsupportedGraph& e) {
      unsupported(e.what());
    } catch (const ParseError& e) {
      parse(e.what());
    } catch (const GraphError& e) {
      parse(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("version", [] { return std::string(version()); });
  m.def("classify", &classify, py::arg("graph_json"));
  m.def("basic_vectors", &basic_vectors, py::arg("graph_json"));
  m.def("hf", &hf, py::arg("graph_json"), py::arg("dual_json") = py::none(), py::arg("alexander") = py::none(),
        py::arg("even_bottoms") = std::map<std::string, std::string>{}, py::arg("jobs") = 1,
        py::arg("torsion_only") = false, py::arg("depth") = py::none(), py::arg("expansion") = py::none(),
        py::call_guard<py::gil_scoped_release>());
  m.def("cross_check", &cross_check_graph, py::arg("graph_json"));
  m.def("torus_knot_alexander", &torus_knot_alexander, py::arg("n"));
  m.def("random_tree", [](std::uint64_t seed, std::size_t max_vertices) {
    RandomTreeOptions options;
    options.max_vertices = max_vertices;
    return serialize_plumbing(random_tree(seed, options));
  }, py::arg("seed"), py::arg("max_vertices") = 5);
}

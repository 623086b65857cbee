#include "plumbhf/report.hpp"

#include <array>
#include <sstream>

namespace plumbhf {

std::string_view version() { return PLUMBHF_VERSION; }

Json report_header(std::string_view command) {
  Json out;
  out["schema"] = kReportSchema;
  out["version"] = std::string(version());
  out["command"] = std::string(command);
  return out;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(const PlumbingGraph& graph, const CharVector& k) {
  Json out = Json::object();
  for (std::size_t v = 0; v < k.size(); ++v) out[graph.id(v)] = k[v];
  return out;
}

Json sector_json(const PlumbingGraph& graph, const SpinCClass& sector) {
  Json out;
  out["label"] = sector.label ? Json(*sector.label) : Json(nullptr);
  out["torsion"] = sector.torsion;
  out["representative"] = vector_json(graph, sector.representative);
  return out;
}

Json summand_json(const Summand& s) {
  Json out;
  out["kind"] = std::string(to_string(s.kind));
  out["parity"] = std::string(to_string(s.parity));
  out["bottom"] = s.bottom ? rational_json(*s.bottom) : Json(nullptr);
  if (s.kind == SummandKind::Cyclic) out["length"] = s.length;
  if (s.depth) out["depth"] = *s.depth;
  out["provenance"] = std::string(to_string(s.provenance));
  return out;
}

Json module_json(const ModuleDecomposition& module) {
  Json out;
  out["summands"] = Json::array();
  for (const auto& s : module.summands) out["summands"].push_back(summand_json(s));
  if (module.d) out["d"] = rational_json(*module.d);
  if (module.d_half) out["d_half"] = rational_json(*module.d_half);
  if (module.d_minus_half) out["d_minus_half"] = rational_json(*module.d_minus_half);
  out["notes"] = module.notes;
  return out;
}

Json graph_json(const PlumbingGraph& graph, const FormClass& form, const std::optional<IntVector>& kernel) {
  Json out;
  out["name"] = graph.name() ? Json(*graph.name()) : Json(nullptr);
  Json ids = Json::array();
  for (const auto& v : graph.vertices()) ids.push_back(v.id);
  out["vertices"] = ids;
  out["form"] = std::string(to_string(form.kind));
  out["inertia"] = {form.inertia.positive, form.inertia.zero, form.inertia.negative};
  out["bad_vertices"] = form.bad_vertices;
  if (kernel) {
    Json z = Json::object();
    for (std::size_t v = 0; v < kernel->size(); ++v) z[graph.id(v)] = (*kernel)[v];
    out["kernel"] = z;
  }
  return out;
}

Json sector_report_json(const PlumbingGraph& graph, const SectorReport& sector) {
  Json out = sector_json(graph, sector.module.sector);
  const Json module = module_json(sector.module);
  for (const auto& [key, value] : module.items()) out[key] = value;
  out["basic"] = Json::array();
  for (std::size_t i = 0; i < sector.basic.size(); ++i) {
    Json b;
    b["vector"] = vector_json(graph, sector.basic[i]);
    if (i < sector.levels.size()) b["level"] = rational_json(sector.levels[i]);
    if (i < sector.heights.size()) b["height"] = sector.heights[i];
    out["basic"].push_back(b);
  }
  if (sector.cycle_length) out["cycle_length"] = *sector.cycle_length;
  out["expansion_used"] = sector.expansion_used;
  out["region_stable"] = sector.region_stable;
  out["explored_states"] = sector.explored_states;
  return out;
}

Json full_report_json(const FullReport& report, std::string_view command) {
  Json out = report_header(command);
  out["graph"] = graph_json(report.graph, report.form, report.kernel);
  out["torsion_count"] = report.torsion_count.str();
  out["parameters"] = {{"depth", report.depth}, {"expansion", report.expansion}, {"max_states", report.max_states}};
  out["sectors"] = Json::array();
  for (const auto& s : report.sectors) out["sectors"].push_back(sector_report_json(report.graph, s));
  out["mismatches"] = report.mismatches;
  return out;
}

namespace {

template <typename Enum, std::size_t N>
Enum enum_from(const Json& j, const std::array<Enum, N>& values, const char* what) {
  const auto text = j.get<std::string>();
  for (auto v : values)
    if (to_string(v) == text) return v;
  throw ParseError(std::string("unknown ") + what + " '" + text + "'");
}

}  // namespace

Summand summand_from_json(const Json& j) {
  try {
    Summand s;
    s.kind = enum_from(j.at("kind"), std::array{SummandKind::Tower, SummandKind::Cyclic, SummandKind::EvenTower},
                       "summand kind");
    s.parity = enum_from(j.at("parity"), std::array{Parity::Odd, Parity::Even}, "parity");
    if (!j.at("bottom").is_null()) s.bottom = parse_rational(j.at("bottom").get<std::string>());
    if (j.contains("length")) s.length = j.at("length").get<std::int64_t>();
    if (j.contains("depth")) s.depth = j.at("depth").get<std::int64_t>();
    s.provenance = enum_from(j.at("provenance"),
                             std::array{Provenance::Computed, Provenance::Dual, Provenance::User,
                                        Provenance::Alexander, Provenance::Unknown},
                             "provenance");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed summand: ") + e.what());
  }
}

ModuleDecomposition module_from_json(const Json& j) {
  try {
    ModuleDecomposition m;
    for (const auto& s : j.at("summands")) m.summands.push_back(summand_from_json(s));
    if (j.contains("d")) m.d = parse_rational(j.at("d").get<std::string>());
    if (j.contains("d_half")) m.d_half = parse_rational(j.at("d_half").get<std::string>());
    if (j.contains("d_minus_half")) m.d_minus_half = parse_rational(j.at("d_minus_half").get<std::string>());
    m.notes = j.at("notes").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed module: ") + e.what());
  }
}

std::string module_text(const ModuleDecomposition& module) {
  if (module.summands.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& s : module.summands) {
    if (!first) out << " + ";
    first = false;
    switch (s.kind) {
      case SummandKind::Tower:
        out << "T+(" << to_string(*s.bottom) << ")";
        break;
      case SummandKind::EvenTower:
        out << "T+even(" << (s.bottom ? to_string(*s.bottom) : std::string("?")) << ", " << to_string(s.provenance)
            << ")";
        break;
      case SummandKind::Cyclic:
        out << "Z[U]/U^" << s.length;
        if (s.bottom) out << " (bottom " << to_string(*s.bottom) << ")";
        if (s.depth) out << " (depth " << *s.depth << ")";
        break;
    }
  }
  return out.str();
}

std::string sector_name(const PlumbingGraph& graph, const SpinCClass& sector) {
  std::ostringstream out;
  if (sector.torsion)
    out << "torsion";
  else if (sector.label)
    out << "label " << *sector.label;
  else
    out << "sector";
  out << " [";
  for (std::size_t v = 0; v < sector.representative.size(); ++v)
    out << (v ? " " : "") << graph.id(v) << "=" << sector.representative[v];
  out << "]";
  return out.str();
}

std::string full_report_text(const FullReport& report) {
  std::ostringstream out;
  out << "graph " << report.graph.name().value_or("(unnamed)") << ": " << to_string(report.form.kind) << ", "
      << report.torsion_count << " torsion Spin^c structure(s)\n";
  for (const auto& s : report.sectors) {
    out << sector_name(report.graph, s.module.sector) << ": " << module_text(s.module) << "\n";
    if (s.module.d) out << "  d = " << to_string(*s.module.d) << "\n";
    if (s.module.d_half) out << "  d_1/2 = " << to_string(*s.module.d_half) << "\n";
    if (s.module.d_minus_half) out << "  d_-1/2 = " << to_string(*s.module.d_minus_half) << "\n";
    for (const auto& note : s.module.notes) out << "  note: " << note << "\n";
  }
  for (const auto& m : report.mismatches) out << "mismatch: " << m << "\n";
  return out.str();
}

}  // namespace plumbhf

#pragma once

// JSON (schema 1) and plain-text rendering of reports. Rationals are strings
// "p/q" or "p"; characteristic vectors are objects keyed by vertex id.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "plumbhf/hf_assembly.hpp"

namespace plumbhf {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

std::string_view version();

// {"schema", "version", "command"}; every document starts with these keys.
Json report_header(std::string_view command);

Json rational_json(const Rational& q);
Json vector_json(const PlumbingGraph& graph, const CharVector& k);
Json sector_json(const PlumbingGraph& graph, const SpinCClass& sector);
Json summand_json(const Summand& s);
Json module_json(const ModuleDecomposition& module);
Json graph_json(const PlumbingGraph& graph, const FormClass& form, const std::optional<IntVector>& kernel);
Json sector_report_json(const PlumbingGraph& graph, const SectorReport& sector);
Json full_report_json(const FullReport& report, std::string_view command = "hf");

// Inverse of summand_json / module_json (the sector is left empty).
// Throws ParseError on documents that do not follow the schema.
Summand summand_from_json(const Json& j);
ModuleDecomposition module_from_json(const Json& j);

// "T+(1/2) + Z[U]/U^1 (depth 5) + T+even(3/2, alexander)"
std::string module_text(const ModuleDecomposition& module);
std::string sector_name(const PlumbingGraph& graph, const SpinCClass& sector);
std::string full_report_text(const FullReport& report);

}  // namespace plumbhf

#include "plumbhf/graph_model.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace plumbhf {

namespace {

// Disjoint-set forest used for cycle detection while validating edges.
class Components {
 public:
  explicit Components(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

PlumbingGraph::PlumbingGraph(std::vector<Vertex> vertices, const std::vector<IdEdge>& edges,
                             std::optional<std::string> name)
    : vertices_(std::move(vertices)), name_(std::move(name)) {
  std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i].id == vertices_[i - 1].id) throw GraphError("duplicate vertex id '" + vertices_[i].id + "'");

  adjacency_.assign(vertices_.size(), {});
  Components components(vertices_.size());
  std::set<Edge> seen;
  for (const auto& [a, b] : edges) {
    const auto ia = find(a);
    const auto ib = find(b);
    if (!ia) throw GraphError("edge endpoint '" + a + "' is not a vertex");
    if (!ib) throw GraphError("edge endpoint '" + b + "' is not a vertex");
    if (*ia == *ib) throw GraphError("self-loop at '" + a + "'");
    const Edge e{std::min(*ia, *ib), std::max(*ia, *ib)};
    if (!seen.insert(e).second) throw GraphError("repeated edge '" + a + "'-'" + b + "'");
    if (!components.unite(e.first, e.second)) throw GraphError("cycle detected through edge '" + a + "'-'" + b + "'");
  }
  edges_.assign(seen.begin(), seen.end());
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::optional<std::size_t> PlumbingGraph::find(std::string_view id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, std::string_view key) { return v.id < key; });
  if (it == vertices_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::size_t PlumbingGraph::index_of(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw GraphError("unknown vertex '" + std::string(id) + "'");
  return *idx;
}

PlumbingGraph parse_plumbing(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("graph file must contain a JSON object");
  std::optional<std::string> name;
  if (doc.contains("name") && !doc["name"].is_null()) {
    if (!doc["name"].is_string()) throw ParseError("'name' must be a string");
    name = doc["name"].get<std::string>();
  }
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) throw ParseError("missing 'vertices' array");
  std::vector<Vertex> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v.contains("weight")) throw ParseError("vertex entries need 'id' and 'weight'");
    if (!v["id"].is_string()) throw ParseError("vertex 'id' must be a string");
    if (!v["weight"].is_number_integer()) throw ParseError("vertex 'weight' must be an integer");
    vertices.push_back({v["id"].get<std::string>(), v["weight"].get<std::int64_t>()});
  }
  std::vector<PlumbingGraph::IdEdge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError("'edges' must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ParseError("each edge must be a two-element array of vertex ids");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  }
  return PlumbingGraph(std::move(vertices), edges, std::move(name));
}

PlumbingGraph load_plumbing(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_plumbing(buffer.str());
}

std::string serialize_plumbing(const PlumbingGraph& g) {
  nlohmann::ordered_json doc;
  if (g.name()) doc["name"] = *g.name();
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : g.vertices()) doc["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : g.edges()) doc["edges"].push_back({g.id(a), g.id(b)});
  return doc.dump(2) + "\n";
}

IntersectionForm intersection_form(const PlumbingGraph& g) {
  IntMatrix m(g.size(), g.size());
  for (std::size_t v = 0; v < g.size(); ++v) m(v, v) = g.weight(v);
  for (const auto& [a, b] : g.edges()) m(a, b) = m(b, a) = 1;
  return {std::move(m)};
}

std::string_view to_string(FormKind kind) {
  switch (kind) {
    case FormKind::NegativeDefinite:
      return "negative-definite";
    case FormKind::NegativeSemidefiniteCorank1:
      return "negative-semidefinite-corank-1";
    case FormKind::Unsupported:
      break;
  }
  return "unsupported";
}

FormClass classify_form(const PlumbingGraph& g) {
  FormClass out;
  out.inertia = symmetric_inertia(to_rational(intersection_form(g).matrix));
  const std::size_t n = g.size();
  if (out.inertia == Inertia{0, 0, n})
    out.kind = FormKind::NegativeDefinite;
  else if (n > 0 && out.inertia == Inertia{0, 1, n - 1})
    out.kind = FormKind::NegativeSemidefiniteCorank1;
  for (std::size_t v = 0; v < n; ++v)
    if (g.weight(v) > -static_cast<std::int64_t>(g.degree(v))) out.bad_vertices.push_back(g.id(v));
  return out;
}

namespace {

std::vector<PlumbingGraph::IdEdge> id_edges(const PlumbingGraph& g) {
  std::vector<PlumbingGraph::IdEdge> out;
  for (const auto& [a, b] : g.edges()) out.emplace_back(g.id(a), g.id(b));
  return out;
}

}  // namespace

PlumbingGraph blow_up(const PlumbingGraph& g, std::string_view v) {
  const auto idx = g.index_of(v);
  std::string fresh = g.id(idx) + "+e";
  while (g.find(fresh)) fresh += "'";
  auto vertices = g.vertices();
  vertices.push_back({fresh, -1});
  auto edges = id_edges(g);
  edges.emplace_back(g.id(idx), fresh);
  return PlumbingGraph(std::move(vertices), edges, g.name());
}

PlumbingGraph increment_weight(const PlumbingGraph& g, std::string_view v) {
  const auto idx = g.index_of(v);
  auto vertices = g.vertices();
  vertices[idx].weight += 1;
  return PlumbingGraph(std::move(vertices), id_edges(g), g.name());
}

PlumbingGraph relabel(const PlumbingGraph& g, const std::vector<std::pair<std::string, std::string>>& rename) {
  auto map_id = [&](const std::string& id) {
    for (const auto& [from, to] : rename)
      if (from == id) return to;
    return id;
  };
  std::vector<Vertex> vertices;
  for (const auto& v : g.vertices()) vertices.push_back({map_id(v.id), v.weight});
  std::vector<PlumbingGraph::IdEdge> edges;
  for (const auto& [a, b] : g.edges()) edges.emplace_back(map_id(g.id(a)), map_id(g.id(b)));
  return PlumbingGraph(std::move(vertices), edges, g.name());
}

}  // namespace plumbhf

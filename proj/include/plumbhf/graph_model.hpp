#pragma once

// Weighted plumbing forests, their intersection forms and the blow-up moves.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plumbhf/exact_linalg.hpp"

namespace plumbhf {

struct Vertex {
  std::string id;
  std::int64_t weight = 0;

  bool operator==(const Vertex&) const = default;
};

// A weighted forest. Vertices are stored sorted by id; all index-based
// accessors refer to that canonical order.
class PlumbingGraph {
 public:
  using IdEdge = std::pair<std::string, std::string>;
  using Edge = std::pair<std::size_t, std::size_t>;

  PlumbingGraph() = default;
  // Throws GraphError on duplicate ids, unknown endpoints, self-loops,
  // repeated edges or cycles.
  PlumbingGraph(std::vector<Vertex> vertices, const std::vector<IdEdge>& edges,
                std::optional<std::string> name = std::nullopt);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<std::string>& name() const { return name_; }

  const std::string& id(std::size_t v) const { return vertices_[v].id; }
  std::int64_t weight(std::size_t v) const { return vertices_[v].weight; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }

  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws GraphError

  bool operator==(const PlumbingGraph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_ && name_ == other.name_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;  // (lo, hi) index pairs, sorted
  std::vector<std::vector<std::size_t>> adjacency_;
  std::optional<std::string> name_;
};

// JSON graph file: {"name": ..., "vertices": [{"id","weight"}], "edges": [[a,b]]}.
PlumbingGraph parse_plumbing(std::string_view text);
PlumbingGraph load_plumbing(const std::string& path);
std::string serialize_plumbing(const PlumbingGraph& g);

struct IntersectionForm {
  IntMatrix matrix;
};

IntersectionForm intersection_form(const PlumbingGraph& g);

enum class FormKind { NegativeDefinite, NegativeSemidefiniteCorank1, Unsupported };

std::string_view to_string(FormKind kind);

struct FormClass {
  FormKind kind = FormKind::Unsupported;
  Inertia inertia;
  std::vector<std::string> bad_vertices;  // ids with m(v) > -d(v)

  // Supported by the combinatorial model: definite or corank-1 semidefinite,
  // with at most one bad vertex.
  bool supported() const { return kind != FormKind::Unsupported && bad_vertices.size() <= 1; }
};

FormClass classify_form(const PlumbingGraph& g);

// G'(v): adds a new (-1)-vertex joined only to v.
PlumbingGraph blow_up(const PlumbingGraph& g, std::string_view v);
// G_{+1}(v): same graph, weight at v increased by one.
PlumbingGraph increment_weight(const PlumbingGraph& g, std::string_view v);

// Copy of g with every id replaced through `rename` (old id -> new id).
PlumbingGraph relabel(const PlumbingGraph& g, const std::vector<std::pair<std::string, std::string>>& rename);

}  // namespace plumbhf

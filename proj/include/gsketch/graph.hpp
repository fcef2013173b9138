#pragma once

// Finite directed multigraphs, graph morphisms, and the backtracking
// homomorphism search that every quantifier is evaluated with.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gsketch/error.hpp"

namespace gsketch {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Edge {
  std::string name;
  std::string source;
  std::string target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable graph value. Copies share storage. Nodes and edges are kept
/// sorted by name, so element indices follow the canonical (lexicographic)
/// order. Duplicate or dangling entries are retained so that
/// validate_graph() can report them; every other operation expects a valid
/// graph and throws ErrorKind::InvalidGraph otherwise.
class Graph {
 public:
  Graph();
  Graph(std::vector<std::string> nodes, std::vector<Edge> edges);

  std::span<const std::string> nodes() const { return data_->nodes; }
  std::span<const Edge> edges() const { return data_->edges; }
  std::size_t node_count() const { return data_->nodes.size(); }
  std::size_t edge_count() const { return data_->edges.size(); }
  bool empty() const { return node_count() == 0 && edge_count() == 0; }

  std::optional<std::size_t> node_index(std::string_view name) const;
  std::optional<std::size_t> edge_index(std::string_view name) const;
  bool has_node(std::string_view name) const { return node_index(name).has_value(); }
  bool has_edge(std::string_view name) const { return edge_index(name).has_value(); }

  const std::string& node_name(std::size_t i) const { return data_->nodes[i]; }
  const std::string& edge_name(std::size_t i) const { return data_->edges[i].name; }
  /// Endpoint indices; npos when the endpoint is dangling.
  std::size_t source(std::size_t e) const { return data_->src[e]; }
  std::size_t target(std::size_t e) const { return data_->tgt[e]; }

  /// Sorted edge indices from node u to node v.
  std::span<const std::size_t> edges_between(std::size_t u, std::size_t v) const;

  bool valid() const { return data_->valid; }
  void require_valid(std::string_view role) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct Data {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::vector<std::size_t> src, tgt;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> between;
    bool valid = true;
  };
  std::shared_ptr<const Data> data_;
};

struct GraphViolation {
  enum class Kind { DuplicateNode, DuplicateEdge, DanglingSource, DanglingTarget };
  Kind kind;
  std::string element;  // offending node or edge name
  std::string detail;
};

std::vector<GraphViolation> validate_graph(const Graph& g);

class GraphMorphism {
 public:
  /// Builds from index maps; checks totality and the homomorphism law.
  GraphMorphism(Graph dom, Graph cod, std::vector<std::size_t> node_map,
                std::vector<std::size_t> edge_map);

  /// Builds from name maps. Node entries forced by edge endpoints may be
  /// omitted; an unforced, unassigned node is an error, as is a conflict.
  static GraphMorphism from_names(Graph dom, Graph cod,
                                  const std::map<std::string, std::string>& nodes,
                                  const std::map<std::string, std::string>& edges);

  const Graph& dom() const { return dom_; }
  const Graph& cod() const { return cod_; }
  std::span<const std::size_t> node_map() const { return node_map_; }
  std::span<const std::size_t> edge_map() const { return edge_map_; }
  std::size_t node(std::size_t i) const { return node_map_[i]; }
  std::size_t edge(std::size_t i) const { return edge_map_[i]; }

  /// Image of a named element. Throws if the name is not in the domain.
  const std::string& node(std::string_view name) const;
  const std::string& edge(std::string_view name) const;

  std::map<std::string, std::string> node_names() const;
  std::map<std::string, std::string> edge_names() const;

  friend bool operator==(const GraphMorphism& a, const GraphMorphism& b);

 private:
  struct Unchecked {};
  GraphMorphism(Unchecked, Graph dom, Graph cod, std::vector<std::size_t> node_map,
                std::vector<std::size_t> edge_map);

  Graph dom_;
  Graph cod_;
  std::vector<std::size_t> node_map_;
  std::vector<std::size_t> edge_map_;

  friend class MorphismSearch;
  friend GraphMorphism compose(const GraphMorphism&, const GraphMorphism&);
};

/// f;g (diagrammatic order): first f, then g.
GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g);
GraphMorphism identity(const Graph& g);

bool is_monomorphism(const GraphMorphism& m);
bool is_epimorphism(const GraphMorphism& m);
bool is_isomorphism(const GraphMorphism& m);
GraphMorphism invert(const GraphMorphism& m);

/// True when dom is a subgraph of cod by name and the morphism maps every
/// element to the element of the same name.
bool is_inclusion(const GraphMorphism& m);
GraphMorphism inclusion(const Graph& sub, const Graph& super);

struct SearchOptions {
  bool injective = false;
};

/// Candidate restriction per domain element; an empty optional means "any".
struct Candidates {
  std::vector<std::optional<std::vector<std::size_t>>> nodes;
  std::vector<std::optional<std::vector<std::size_t>>> edges;

  static Candidates unrestricted(const Graph& dom);
};

/// Callback receives each morphism in canonical order; return false to stop.
using MorphismVisitor = std::function<bool(const GraphMorphism&)>;

/// Canonical-order backtracking search for homomorphisms dom -> cod whose
/// images lie in the given candidate sets. Domain nodes are assigned first,
/// in name order, then edges; candidates are tried in name order. Returns
/// false if the visitor stopped the search early.
bool search_morphisms(const Graph& dom, const Graph& cod, const Candidates& candidates,
                      const SearchOptions& options, const MorphismVisitor& visit);

std::vector<GraphMorphism> enumerate_morphisms(const Graph& a, const Graph& g,
                                               const SearchOptions& options = {});

/// All r : a.cod -> t.cod with a;r = t, in canonical order.
std::vector<GraphMorphism> enumerate_extensions(const GraphMorphism& a, const GraphMorphism& t,
                                                const SearchOptions& options = {});

/// Candidate sets encoding "a;r = t"; nullopt when no extension can exist.
std::optional<Candidates> extension_candidates(const GraphMorphism& a, const GraphMorphism& t);

bool for_each_extension(const GraphMorphism& a, const GraphMorphism& t,
                        const SearchOptions& options, const MorphismVisitor& visit);

/// Some isomorphism a -> b, if one exists.
std::optional<GraphMorphism> find_isomorphism(const Graph& a, const Graph& b);

/// Graph with both maps applied to element names; used for renaming.
Graph rename(const Graph& g, const std::function<std::string(const std::string&)>& node_name,
             const std::function<std::string(const std::string&)>& edge_name);

}  // namespace gsketch

#include "gsketch/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gsketch {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGraph: return "invalid graph";
    case ErrorKind::InvalidMorphism: return "invalid morphism";
    case ErrorKind::DomainMismatch: return "domain mismatch";
    case ErrorKind::NotInvertible: return "not invertible";
    case ErrorKind::NotASketchMorphism: return "not a sketch morphism";
    case ErrorKind::IllFormedCondition: return "ill-formed condition";
    case ErrorKind::NotCertified: return "not certified";
    case ErrorKind::Precondition: return "precondition failed";
    case ErrorKind::FuelExhausted: return "fuel exhausted";
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::Resolution: return "unresolved reference";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

// ---------------------------------------------------------------- Graph

Graph::Graph() : Graph({}, {}) {}

Graph::Graph(std::vector<std::string> nodes, std::vector<Edge> edges) {
  auto d = std::make_shared<Data>();
  std::stable_sort(nodes.begin(), nodes.end());
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.name < b.name; });
  d->nodes = std::move(nodes);
  d->edges = std::move(edges);

  auto lookup = [&](const std::string& n) -> std::size_t {
    auto it = std::lower_bound(d->nodes.begin(), d->nodes.end(), n);
    if (it == d->nodes.end() || *it != n) return npos;
    return static_cast<std::size_t>(it - d->nodes.begin());
  };
  d->src.reserve(d->edges.size());
  d->tgt.reserve(d->edges.size());
  for (const auto& e : d->edges) {
    d->src.push_back(lookup(e.source));
    d->tgt.push_back(lookup(e.target));
    if (d->src.back() == npos || d->tgt.back() == npos) d->valid = false;
  }
  if (std::adjacent_find(d->nodes.begin(), d->nodes.end()) != d->nodes.end()) d->valid = false;
  for (std::size_t i = 1; i < d->edges.size(); ++i)
    if (d->edges[i].name == d->edges[i - 1].name) d->valid = false;

  if (d->valid)
    for (std::size_t e = 0; e < d->edges.size(); ++e) d->between[{d->src[e], d->tgt[e]}].push_back(e);
  data_ = std::move(d);
}

std::optional<std::size_t> Graph::node_index(std::string_view name) const {
  const auto& v = data_->nodes;
  auto it = std::lower_bound(v.begin(), v.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == v.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

std::optional<std::size_t> Graph::edge_index(std::string_view name) const {
  const auto& v = data_->edges;
  auto it = std::lower_bound(v.begin(), v.end(), name,
                             [](const Edge& a, std::string_view b) { return a.name < b; });
  if (it == v.end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

std::span<const std::size_t> Graph::edges_between(std::size_t u, std::size_t v) const {
  auto it = data_->between.find({u, v});
  if (it == data_->between.end()) return {};
  return it->second;
}

void Graph::require_valid(std::string_view role) const {
  if (valid()) return;
  auto violations = validate_graph(*this);
  std::string msg = std::string(role) + " graph is invalid";
  if (!violations.empty()) msg += ": " + violations.front().detail;
  throw Error(ErrorKind::InvalidGraph, msg);
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->nodes == b.data_->nodes && a.data_->edges == b.data_->edges;
}

std::vector<GraphViolation> validate_graph(const Graph& g) {
  std::vector<GraphViolation> out;
  auto nodes = g.nodes();
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (nodes[i] == nodes[i - 1])
      out.push_back({GraphViolation::Kind::DuplicateNode, nodes[i], "duplicate node '" + nodes[i] + "'"});
  auto edges = g.edges();
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].name == edges[i - 1].name)
      out.push_back({GraphViolation::Kind::DuplicateEdge, edges[i].name,
                     "duplicate edge '" + edges[i].name + "'"});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (g.source(e) == npos)
      out.push_back({GraphViolation::Kind::DanglingSource, edges[e].name,
                     "edge '" + edges[e].name + "' has unknown source '" + edges[e].source + "'"});
    if (g.target(e) == npos)
      out.push_back({GraphViolation::Kind::DanglingTarget, edges[e].name,
                     "edge '" + edges[e].name + "' has unknown target '" + edges[e].target + "'"});
  }
  return out;
}

Graph rename(const Graph& g, const std::function<std::string(const std::string&)>& node_name,
             const std::function<std::string(const std::string&)>& edge_name) {
  std::vector<std::string> nodes;
  for (const auto& n : g.nodes()) nodes.push_back(node_name(n));
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({edge_name(e.name), node_name(e.source), node_name(e.target)});
  return Graph(std::move(nodes), std::move(edges));
}

// ---------------------------------------------------------------- GraphMorphism

GraphMorphism::GraphMorphism(Unchecked, Graph dom, Graph cod, std::vector<std::size_t> node_map,
                             std::vector<std::size_t> edge_map)
    : dom_(std::move(dom)), cod_(std::move(cod)), node_map_(std::move(node_map)),
      edge_map_(std::move(edge_map)) {}

GraphMorphism::GraphMorphism(Graph dom, Graph cod, std::vector<std::size_t> node_map,
                             std::vector<std::size_t> edge_map)
    : GraphMorphism(Unchecked{}, std::move(dom), std::move(cod), std::move(node_map), std::move(edge_map)) {
  dom_.require_valid("domain");
  cod_.require_valid("codomain");
  if (node_map_.size() != dom_.node_count() || edge_map_.size() != dom_.edge_count())
    throw Error(ErrorKind::InvalidMorphism, "maps are not total on the domain");
  for (auto n : node_map_)
    if (n >= cod_.node_count()) throw Error(ErrorKind::InvalidMorphism, "node image out of range");
  for (std::size_t e = 0; e < edge_map_.size(); ++e) {
    auto f = edge_map_[e];
    if (f >= cod_.edge_count()) throw Error(ErrorKind::InvalidMorphism, "edge image out of range");
    if (node_map_[dom_.source(e)] != cod_.source(f) || node_map_[dom_.target(e)] != cod_.target(f))
      throw Error(ErrorKind::InvalidMorphism,
                  "edge '" + dom_.edge_name(e) + "' -> '" + cod_.edge_name(f) + "' breaks the homomorphism law");
  }
}

GraphMorphism GraphMorphism::from_names(Graph dom, Graph cod,
                                        const std::map<std::string, std::string>& nodes,
                                        const std::map<std::string, std::string>& edges) {
  dom.require_valid("domain");
  cod.require_valid("codomain");
  std::vector<std::size_t> nm(dom.node_count(), npos), em(dom.edge_count(), npos);
  auto assign_node = [&](std::size_t n, std::size_t image, const std::string& why) {
    if (nm[n] != npos && nm[n] != image)
      throw Error(ErrorKind::InvalidMorphism, "node '" + dom.node_name(n) + "' is mapped to both '" +
                                                  cod.node_name(nm[n]) + "' and '" + cod.node_name(image) +
                                                  "' (" + why + ")");
    nm[n] = image;
  };
  for (const auto& [k, v] : nodes) {
    auto n = dom.node_index(k);
    if (!n) throw Error(ErrorKind::InvalidMorphism, "unknown domain node '" + k + "'");
    auto image = cod.node_index(v);
    if (!image) throw Error(ErrorKind::InvalidMorphism, "unknown codomain node '" + v + "'");
    assign_node(*n, *image, "explicit entry");
  }
  for (const auto& [k, v] : edges) {
    auto e = dom.edge_index(k);
    if (!e) throw Error(ErrorKind::InvalidMorphism, "unknown domain edge '" + k + "'");
    auto image = cod.edge_index(v);
    if (!image) throw Error(ErrorKind::InvalidMorphism, "unknown codomain edge '" + v + "'");
    em[*e] = *image;
    assign_node(dom.source(*e), cod.source(*image), "source of edge '" + k + "'");
    assign_node(dom.target(*e), cod.target(*image), "target of edge '" + k + "'");
  }
  for (std::size_t e = 0; e < em.size(); ++e)
    if (em[e] == npos) throw Error(ErrorKind::InvalidMorphism, "edge '" + dom.edge_name(e) + "' is not mapped");
  for (std::size_t n = 0; n < nm.size(); ++n)
    if (nm[n] == npos) throw Error(ErrorKind::InvalidMorphism, "node '" + dom.node_name(n) + "' is not mapped");
  return GraphMorphism(std::move(dom), std::move(cod), std::move(nm), std::move(em));
}

const std::string& GraphMorphism::node(std::string_view name) const {
  auto i = dom_.node_index(name);
  if (!i) throw Error(ErrorKind::DomainMismatch, "no node '" + std::string(name) + "' in domain");
  return cod_.node_name(node_map_[*i]);
}

const std::string& GraphMorphism::edge(std::string_view name) const {
  auto i = dom_.edge_index(name);
  if (!i) throw Error(ErrorKind::DomainMismatch, "no edge '" + std::string(name) + "' in domain");
  return cod_.edge_name(edge_map_[*i]);
}

std::map<std::string, std::string> GraphMorphism::node_names() const {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < node_map_.size(); ++i) out[dom_.node_name(i)] = cod_.node_name(node_map_[i]);
  return out;
}

std::map<std::string, std::string> GraphMorphism::edge_names() const {
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < edge_map_.size(); ++i) out[dom_.edge_name(i)] = cod_.edge_name(edge_map_[i]);
  return out;
}

bool operator==(const GraphMorphism& a, const GraphMorphism& b) {
  return a.node_map_ == b.node_map_ && a.edge_map_ == b.edge_map_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
}

GraphMorphism compose(const GraphMorphism& f, const GraphMorphism& g) {
  if (!(f.cod() == g.dom()))
    throw Error(ErrorKind::DomainMismatch, "cannot compose: codomain of the first differs from domain of the second");
  std::vector<std::size_t> nm(f.node_map_.size()), em(f.edge_map_.size());
  for (std::size_t i = 0; i < nm.size(); ++i) nm[i] = g.node_map_[f.node_map_[i]];
  for (std::size_t i = 0; i < em.size(); ++i) em[i] = g.edge_map_[f.edge_map_[i]];
  return GraphMorphism(GraphMorphism::Unchecked{}, f.dom(), g.cod(), std::move(nm), std::move(em));
}

GraphMorphism identity(const Graph& g) {
  std::vector<std::size_t> nm(g.node_count()), em(g.edge_count());
  std::iota(nm.begin(), nm.end(), std::size_t{0});
  std::iota(em.begin(), em.end(), std::size_t{0});
  return GraphMorphism(g, g, std::move(nm), std::move(em));
}

namespace {
bool injective(std::span<const std::size_t> map, std::size_t range) {
  std::vector<char> seen(range, 0);
  for (auto x : map) {
    if (seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}
}  // namespace

bool is_monomorphism(const GraphMorphism& m) {
  return injective(m.node_map(), m.cod().node_count()) && injective(m.edge_map(), m.cod().edge_count());
}

bool is_epimorphism(const GraphMorphism& m) {
  std::vector<char> hit_n(m.cod().node_count(), 0), hit_e(m.cod().edge_count(), 0);
  for (auto x : m.node_map()) hit_n[x] = 1;
  for (auto x : m.edge_map()) hit_e[x] = 1;
  return std::all_of(hit_n.begin(), hit_n.end(), [](char c) { return c; }) &&
         std::all_of(hit_e.begin(), hit_e.end(), [](char c) { return c; });
}

bool is_isomorphism(const GraphMorphism& m) {
  return m.dom().node_count() == m.cod().node_count() && m.dom().edge_count() == m.cod().edge_count() &&
         is_monomorphism(m);
}

GraphMorphism invert(const GraphMorphism& m) {
  if (!is_isomorphism(m)) throw Error(ErrorKind::NotInvertible, "morphism is not an isomorphism");
  std::vector<std::size_t> nm(m.cod().node_count()), em(m.cod().edge_count());
  for (std::size_t i = 0; i < m.node_map().size(); ++i) nm[m.node(i)] = i;
  for (std::size_t i = 0; i < m.edge_map().size(); ++i) em[m.edge(i)] = i;
  return GraphMorphism(m.cod(), m.dom(), std::move(nm), std::move(em));
}

bool is_inclusion(const GraphMorphism& m) {
  for (std::size_t i = 0; i < m.dom().node_count(); ++i)
    if (m.dom().node_name(i) != m.cod().node_name(m.node(i))) return false;
  for (std::size_t i = 0; i < m.dom().edge_count(); ++i)
    if (m.dom().edge_name(i) != m.cod().edge_name(m.edge(i))) return false;
  return true;
}

GraphMorphism inclusion(const Graph& sub, const Graph& super) {
  std::map<std::string, std::string> nodes, edges;
  for (const auto& n : sub.nodes()) nodes[n] = n;
  for (const auto& e : sub.edges()) edges[e.name] = e.name;
  return GraphMorphism::from_names(sub, super, nodes, edges);
}

// ---------------------------------------------------------------- search

Candidates Candidates::unrestricted(const Graph& dom) {
  Candidates c;
  c.nodes.resize(dom.node_count());
  c.edges.resize(dom.edge_count());
  return c;
}

class MorphismSearch {
 public:
  MorphismSearch(const Graph& dom, const Graph& cod, const Candidates& cand, const SearchOptions& opt,
                 const MorphismVisitor& visit)
      : dom_(dom), cod_(cod), opt_(opt), visit_(visit), node_allowed_(cand.nodes), edge_allowed_(cand.edges),
        nm_(dom.node_count(), npos), em_(dom.edge_count(), npos), used_n_(cod.node_count(), 0),
        used_e_(cod.edge_count(), 0), closing_(dom.node_count()) {
    for (std::size_t e = 0; e < dom.edge_count(); ++e)
      closing_[std::max(dom.source(e), dom.target(e))].push_back(e);
  }

  bool run() {
    if (!propagate_edge_candidates()) return true;
    return assign_node(0);
  }

 private:
  // Restrict node candidates to endpoints of the admissible edge images.
  bool propagate_edge_candidates() {
    for (std::size_t e = 0; e < dom_.edge_count(); ++e) {
      const auto& allowed = edge_allowed_[e];
      if (!allowed) continue;
      std::vector<std::size_t> srcs, tgts;
      for (auto f : *allowed) {
        srcs.push_back(cod_.source(f));
        tgts.push_back(cod_.target(f));
      }
      if (!restrict_node(dom_.source(e), std::move(srcs))) return false;
      if (!restrict_node(dom_.target(e), std::move(tgts))) return false;
    }
    return true;
  }

  bool restrict_node(std::size_t n, std::vector<std::size_t> allowed) {
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    auto& slot = node_allowed_[n];
    if (slot) {
      std::vector<std::size_t> both;
      std::set_intersection(slot->begin(), slot->end(), allowed.begin(), allowed.end(), std::back_inserter(both));
      slot = std::move(both);
    } else {
      slot = std::move(allowed);
    }
    return !slot->empty();
  }

  bool edge_admissible(std::size_t e, std::size_t f) const {
    const auto& allowed = edge_allowed_[e];
    if (allowed && !std::binary_search(allowed->begin(), allowed->end(), f)) return false;
    return !(opt_.injective && used_e_[f]);
  }

  bool closing_edges_ok(std::size_t n) const {
    for (auto e : closing_[n]) {
      auto cands = cod_.edges_between(nm_[dom_.source(e)], nm_[dom_.target(e)]);
      if (std::none_of(cands.begin(), cands.end(), [&](std::size_t f) { return edge_admissible(e, f); }))
        return false;
    }
    return true;
  }

  bool try_node(std::size_t n, std::size_t c) {
    if (opt_.injective && used_n_[c]) return true;
    nm_[n] = c;
    used_n_[c] = 1;
    bool go_on = true;
    if (closing_edges_ok(n)) go_on = assign_node(n + 1);
    used_n_[c] = 0;
    nm_[n] = npos;
    return go_on;
  }

  bool assign_node(std::size_t n) {
    if (n == dom_.node_count()) return assign_edge(0);
    if (const auto& allowed = node_allowed_[n]) {
      for (auto c : *allowed)
        if (!try_node(n, c)) return false;
    } else {
      for (std::size_t c = 0; c < cod_.node_count(); ++c)
        if (!try_node(n, c)) return false;
    }
    return true;
  }

  bool assign_edge(std::size_t e) {
    if (e == dom_.edge_count()) {
      return visit_(GraphMorphism(GraphMorphism::Unchecked{}, dom_, cod_, nm_, em_));
    }
    for (auto f : cod_.edges_between(nm_[dom_.source(e)], nm_[dom_.target(e)])) {
      if (!edge_admissible(e, f)) continue;
      em_[e] = f;
      used_e_[f] = 1;
      bool go_on = assign_edge(e + 1);
      used_e_[f] = 0;
      em_[e] = npos;
      if (!go_on) return false;
    }
    return true;
  }

  const Graph& dom_;
  const Graph& cod_;
  const SearchOptions& opt_;
  const MorphismVisitor& visit_;
  std::vector<std::optional<std::vector<std::size_t>>> node_allowed_;
  std::vector<std::optional<std::vector<std::size_t>>> edge_allowed_;
  std::vector<std::size_t> nm_, em_;
  std::vector<char> used_n_, used_e_;
  std::vector<std::vector<std::size_t>> closing_;
};

bool search_morphisms(const Graph& dom, const Graph& cod, const Candidates& candidates,
                      const SearchOptions& options, const MorphismVisitor& visit) {
  dom.require_valid("domain");
  cod.require_valid("codomain");
  if (candidates.nodes.size() != dom.node_count() || candidates.edges.size() != dom.edge_count())
    throw Error(ErrorKind::Internal, "candidate table does not match the domain");
  Candidates sorted = candidates;
  for (auto* table : {&sorted.nodes, &sorted.edges})
    for (auto& slot : *table)
      if (slot) {
        std::sort(slot->begin(), slot->end());
        slot->erase(std::unique(slot->begin(), slot->end()), slot->end());
      }
  return MorphismSearch(dom, cod, sorted, options, visit).run();
}

std::vector<GraphMorphism> enumerate_morphisms(const Graph& a, const Graph& g, const SearchOptions& options) {
  std::vector<GraphMorphism> out;
  search_morphisms(a, g, Candidates::unrestricted(a), options, [&](const GraphMorphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::optional<Candidates> extension_candidates(const GraphMorphism& a, const GraphMorphism& t) {
  if (!(a.dom() == t.dom()))
    throw Error(ErrorKind::DomainMismatch, "extension: shift and anchor have different domains");
  Candidates c = Candidates::unrestricted(a.cod());
  for (std::size_t i = 0; i < a.dom().node_count(); ++i) {
    auto& slot = c.nodes[a.node(i)];
    if (slot && slot->front() != t.node(i)) return std::nullopt;
    slot = std::vector<std::size_t>{t.node(i)};
  }
  for (std::size_t i = 0; i < a.dom().edge_count(); ++i) {
    auto& slot = c.edges[a.edge(i)];
    if (slot && slot->front() != t.edge(i)) return std::nullopt;
    slot = std::vector<std::size_t>{t.edge(i)};
  }
  return c;
}

bool for_each_extension(const GraphMorphism& a, const GraphMorphism& t, const SearchOptions& options,
                        const MorphismVisitor& visit) {
  auto c = extension_candidates(a, t);
  if (!c) return true;
  return search_morphisms(a.cod(), t.cod(), *c, options, visit);
}

std::vector<GraphMorphism> enumerate_extensions(const GraphMorphism& a, const GraphMorphism& t,
                                                const SearchOptions& options) {
  std::vector<GraphMorphism> out;
  for_each_extension(a, t, options, [&](const GraphMorphism& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

std::optional<GraphMorphism> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return std::nullopt;
  std::optional<GraphMorphism> found;
  search_morphisms(a, b, Candidates::unrestricted(a), SearchOptions{.injective = true},
                   [&](const GraphMorphism& m) {
                     found = m;
                     return false;
                   });
  return found;
}

}  // namespace gsketch

#include "gsketch/category.hpp"

#include <algorithm>
#include <numeric>

namespace gsketch {

Graph initial_graph() { return Graph(); }

GraphMorphism initial_morphism(const Graph& g) { return GraphMorphism(initial_graph(), g, {}, {}); }

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Class name for every member of a tagged disjoint union B + A.
std::vector<std::string> class_names(UnionFind& uf, const std::vector<std::string>& tagged) {
  std::map<std::size_t, std::string> least;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    auto root = uf.find(i);
    auto it = least.find(root);
    if (it == least.end() || tagged[i] < it->second) least[root] = tagged[i];
  }
  std::vector<std::string> out(tagged.size());
  for (std::size_t i = 0; i < tagged.size(); ++i) out[i] = least[uf.find(i)];
  return out;
}

}  // namespace

PushoutResult pushout(const GraphMorphism& m, const GraphMorphism& r) {
  if (!(m.dom() == r.dom())) throw Error(ErrorKind::DomainMismatch, "pushout: span legs have different domains");
  const Graph& B = m.cod();
  const Graph& A = r.cod();
  const std::size_t nb = B.node_count(), eb = B.edge_count();

  std::vector<std::string> node_tags, edge_tags;
  for (const auto& n : B.nodes()) node_tags.push_back("L:" + n);
  for (const auto& n : A.nodes()) node_tags.push_back("R:" + n);
  for (const auto& e : B.edges()) edge_tags.push_back("L:" + e.name);
  for (const auto& e : A.edges()) edge_tags.push_back("R:" + e.name);

  UnionFind nodes(node_tags.size()), edges(edge_tags.size());
  for (std::size_t c = 0; c < m.dom().node_count(); ++c) nodes.unite(m.node(c), nb + r.node(c));
  for (std::size_t c = 0; c < m.dom().edge_count(); ++c) edges.unite(m.edge(c), eb + r.edge(c));
  auto node_name = class_names(nodes, node_tags);
  auto edge_name = class_names(edges, edge_tags);

  std::vector<std::string> d_nodes(node_name.begin(), node_name.end());
  std::sort(d_nodes.begin(), d_nodes.end());
  d_nodes.erase(std::unique(d_nodes.begin(), d_nodes.end()), d_nodes.end());

  std::map<std::string, Edge> d_edges;
  for (std::size_t i = 0; i < edge_tags.size(); ++i) {
    const bool left_side = i < eb;
    const Graph& side = left_side ? B : A;
    const std::size_t local = left_side ? i : i - eb;
    const std::size_t offset = left_side ? 0 : nb;
    d_edges.try_emplace(edge_name[i], Edge{edge_name[i], node_name[offset + side.source(local)],
                                           node_name[offset + side.target(local)]});
  }
  std::vector<Edge> edge_list;
  for (auto& [_, e] : d_edges) edge_list.push_back(e);
  Graph D(std::move(d_nodes), std::move(edge_list));

  auto index_map = [](const std::vector<std::string>& names, std::size_t from, std::size_t count, auto lookup) {
    std::vector<std::size_t> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = *lookup(names[from + i]);
    return out;
  };
  auto node_lookup = [&](const std::string& n) { return D.node_index(n); };
  auto edge_lookup = [&](const std::string& n) { return D.edge_index(n); };
  GraphMorphism left(B, D, index_map(node_name, 0, nb, node_lookup), index_map(edge_name, 0, eb, edge_lookup));
  GraphMorphism right(A, D, index_map(node_name, nb, A.node_count(), node_lookup),
                      index_map(edge_name, eb, A.edge_count(), edge_lookup));
  return {D, std::move(left), std::move(right)};
}

PullbackResult pullback(const GraphMorphism& m, const GraphMorphism& r) {
  if (!(m.cod() == r.cod())) throw Error(ErrorKind::DomainMismatch, "pullback: cospan legs have different codomains");
  const Graph& B = m.dom();
  const Graph& A = r.dom();
  auto pair_name = [](const std::string& b, const std::string& a) { return b + "|" + a; };

  std::vector<std::string> nodes;
  for (std::size_t b = 0; b < B.node_count(); ++b)
    for (std::size_t a = 0; a < A.node_count(); ++a)
      if (m.node(b) == r.node(a)) nodes.push_back(pair_name(B.node_name(b), A.node_name(a)));
  std::vector<Edge> edges;
  for (std::size_t b = 0; b < B.edge_count(); ++b)
    for (std::size_t a = 0; a < A.edge_count(); ++a)
      if (m.edge(b) == r.edge(a))
        edges.push_back({pair_name(B.edge_name(b), A.edge_name(a)),
                         pair_name(B.node_name(B.source(b)), A.node_name(A.source(a))),
                         pair_name(B.node_name(B.target(b)), A.node_name(A.target(a)))});
  Graph D(std::move(nodes), std::move(edges));
  if (!D.valid()) throw Error(ErrorKind::Internal, "pullback: pair names collide");

  std::map<std::string, std::string> ln, le, rn, re;
  for (const auto& n : D.nodes()) {
    auto bar = n.find('|');
    // Names may themselves contain '|'; recover the split from the source graphs.
    for (; bar != std::string::npos; bar = n.find('|', bar + 1))
      if (B.has_node(n.substr(0, bar)) && A.has_node(n.substr(bar + 1))) break;
    ln[n] = n.substr(0, bar);
    rn[n] = n.substr(bar + 1);
  }
  for (const auto& e : D.edges()) {
    auto bar = e.name.find('|');
    for (; bar != std::string::npos; bar = e.name.find('|', bar + 1))
      if (B.has_edge(e.name.substr(0, bar)) && A.has_edge(e.name.substr(bar + 1))) break;
    le[e.name] = e.name.substr(0, bar);
    re[e.name] = e.name.substr(bar + 1);
  }
  return {D, GraphMorphism::from_names(D, B, ln, le), GraphMorphism::from_names(D, A, rn, re)};
}

const std::vector<Graph>& default_mediator_pool() {
  static const std::vector<Graph> pool = {
      Graph(),
      Graph({"x"}, {}),
      Graph({"x", "y"}, {}),
      Graph({"x"}, {{"l", "x", "x"}}),
      Graph({"x"}, {{"l1", "x", "x"}, {"l2", "x", "x"}}),
      Graph({"x", "y"}, {{"f", "x", "y"}}),
      Graph({"x", "y"}, {{"f", "x", "y"}, {"g", "x", "y"}}),
      Graph({"x", "y"}, {{"f", "x", "y"}, {"g", "y", "x"}}),
      Graph({"x", "y"}, {{"l", "x", "x"}, {"f", "x", "y"}}),
      Graph({"x", "y", "z"}, {{"f", "x", "y"}, {"g", "y", "z"}}),
      Graph({"x", "y", "z"}, {{"f", "x", "y"}, {"g", "y", "z"}, {"h", "x", "z"}}),
      Graph({"x", "y", "z"}, {{"f", "x", "y"}}),
      Graph({"w", "x", "y", "z"}, {{"f", "w", "x"}, {"g", "y", "z"}}),
  };
  return pool;
}

namespace {

std::optional<std::vector<std::size_t>> intersect(const std::optional<std::vector<std::size_t>>& slot,
                                                  std::vector<std::size_t> allowed) {
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (!slot) return allowed;
  std::vector<std::size_t> both;
  std::set_intersection(slot->begin(), slot->end(), allowed.begin(), allowed.end(), std::back_inserter(both));
  return both;
}

std::vector<GraphMorphism> collect(const Graph& dom, const Graph& cod, const Candidates& c) {
  std::vector<GraphMorphism> out;
  search_morphisms(dom, cod, c, {}, [&](const GraphMorphism& u) {
    out.push_back(u);
    return true;
  });
  return out;
}

}  // namespace

std::vector<GraphMorphism> mediators_from(const Graph& dom, const Graph& cod,
                                          const std::vector<std::pair<GraphMorphism, GraphMorphism>>& legs) {
  Candidates c = Candidates::unrestricted(dom);
  for (const auto& [f, g] : legs) {
    if (!(f.cod() == dom) || !(g.cod() == cod) || !(f.dom() == g.dom()))
      throw Error(ErrorKind::DomainMismatch, "mediator legs do not match");
    for (std::size_t x = 0; x < f.dom().node_count(); ++x) c.nodes[f.node(x)] = intersect(c.nodes[f.node(x)], {g.node(x)});
    for (std::size_t x = 0; x < f.dom().edge_count(); ++x) c.edges[f.edge(x)] = intersect(c.edges[f.edge(x)], {g.edge(x)});
  }
  return collect(dom, cod, c);
}

std::vector<GraphMorphism> mediators_into(const Graph& dom, const Graph& cod,
                                          const std::vector<std::pair<GraphMorphism, GraphMorphism>>& legs) {
  Candidates c = Candidates::unrestricted(dom);
  for (const auto& [p, g] : legs) {
    if (!(p.dom() == cod) || !(g.dom() == dom) || !(p.cod() == g.cod()))
      throw Error(ErrorKind::DomainMismatch, "mediator legs do not match");
    for (std::size_t x = 0; x < dom.node_count(); ++x) {
      std::vector<std::size_t> fibre;
      for (std::size_t d = 0; d < cod.node_count(); ++d)
        if (p.node(d) == g.node(x)) fibre.push_back(d);
      c.nodes[x] = intersect(c.nodes[x], std::move(fibre));
    }
    for (std::size_t x = 0; x < dom.edge_count(); ++x) {
      std::vector<std::size_t> fibre;
      for (std::size_t d = 0; d < cod.edge_count(); ++d)
        if (p.edge(d) == g.edge(x)) fibre.push_back(d);
      c.edges[x] = intersect(c.edges[x], std::move(fibre));
    }
  }
  return collect(dom, cod, c);
}

bool verify_pushout(const GraphMorphism& m, const GraphMorphism& r, const PushoutResult& candidate,
                    const std::vector<Graph>& pool) {
  const auto& [D, left, right] = candidate;
  if (!(left.dom() == m.cod()) || !(right.dom() == r.cod()) || !(left.cod() == D) || !(right.cod() == D))
    return false;
  if (!(compose(m, left) == compose(r, right))) return false;
  for (const auto& X : pool) {
    bool ok = true;
    search_morphisms(m.cod(), X, Candidates::unrestricted(m.cod()), {}, [&](const GraphMorphism& f) {
      for_each_extension(r, compose(m, f), {}, [&](const GraphMorphism& g) {
        ok = mediators_from(D, X, {{left, f}, {right, g}}).size() == 1;
        return ok;
      });
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

bool verify_pullback(const GraphMorphism& m, const GraphMorphism& r, const PullbackResult& candidate,
                     const std::vector<Graph>& pool) {
  const auto& [D, left, right] = candidate;
  if (!(left.cod() == m.dom()) || !(right.cod() == r.dom()) || !(left.dom() == D) || !(right.dom() == D))
    return false;
  if (!(compose(left, m) == compose(right, r))) return false;
  const Graph& A = r.dom();
  for (const auto& X : pool) {
    bool ok = true;
    search_morphisms(X, m.dom(), Candidates::unrestricted(X), {}, [&](const GraphMorphism& f) {
      const GraphMorphism fm = compose(f, m);
      // g : X -> A with g;r = f;m
      Candidates c = Candidates::unrestricted(X);
      for (std::size_t x = 0; x < X.node_count(); ++x) {
        std::vector<std::size_t> fibre;
        for (std::size_t a = 0; a < A.node_count(); ++a)
          if (r.node(a) == fm.node(x)) fibre.push_back(a);
        c.nodes[x] = std::move(fibre);
      }
      for (std::size_t x = 0; x < X.edge_count(); ++x) {
        std::vector<std::size_t> fibre;
        for (std::size_t a = 0; a < A.edge_count(); ++a)
          if (r.edge(a) == fm.edge(x)) fibre.push_back(a);
        c.edges[x] = std::move(fibre);
      }
      search_morphisms(X, A, c, {}, [&](const GraphMorphism& g) {
        ok = mediators_into(X, D, {{left, f}, {right, g}}).size() == 1;
        return ok;
      });
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace gsketch

#pragma once

// Test-only oracles: definitional brute-force enumeration of graph
// morphisms and a direct evaluator for conditions built on it, plus random
// graph generation.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gsketch/ct_library.hpp"

namespace gsketch::testing {

inline Graph random_graph(std::mt19937& rng, std::size_t max_nodes, std::size_t max_edges,
                          const std::string& prefix = "") {
  std::uniform_int_distribution<std::size_t> nn(1, max_nodes), ne(0, max_edges);
  std::size_t n = nn(rng), m = ne(rng);
  std::vector<std::string> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back(prefix + "n" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) edges.push_back({prefix + "e" + std::to_string(i), nodes[pick(rng)], nodes[pick(rng)]});
  return Graph(nodes, edges);
}

/// Every homomorphism a -> b: all node maps, then for each edge every edge of
/// b between the mapped endpoints. Lexicographic in (node images, edge images).
/// Entries of `fixed_nodes` / `fixed_edges` other than npos pin an image.
inline std::vector<GraphMorphism> brute_force_morphisms(const Graph& a, const Graph& b,
                                                        std::vector<std::size_t> fixed_nodes = {},
                                                        std::vector<std::size_t> fixed_edges = {}) {
  std::vector<GraphMorphism> out;
  const std::size_t n = a.node_count(), m = a.edge_count();
  fixed_nodes.resize(n, npos);
  fixed_edges.resize(m, npos);
  std::vector<std::vector<std::size_t>> node_options(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (fixed_nodes[v] != npos) node_options[v] = {fixed_nodes[v]};
    else
      for (std::size_t w = 0; w < b.node_count(); ++w) node_options[v].push_back(w);
    if (node_options[v].empty()) return out;
  }
  std::vector<std::size_t> npos_(n, 0);
  while (true) {
    std::vector<std::size_t> nodes(n);
    for (std::size_t v = 0; v < n; ++v) nodes[v] = node_options[v][npos_[v]];
    std::vector<std::vector<std::size_t>> options(m);
    bool possible = true;
    for (std::size_t e = 0; e < m; ++e) {
      for (std::size_t f = 0; f < b.edge_count(); ++f)
        if (b.source(f) == nodes[a.source(e)] && b.target(f) == nodes[a.target(e)] && (fixed_edges[e] == npos || fixed_edges[e] == f))
          options[e].push_back(f);
      possible = possible && !options[e].empty();
    }
    if (possible) {
      std::vector<std::size_t> pos(m, 0);
      while (true) {
        std::vector<std::size_t> edges(m);
        for (std::size_t e = 0; e < m; ++e) edges[e] = options[e][pos[e]];
        out.emplace_back(a, b, nodes, edges);
        std::size_t k = m;
        while (k > 0 && ++pos[k - 1] == options[k - 1].size()) pos[--k] = 0;
        if (k == 0) break;
      }
    }
    std::size_t k = n;
    while (k > 0 && ++npos_[k - 1] == node_options[k - 1].size()) npos_[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

/// Morphisms r with a;r = t: images on a's image are pinned by t, everything
/// else is enumerated, and the equation is checked on the result.
inline std::vector<GraphMorphism> brute_force_extensions(const GraphMorphism& a, const GraphMorphism& t) {
  std::vector<std::size_t> nodes(a.cod().node_count(), npos), edges(a.cod().edge_count(), npos);
  for (std::size_t v = 0; v < a.dom().node_count(); ++v) nodes[a.node(v)] = t.node(v);
  for (std::size_t e = 0; e < a.dom().edge_count(); ++e) edges[a.edge(e)] = t.edge(e);
  std::vector<GraphMorphism> out;
  for (auto& r : brute_force_morphisms(a.cod(), t.cod(), nodes, edges))
    if (compose(a, r) == t) out.push_back(std::move(r));
  return out;
}

inline bool has_statement(const Sketch& G, const Statement& s) {
  return std::find(G.statements().begin(), G.statements().end(), s) != G.statements().end();
}

/// Satisfaction read straight off the definition.
inline bool oracle_holds(const GraphMorphism& t, const Sketch& G, const Condition& c) {
  switch (c.kind()) {
    case ConditionKind::Statement:
      return has_statement(G, Statement(c.statement().predicate(), compose(c.statement().binding(), t)));
    case ConditionKind::True:
      return true;
    case ConditionKind::False:
      return false;
    case ConditionKind::And:
      return std::all_of(c.children().begin(), c.children().end(), [&](const Condition& k) { return oracle_holds(t, G, k); });
    case ConditionKind::Or:
      return std::any_of(c.children().begin(), c.children().end(), [&](const Condition& k) { return oracle_holds(t, G, k); });
    case ConditionKind::Not:
      return !oracle_holds(t, G, c.child());
    case ConditionKind::Exists:
    case ConditionKind::Forall: {
      if (!oracle_holds(t, G, c.guard())) return true;
      auto rs = brute_force_extensions(c.shift(), t);
      auto body = [&](const GraphMorphism& r) { return oracle_holds(r, G, c.body()); };
      return c.kind() == ConditionKind::Exists ? std::any_of(rs.begin(), rs.end(), body) : std::all_of(rs.begin(), rs.end(), body);
    }
  }
  return false;
}

/// Contexts isomorphic by a map that carries the statements bijectively.
inline bool sketches_isomorphic(const Sketch& a, const Sketch& b) {
  if (a.context().node_count() != b.context().node_count() || a.context().edge_count() != b.context().edge_count() ||
      a.statements().size() != b.statements().size())
    return false;
  for (const auto& iso : enumerate_morphisms(a.context(), b.context(), {.injective = true})) {
    if (!is_isomorphism(iso)) continue;
    if (std::all_of(a.statements().begin(), a.statements().end(),
                    [&](const Statement& s) { return b.contains(translate_statement(iso, s)); }))
      return true;
  }
  return false;
}

inline Constraint global(const Condition& c, const Sketch& G) { return Constraint::global(c, G.context()); }

inline bool holds_globally(const Condition& c, const Sketch& G) { return check_constraint(G, global(c, G)).holds; }

}  // namespace gsketch::testing

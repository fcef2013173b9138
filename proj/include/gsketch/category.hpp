#pragma once

// Pushouts, pullbacks and the initial object in the category of finite
// graphs, with bounded universal-property verifiers used as test oracles.

#include <vector>

#include "gsketch/graph.hpp"

namespace gsketch {

/// Pushout of the span B <-m- C -r-> A.
/// left : B -> D, right : A -> D, with m;left = r;right.
struct PushoutResult {
  Graph object;
  GraphMorphism left;
  GraphMorphism right;
};

/// Pullback of the cospan B -m-> C <-r- A.
/// left : D -> B, right : D -> A, with left;m = right;r.
struct PullbackResult {
  Graph object;
  GraphMorphism left;
  GraphMorphism right;
};

Graph initial_graph();
GraphMorphism initial_morphism(const Graph& g);

/// Canonical pushout. Elements of D are equivalence classes of the tagged
/// disjoint union ("L:" + B-name, "R:" + A-name) under m(x) ~ r(x); each
/// class is named by its lexicographically least tagged member.
PushoutResult pushout(const GraphMorphism& m, const GraphMorphism& r);

/// Canonical pullback: fibre product with elements named "b|a".
PullbackResult pullback(const GraphMorphism& m, const GraphMorphism& r);

/// Small graphs (at most four nodes) that serve as test objects when
/// checking mediator existence and uniqueness.
const std::vector<Graph>& default_mediator_pool();

/// True iff the square commutes and every cocone over the span into a pool
/// graph factors through the candidate by exactly one mediator.
bool verify_pushout(const GraphMorphism& m, const GraphMorphism& r, const PushoutResult& candidate,
                    const std::vector<Graph>& pool = default_mediator_pool());

/// True iff the square commutes and every cone over the cospan from a pool
/// graph factors through the candidate by exactly one mediator.
bool verify_pullback(const GraphMorphism& m, const GraphMorphism& r, const PullbackResult& candidate,
                     const std::vector<Graph>& pool = default_mediator_pool());

/// All u : dom -> cod with f;u = g for every (f, g) in the list (f : X -> dom,
/// g : X -> cod). Used to find mediators out of a pushout.
std::vector<GraphMorphism> mediators_from(const Graph& dom, const Graph& cod,
                                          const std::vector<std::pair<GraphMorphism, GraphMorphism>>& legs);

/// All u : dom -> cod with u;p = g for every (p, g) in the list (p : cod -> Y,
/// g : dom -> Y). Used to find mediators into a pullback.
std::vector<GraphMorphism> mediators_into(const Graph& dom, const Graph& cod,
                                          const std::vector<std::pair<GraphMorphism, GraphMorphism>>& legs);

}  // namespace gsketch

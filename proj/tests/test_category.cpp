#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "support.hpp"

using namespace gsketch;
using gsketch::testing::brute_force_morphisms;
using gsketch::testing::random_graph;

namespace {

// Number of classes of the equivalence generated by m(x) ~ r(x) on the
// disjoint union of two finite sets.
std::size_t class_count(std::size_t b_size, std::size_t a_size, const std::vector<std::pair<std::size_t, std::size_t>>& glue) {
  std::vector<std::size_t> parent(b_size + a_size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [b, a] : glue) parent[find(b)] = find(b_size + a);
  std::size_t n = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) n += find(i) == i;
  return n;
}

// Every cocone (f, g) from the span into x factors through the candidate
// by exactly one morphism.
bool pushout_universal(const GraphMorphism& m, const GraphMorphism& r, const PushoutResult& po, const Graph& x) {
  for (const auto& f : brute_force_morphisms(m.cod(), x))
    for (const auto& g : brute_force_morphisms(r.cod(), x)) {
      if (!(compose(m, f) == compose(r, g))) continue;
      int count = 0;
      for (const auto& u : brute_force_morphisms(po.object, x)) count += compose(po.left, u) == f && compose(po.right, u) == g;
      if (count != 1) return false;
    }
  return true;
}

bool pullback_universal(const GraphMorphism& m, const GraphMorphism& r, const PullbackResult& pb, const Graph& x) {
  for (const auto& f : brute_force_morphisms(x, m.dom()))
    for (const auto& g : brute_force_morphisms(x, r.dom())) {
      if (!(compose(f, m) == compose(g, r))) continue;
      int count = 0;
      for (const auto& u : brute_force_morphisms(x, pb.object)) count += compose(u, pb.left) == f && compose(u, pb.right) == g;
      if (count != 1) return false;
    }
  return true;
}

std::vector<Graph> test_objects() {
  return {Graph(), Graph({"p"}, {}), Graph({"p"}, {{"l", "p", "p"}}), Graph({"p", "q"}, {{"x", "p", "q"}}),
          Graph({"p", "q"}, {{"x", "p", "q"}, {"y", "p", "q"}, {"z", "q", "q"}})};
}

}  // namespace

TEST_CASE("initial graph") {
  CHECK(initial_graph().empty());
  const auto& g = ct_fixtures().G.context();
  auto i = initial_morphism(g);
  CHECK(i.dom().empty());
  CHECK(i.cod() == g);
  CHECK(enumerate_morphisms(initial_graph(), g).size() == 1);
}

TEST_CASE("pushout naming follows the tagged least member") {
  const Graph c({"x"}, {});
  const Graph b({"b1", "b2"}, {{"s", "b1", "b2"}});
  const Graph a({"a1"}, {{"t", "a1", "a1"}});
  auto m = GraphMorphism::from_names(c, b, {{"x", "b2"}}, {});
  auto r = GraphMorphism::from_names(c, a, {{"x", "a1"}}, {});
  auto po = pushout(m, r);
  CHECK(po.object == Graph({"L:b1", "L:b2"}, {{"L:s", "L:b1", "L:b2"}, {"R:t", "L:b2", "L:b2"}}));
  CHECK(po.left.node("b2") == "L:b2");
  CHECK(po.right.node("a1") == "L:b2");
  CHECK(compose(m, po.left) == compose(r, po.right));
}

TEST_CASE("pushout merging two parallel edges") {
  // The graph-level step of repairing uniqueness of composites in G.
  const auto& ct = ct_fixtures();
  const auto& rule = ct.rule3;
  auto matches = find_matches(rule, ct.G);
  REQUIRE_FALSE(matches.empty());
  auto po = pushout(matches.front(), rule.morphism);
  CHECK(po.object.node_count() == 5);
  CHECK(po.object.edge_count() == 6);
  CHECK(po.left.edge("e") == po.left.edge("f"));
  CHECK(verify_pushout(matches.front(), rule.morphism, po));
}

TEST_CASE("pushout over the empty graph is the disjoint union") {
  const auto& ct = ct_fixtures();
  const Graph& b = ct.comp.arity;
  const Graph& a = ct.id.arity;
  auto po = pushout(initial_morphism(b), initial_morphism(a));
  CHECK(po.object.node_count() == b.node_count() + a.node_count());
  CHECK(po.object.edge_count() == b.edge_count() + a.edge_count());
  CHECK(is_monomorphism(po.left));
  CHECK(is_monomorphism(po.right));
}

TEST_CASE("random pushouts have the universal property") {
  std::mt19937 rng(3);
  auto objects = test_objects();
  int checked = 0;
  for (int round = 0; round < 400 && checked < 80; ++round) {
    Graph c = random_graph(rng, 2, 2, "c"), b = random_graph(rng, 3, 3, "b"), a = random_graph(rng, 3, 3, "a");
    auto ms = enumerate_morphisms(c, b), rs = enumerate_morphisms(c, a);
    if (ms.empty() || rs.empty()) continue;
    const auto& m = ms[rng() % ms.size()];
    const auto& r = rs[rng() % rs.size()];
    auto po = pushout(m, r);
    CHECK(compose(m, po.left) == compose(r, po.right));

    std::vector<std::pair<std::size_t, std::size_t>> node_glue, edge_glue;
    for (std::size_t x = 0; x < c.node_count(); ++x) node_glue.emplace_back(m.node(x), r.node(x));
    for (std::size_t x = 0; x < c.edge_count(); ++x) edge_glue.emplace_back(m.edge(x), r.edge(x));
    CHECK(po.object.node_count() == class_count(b.node_count(), a.node_count(), node_glue));
    CHECK(po.object.edge_count() == class_count(b.edge_count(), a.edge_count(), edge_glue));

    for (const auto& x : objects) CHECK(pushout_universal(m, r, po, x));
    CHECK(verify_pushout(m, r, po));
    ++checked;
  }
  CHECK(checked == 80);
}

TEST_CASE("pushout verifier rejects a non-pushout") {
  const Graph c({"x"}, {});
  const Graph b({"b"}, {});
  auto m = GraphMorphism::from_names(c, b, {{"x", "b"}}, {});
  auto po = pushout(m, m);
  // A cocone with a spare node: commutes, but mediators are not unique.
  const Graph bigger({"L:b", "spare"}, {});
  auto leg = GraphMorphism::from_names(b, bigger, {{"b", "L:b"}}, {});
  CHECK(verify_pushout(m, m, po));
  CHECK_FALSE(verify_pushout(m, m, PushoutResult{bigger, leg, leg}));
  // A square that does not commute.
  const Graph two({"p", "q"}, {});
  auto l = GraphMorphism::from_names(b, two, {{"b", "p"}}, {});
  auto rr = GraphMorphism::from_names(b, two, {{"b", "q"}}, {});
  CHECK_FALSE(verify_pushout(m, m, PushoutResult{two, l, rr}));
}

TEST_CASE("pullback is the fibre product") {
  std::mt19937 rng(9);
  auto objects = test_objects();
  int checked = 0;
  for (int round = 0; round < 400 && checked < 80; ++round) {
    Graph c = random_graph(rng, 2, 3, "c"), b = random_graph(rng, 3, 3, "b"), a = random_graph(rng, 3, 3, "a");
    auto ms = enumerate_morphisms(b, c), rs = enumerate_morphisms(a, c);
    if (ms.empty() || rs.empty()) continue;
    const auto& m = ms[rng() % ms.size()];
    const auto& r = rs[rng() % rs.size()];
    auto pb = pullback(m, r);
    CHECK(compose(pb.left, m) == compose(pb.right, r));

    std::size_t nodes = 0, edges = 0;
    for (std::size_t x = 0; x < b.node_count(); ++x)
      for (std::size_t y = 0; y < a.node_count(); ++y) nodes += m.node(x) == r.node(y);
    for (std::size_t x = 0; x < b.edge_count(); ++x)
      for (std::size_t y = 0; y < a.edge_count(); ++y) edges += m.edge(x) == r.edge(y);
    CHECK(pb.object.node_count() == nodes);
    CHECK(pb.object.edge_count() == edges);
    if (nodes > 0) CHECK(pb.object.has_node(b.node_name(pb.left.node(std::size_t{0})) + "|" + a.node_name(pb.right.node(std::size_t{0}))));

    for (const auto& x : objects) CHECK(pullback_universal(m, r, pb, x));
    CHECK(verify_pullback(m, r, pb));
    ++checked;
  }
  CHECK(checked == 80);
}

TEST_CASE("pullback of the running example paths") {
  // Pulling the two anchors of the composition condition back along each other.
  const auto& ct = ct_fixtures();
  auto pb = pullback(ct.t1, ct.t2);
  // t1 covers nodes 1,2,3 and edges a,b; t2 covers 2,3,4 and b,c. Common: 2,3 and b.
  CHECK(pb.object.node_count() == 2);
  CHECK(pb.object.edge_count() == 1);
  CHECK(pb.object.has_edge("e2|e1"));
}

TEST_CASE("mediators") {
  const auto& ct = ct_fixtures();
  auto po = pushout(initial_morphism(ct.monic.arity), initial_morphism(ct.final.arity));
  const Graph& x = ct.id.arity;
  auto f = enumerate_morphisms(ct.monic.arity, x).front();
  auto g = enumerate_morphisms(ct.final.arity, x).front();
  auto us = mediators_from(po.object, x, {{po.left, f}, {po.right, g}});
  CHECK(us.size() == 1);
  auto pb = pullback(identity(x), identity(x));
  auto into = mediators_into(ct.monic.arity, pb.object, {{pb.left, f}, {pb.right, f}});
  CHECK(into.size() == 1);
  CHECK(default_mediator_pool().size() >= 4);
}

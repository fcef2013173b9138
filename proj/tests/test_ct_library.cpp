#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsketch/translation.hpp"
#include "support.hpp"

using namespace gsketch;
using gsketch::testing::holds_globally;
using gsketch::testing::oracle_holds;
using gsketch::testing::random_graph;

namespace {

// Initial object, the dual of phi8, written out by hand.
Condition initial_object_condition() {
  const Graph v({"v"}, {});
  const Graph v_v1({"v", "v1"}, {});
  const Graph v_to_v1({"v", "v1"}, {{"e", "v", "v1"}});
  const Graph v_two_v1({"v", "v1"}, {{"e1", "v", "v1"}, {"e2", "v", "v1"}});
  return Condition::conj(
      v, {unguarded_forall(inclusion(v, v_v1), unguarded_exists(inclusion(v_v1, v_to_v1), Condition::truth(v_to_v1))),
          unguarded_forall(inclusion(v, v_two_v1),
                           unguarded_exists(GraphMorphism::from_names(v_two_v1, v_to_v1, {}, {{"e1", "e"}, {"e2", "e"}}),
                                            Condition::truth(v_to_v1)))});
}

// Binary product shape, built by hand from the description of the generator.
Condition product_condition(const PredicateSymbol& comp) {
  const Graph cone({"apex", "x", "y"}, {{"p_x", "apex", "x"}, {"p_y", "apex", "y"}});
  const Graph two({"apex", "apex2", "x", "y"}, {{"p_x", "apex", "x"}, {"p_y", "apex", "y"}, {"q_x", "apex2", "x"}, {"q_y", "apex2", "y"}});
  auto with = [&](std::vector<Edge> extra) {
    std::vector<Edge> es(two.edges().begin(), two.edges().end());
    for (auto& e : extra) es.push_back(e);
    return Graph({"apex", "apex2", "x", "y"}, es);
  };
  const Graph one = with({{"m", "apex2", "apex"}});
  const Graph twom = with({{"m1", "apex2", "apex"}, {"m2", "apex2", "apex"}});
  auto cmp = [&](const Graph& ctx, const std::string& a, const std::string& b, const std::string& c) {
    return make_statement(comp, ctx, {{"e1", a}, {"e2", b}, {"e3", c}});
  };
  std::map<std::string, std::string> merge;
  for (const auto& e : two.edges()) merge[e.name] = e.name;
  merge["m1"] = merge["m2"] = "m";
  auto alpha = GraphMorphism::from_names(twom, one, {}, merge);
  auto exist = unguarded_forall(
      inclusion(cone, two),
      Condition::exists(Condition::truth(two), inclusion(two, one),
                        conjunction_of(one, {cmp(one, "m", "p_x", "q_x"), cmp(one, "m", "p_y", "q_y")})));
  auto unique = unguarded_forall(
      inclusion(cone, twom),
      Condition::exists(conjunction_of(twom, {cmp(twom, "m1", "p_x", "q_x"), cmp(twom, "m1", "p_y", "q_y"),
                                              cmp(twom, "m2", "p_x", "q_x"), cmp(twom, "m2", "p_y", "q_y")}),
                        alpha, Condition::truth(one)));
  return Condition::conj(cone, {exist, unique});
}

}  // namespace

TEST_CASE("footprint and running example") {
  const auto& ct = ct_fixtures();
  CHECK(ct.comp.arity.node_count() == 3);
  CHECK(ct.comp.arity.edge_count() == 3);
  CHECK(ct.id.arity.edge_count() == 1);
  CHECK(ct.final.arity.edge_count() == 0);
  CHECK(ct.G.context().node_count() == 5);
  CHECK(ct.G.context().edge_count() == 7);
  CHECK(ct.G.statements().size() == 5);
  CHECK(ct.G_prime.context().edge_count() == 6);
  CHECK(ct.G_prime.statements().size() == 4);
  CHECK(ct.H.statements().size() == 5);
  CHECK(ct.H.contains(make_statement(ct.monic, ct.H.context(), {{"e", "c"}})));
  CHECK(ct.loop_collapse.cod() == ct.id.arity);
  // Builds are deterministic.
  auto again = build_ct_fixtures();
  CHECK(again.G == ct.G);
  CHECK(again.phi4_unfolded == ct.phi4_unfolded);
  CHECK(again.rule6 == ct.rule6);
}

TEST_CASE("fixture sketches") {
  auto all = fixture_sketches();
  CHECK(all.size() == 11);
  for (const auto& s : all) {
    INFO(s.name);
    CHECK(s.sketch.context().node_count() <= 5);
    CHECK(s.sketch.context().valid());
  }
}

TEST_CASE("final object is the limit of the empty shape") {
  const auto& ct = ct_fixtures();
  auto lim = limit_condition(Graph());
  CHECK(well_formed(lim).empty());
  CHECK(equivalent_modulo_renaming(lim, ct.phi8));
  CHECK(equivalent_modulo_renaming(colimit_condition(Graph()), initial_object_condition()));
  CHECK_FALSE(equivalent_modulo_renaming(colimit_condition(Graph()), ct.phi8));
  // Same verdicts at every anchor of every fixture sketch.
  auto iso = find_isomorphism(lim.context(), ct.phi8.context());
  REQUIRE(iso.has_value());
  auto moved = translate_condition(*iso, lim);
  for (const auto& s : fixture_sketches())
    for (const auto& t : enumerate_morphisms(ct.phi8.context(), s.sketch.context()))
      CHECK(satisfies(t, s.sketch, moved).holds == satisfies(t, s.sketch, ct.phi8).holds);
}

TEST_CASE("binary product") {
  const auto& ct = ct_fixtures();
  const Graph I({"x", "y"}, {});
  auto lim = limit_condition(I);
  CHECK(well_formed(lim).empty());
  CHECK(equivalent_modulo_renaming(lim, product_condition(ct.comp)));

  // P with projections and an identity loop that mediates.
  const Graph ctx({"A", "B", "P"}, {{"idP", "P", "P"}, {"pa", "P", "A"}, {"pb", "P", "B"}});
  auto cmp = [&](const Graph& g, const std::string& a, const std::string& b, const std::string& c) {
    return make_statement(ct.comp, g, {{"e1", a}, {"e2", b}, {"e3", c}});
  };
  Sketch product(ctx, {cmp(ctx, "idP", "pa", "pa"), cmp(ctx, "idP", "pb", "pb")});
  auto at = GraphMorphism::from_names(lim.context(), ctx, {{"x", "A"}, {"y", "B"}, {"apex", "P"}},
                                      {{"p_x", "pa"}, {"p_y", "pb"}});
  CHECK(satisfies(at, product, lim).holds);
  CHECK(oracle_holds(at, product, lim));

  // Without the mediating statements the existence part fails.
  Sketch no_mediator(ctx, {});
  CHECK_FALSE(satisfies(at, no_mediator, lim).holds);
  CHECK_FALSE(oracle_holds(at, no_mediator, lim));

  // A second mediating loop breaks uniqueness.
  const Graph ctx2({"A", "B", "P"}, {{"idP", "P", "P"}, {"l", "P", "P"}, {"pa", "P", "A"}, {"pb", "P", "B"}});
  Sketch twice(ctx2, {cmp(ctx2, "idP", "pa", "pa"), cmp(ctx2, "idP", "pb", "pb"), cmp(ctx2, "l", "pa", "pa"), cmp(ctx2, "l", "pb", "pb")});
  auto at2 = GraphMorphism::from_names(lim.context(), ctx2, {{"x", "A"}, {"y", "B"}, {"apex", "P"}},
                                       {{"p_x", "pa"}, {"p_y", "pb"}});
  CHECK_FALSE(satisfies(at2, twice, lim).holds);
  CHECK_FALSE(oracle_holds(at2, twice, lim));
}

TEST_CASE("cone contexts") {
  const Graph I({"x", "y"}, {{"f", "x", "y"}});
  auto cc = cone_contexts(I);
  CHECK(cc.cone.node_count() == 3);
  CHECK(cc.cone.edge_count() == 3);
  CHECK(cc.two_cones.node_count() == 4);
  CHECK(cc.two_cones.edge_count() == 5);
  CHECK(cc.one_mediator.edge_count() == 6);
  CHECK(cc.two_mediators.edge_count() == 7);
  CHECK(is_inclusion(cc.cone_in_two));
  CHECK(is_epimorphism(cc.merge));
  CHECK(cc.merge.edge("m1") == "m");
  CHECK(cc.cone.has_edge("p_x"));
  CHECK(cc.cone.edges()[*cc.cone.edge_index("p_x")].source == "apex");
  auto co = cone_contexts(I, true);
  CHECK(co.cone.edges()[*co.cone.edge_index("p_x")].target == "apex");
  CHECK(co.one_mediator.edges()[*co.one_mediator.edge_index("m")].source == "apex");

  // Equaliser: psi'1 has one statement per shape edge and cone.
  const Graph pair({"x", "y"}, {{"f", "x", "y"}, {"g", "x", "y"}});
  auto eq = limit_condition(pair);
  const auto& exist = eq.children()[0];
  CHECK(exist.body().guard().children().size() == 4);
  CHECK(exist.body().body().children().size() == 2);
  const auto& unique = eq.children()[1];
  CHECK(unique.body().guard().children().size() == 8);

  CHECK_THROWS_AS(cone_contexts(Graph({"apex"}, {})), Error);
  CHECK_THROWS_AS(cone_contexts(Graph({"x"}, {{"p_x", "x", "x"}})), Error);
  CHECK_THROWS_AS(cone_contexts(Graph({"x"}, {{"m", "x", "x"}})), Error);
}

TEST_CASE("generated conditions are well formed for random shapes") {
  std::mt19937 rng(13);
  for (int i = 0; i < 40; ++i) {
    Graph I = random_graph(rng, 3, 3, "s");
    CHECK(well_formed(limit_condition(I)).empty());
    CHECK(well_formed(colimit_condition(I)).empty());
    CHECK(limit_condition(I).context() == cone_contexts(I).cone);
  }
}

TEST_CASE("unfolding replaces defined statements") {
  const auto& ct = ct_fixtures();
  // phi4 with final unfolded: the guard becomes phi8 over the point.
  const auto& guard = ct.phi4_unfolded.body().guard();
  CHECK(guard == translate_condition(identity(ct.final.arity), ct.phi8));
  CHECK(well_formed(ct.phi4_unfolded).empty());
  CHECK(ct.phi4_unfolded.context().empty());

  // A single statement unfolds to its definition moved along the binding.
  const Graph& arrow = ct.monic.arity;
  auto leaf = Condition::stmt(arrow, make_statement(ct.monic, arrow, {{"e", "e"}}));
  CHECK(unfold(leaf, {{"monic", ct.phi7}}) == translate_condition(identity(arrow), ct.phi7));
  CHECK(unfold(leaf, {}) == leaf);

  // phi5 with monic unfolded has no monic leaves left.
  auto u = unfold(ct.phi5, {{"monic", ct.phi7}});
  CHECK(well_formed(u).empty());
  std::function<bool(const Condition&)> mentions_monic = [&](const Condition& c) -> bool {
    switch (c.kind()) {
      case ConditionKind::Statement:
        return c.statement().predicate().name == "monic";
      case ConditionKind::And:
      case ConditionKind::Or:
        for (const auto& k : c.children())
          if (mentions_monic(k)) return true;
        return false;
      case ConditionKind::Not:
        return mentions_monic(c.child());
      case ConditionKind::Exists:
      case ConditionKind::Forall:
        return mentions_monic(c.guard()) || mentions_monic(c.body());
      default:
        return false;
    }
  };
  CHECK(mentions_monic(ct.phi5));
  CHECK_FALSE(mentions_monic(u));

  // Definitions over the wrong context are rejected.
  CHECK_THROWS_AS(unfold(leaf, {{"monic", ct.phi8}}), Error);
}

TEST_CASE("unfolded final-object condition evaluates like the oracle") {
  const auto& ct = ct_fixtures();
  for (const auto& s : fixture_sketches())
    CHECK(holds_globally(ct.phi4_unfolded, s.sketch) == oracle_holds(initial_morphism(s.sketch.context()), s.sketch, ct.phi4_unfolded));
}

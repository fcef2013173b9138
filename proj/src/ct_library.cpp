#include "gsketch/ct_library.hpp"

#include "gsketch/translation.hpp"

namespace gsketch {

namespace {

Graph graph(std::vector<std::string> nodes, std::vector<Edge> edges) {
  Graph g(std::move(nodes), std::move(edges));
  g.require_valid("fixture graph");
  return g;
}

GraphMorphism by_edges(const Graph& dom, const Graph& cod, const std::map<std::string, std::string>& edges,
                       const std::map<std::string, std::string>& nodes = {}) {
  return GraphMorphism::from_names(dom, cod, nodes, edges);
}

// v1 -e1-> v2 -e2-> v3, plus extra edges from v1 to v3.
Graph triangle(std::vector<std::string> diagonals) {
  std::vector<Edge> edges{{"e1", "v1", "v2"}, {"e2", "v2", "v3"}};
  for (auto& d : diagonals) edges.push_back({std::move(d), "v1", "v3"});
  return graph({"v1", "v2", "v3"}, std::move(edges));
}

}  // namespace

Statement make_statement(const PredicateSymbol& p, const Graph& context, const std::map<std::string, std::string>& edges,
                         const std::map<std::string, std::string>& nodes) {
  return Statement(p, GraphMorphism::from_names(p.arity, context, nodes, edges));
}

CTFixtures build_ct_fixtures() {
  const PredicateSymbol comp{"comp", triangle({"e3"})};
  const PredicateSymbol id{"id", graph({"v"}, {{"e", "v", "v"}})};
  const PredicateSymbol monic{"monic", graph({"v1", "v2"}, {{"e", "v1", "v2"}})};
  const PredicateSymbol final{"final", graph({"v"}, {})};
  Footprint fp({comp, id, monic, final});

  auto cmp = [&](const Graph& ctx, const std::string& x, const std::string& y, const std::string& z) {
    return make_statement(comp, ctx, {{"e1", x}, {"e2", y}, {"e3", z}});
  };
  auto mono = [&](const Graph& ctx, const std::string& x) { return make_statement(monic, ctx, {{"e", x}}); };

  // Running example.
  const Graph g = graph({"1", "2", "3", "4", "5"}, {{"a", "1", "2"},
                                                    {"b", "2", "3"},
                                                    {"c", "3", "4"},
                                                    {"d", "4", "5"},
                                                    {"e", "1", "3"},
                                                    {"f", "1", "3"},
                                                    {"g", "3", "5"}});
  Sketch G(g, {cmp(g, "a", "b", "e"), cmp(g, "a", "b", "f"), cmp(g, "c", "d", "g"), mono(g, "b"), mono(g, "g")});

  const Graph gp = graph({"1", "2", "3", "4", "5"},
                         {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "4"}, {"d", "4", "5"}, {"e", "1", "3"}, {"g", "3", "5"}});
  Sketch G_prime(gp, {cmp(gp, "a", "b", "e"), cmp(gp, "c", "d", "g"), mono(gp, "b"), mono(gp, "g")});

  const Graph h = graph({"1", "2", "3", "4", "5"},
                        {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "4"}, {"d", "4", "5"}, {"ef", "1", "3"}, {"g", "3", "5"}});
  Sketch H(h, {cmp(h, "a", "b", "ef"), cmp(h, "c", "d", "g"), mono(h, "b"), mono(h, "g"), mono(h, "c")});

  const Graph empty;
  const Graph path = triangle({});
  const Graph tri = comp.arity;

  // phi1, phi2: composition is defined.
  auto phi1 = unguarded_exists(inclusion(path, tri), Condition::stmt(tri, cmp(tri, "e1", "e2", "e3")));
  auto phi2 = unguarded_forall(initial_morphism(path), phi1);

  // phi3: composition is unique.
  const Graph l3 = triangle({"e3", "e4"});
  const Graph r3 = triangle({"e"});
  auto merge34 = by_edges(l3, r3, {{"e1", "e1"}, {"e2", "e2"}, {"e3", "e"}, {"e4", "e"}});
  auto phi3 = unguarded_forall(
      initial_morphism(l3),
      Condition::exists(conjunction_of(l3, {cmp(l3, "e1", "e2", "e3"), cmp(l3, "e1", "e2", "e4")}), merge34,
                        Condition::truth(r3)));

  // phi4: outgoing morphisms of a final object are monic.
  const Graph v = final.arity;
  const Graph v_out = graph({"v", "v1"}, {{"e", "v", "v1"}});
  auto phi4 = unguarded_forall(
      initial_morphism(v),
      Condition::forall(Condition::stmt(v, make_statement(final, v, {}, {{"v", "v"}})), inclusion(v, v_out),
                        Condition::stmt(v_out, make_statement(monic, v_out, {{"e", "e"}}))));

  // phi5, phi6: composition and decomposition of monomorphisms.
  auto phi5 = unguarded_forall(
      initial_morphism(tri),
      implication(conjunction_of(tri, {cmp(tri, "e1", "e2", "e3"), mono(tri, "e1"), mono(tri, "e2")}),
                  Condition::stmt(tri, mono(tri, "e3"))));
  auto phi6 = unguarded_forall(
      initial_morphism(tri),
      implication(conjunction_of(tri, {cmp(tri, "e1", "e2", "e3"), mono(tri, "e3")}), Condition::stmt(tri, mono(tri, "e1"))));

  // phi7: the universal property of a monomorphism.
  const Graph k7 = monic.arity;
  const Graph l7 = graph({"v1", "v2", "v3"}, {{"e", "v1", "v2"}, {"e1", "v3", "v1"}, {"e2", "v3", "v1"}, {"e3", "v3", "v2"}});
  const Graph r7 = graph({"v1", "v2", "v3"}, {{"e", "v1", "v2"}, {"e3", "v3", "v2"}, {"e4", "v3", "v1"}});
  auto merge12 = by_edges(l7, r7, {{"e", "e"}, {"e1", "e4"}, {"e2", "e4"}, {"e3", "e3"}});
  auto phi7 = unguarded_forall(
      inclusion(k7, l7),
      Condition::exists(conjunction_of(l7, {cmp(l7, "e1", "e", "e3"), cmp(l7, "e2", "e", "e3")}), merge12,
                        Condition::truth(r7)));

  // phi8: the universal property of a final object.
  const Graph v_v1 = graph({"v", "v1"}, {});
  const Graph v1_to_v = graph({"v", "v1"}, {{"e", "v1", "v"}});
  const Graph v1_two_v = graph({"v", "v1"}, {{"e1", "v1", "v"}, {"e2", "v1", "v"}});
  auto phi8 = Condition::conj(
      v, {unguarded_forall(inclusion(v, v_v1), unguarded_exists(inclusion(v_v1, v1_to_v), Condition::truth(v1_to_v))),
          unguarded_forall(inclusion(v, v1_two_v),
                           unguarded_exists(by_edges(v1_two_v, v1_to_v, {{"e1", "e"}, {"e2", "e"}}),
                                            Condition::truth(v1_to_v)))});

  auto t1 = by_edges(path, g, {{"e1", "a"}, {"e2", "b"}});
  auto t2 = by_edges(path, g, {{"e1", "b"}, {"e2", "c"}});
  auto loop_collapse = by_edges(k7, id.arity, {{"e", "e"}});

  auto phi4_unfolded = unfold(phi4, {{"final", phi8}});

  return CTFixtures{fp,
                    comp,
                    id,
                    monic,
                    final,
                    G,
                    G_prime,
                    H,
                    phi1,
                    phi2,
                    phi3,
                    phi4,
                    phi5,
                    phi6,
                    phi7,
                    phi8,
                    phi4_unfolded,
                    t1,
                    t2,
                    loop_collapse,
                    rule_from_condition(phi2, "phi2"),
                    rule_from_condition(phi3, "phi3"),
                    rule_from_condition(phi5, "phi5"),
                    rule_from_condition(phi6, "phi6")};
}

const CTFixtures& ct_fixtures() {
  static const CTFixtures fixtures = build_ct_fixtures();
  return fixtures;
}

std::vector<NamedSketch> fixture_sketches() {
  const auto& ct = ct_fixtures();
  std::vector<NamedSketch> out{{"G", ct.G}, {"G_prime", ct.G_prime}, {"H", ct.H}, {"empty", Sketch()}};

  const Graph loop = ct.id.arity;
  out.push_back({"monic_loop", Sketch(loop, {make_statement(ct.monic, loop, {{"e", "e"}})})});
  out.push_back({"identity_loop", Sketch(loop, {make_statement(ct.id, loop, {{"e", "e"}})})});

  const Graph tri = ct.comp.arity;
  out.push_back({"triangle", Sketch(tri, {make_statement(ct.comp, tri, {{"e1", "e1"}, {"e2", "e2"}, {"e3", "e3"}})})});

  const Graph arrow = ct.monic.arity;
  out.push_back({"arrow", Sketch(arrow, {})});
  out.push_back({"monic_arrow", Sketch(arrow, {make_statement(ct.monic, arrow, {{"e", "e"}})})});

  const Graph pair = graph({"x", "y"}, {{"p", "x", "y"}, {"q", "x", "y"}});
  out.push_back({"parallel_pair", Sketch(pair, {make_statement(ct.monic, pair, {{"e", "p"}})})});

  const Graph point = ct.final.arity;
  out.push_back({"final_point", Sketch(point, {make_statement(ct.final, point, {}, {{"v", "v"}})})});
  return out;
}

// ---------------------------------------------------------------- (co)limits

ConeContexts cone_contexts(const Graph& I, bool colimit) {
  I.require_valid("shape");
  auto reserved_node = [](const std::string& n) { return n == "apex" || n == "apex2"; };
  auto reserved_edge = [](const std::string& e) {
    return e == "m" || e == "m1" || e == "m2" || e.starts_with("p_") || e.starts_with("q_");
  };
  for (const auto& n : I.nodes())
    if (reserved_node(n)) throw Error(ErrorKind::Precondition, "shape node name '" + n + "' is reserved for cone apexes");
  for (const auto& e : I.edges())
    if (reserved_edge(e.name)) throw Error(ErrorKind::Precondition, "shape edge name '" + e.name + "' is reserved for cone edges");

  auto arrow = [&](std::string name, const std::string& apex, const std::string& x) {
    return colimit ? Edge{std::move(name), x, apex} : Edge{std::move(name), apex, x};
  };
  std::vector<std::string> nodes(I.nodes().begin(), I.nodes().end());
  std::vector<Edge> edges(I.edges().begin(), I.edges().end());

  nodes.push_back("apex");
  for (const auto& x : I.nodes()) edges.push_back(arrow("p_" + x, "apex", x));
  Graph cone(nodes, edges);

  nodes.push_back("apex2");
  for (const auto& x : I.nodes()) edges.push_back(arrow("q_" + x, "apex2", x));
  Graph two(nodes, edges);

  auto mediator = [&](std::string name) { return colimit ? Edge{std::move(name), "apex", "apex2"} : Edge{std::move(name), "apex2", "apex"}; };
  auto one_edges = edges;
  one_edges.push_back(mediator("m"));
  Graph one(nodes, one_edges);
  auto two_edges = edges;
  two_edges.push_back(mediator("m1"));
  two_edges.push_back(mediator("m2"));
  Graph twom(nodes, two_edges);

  std::map<std::string, std::string> merge_edges;
  for (const auto& e : two.edges()) merge_edges[e.name] = e.name;
  merge_edges["m1"] = "m";
  merge_edges["m2"] = "m";
  std::map<std::string, std::string> merge_nodes;
  for (const auto& n : two.nodes()) merge_nodes[n] = n;

  return ConeContexts{I,
                      cone,
                      two,
                      one,
                      twom,
                      inclusion(cone, two),
                      inclusion(two, one),
                      inclusion(cone, twom),
                      GraphMorphism::from_names(twom, one, merge_nodes, merge_edges),
                      colimit};
}

namespace {

Condition universal_property(const Graph& I, bool colimit) {
  const auto& comp = ct_fixtures().comp;
  auto cc = cone_contexts(I, colimit);
  auto cmp = [&](const Graph& ctx, const std::string& x, const std::string& y, const std::string& z) {
    return make_statement(comp, ctx, {{"e1", x}, {"e2", y}, {"e3", z}});
  };
  // Empty conjunctions are written as `true`.
  auto conj = [](const Graph& ctx, const std::vector<Statement>& ss) {
    return ss.empty() ? Condition::truth(ctx) : conjunction_of(ctx, ss);
  };
  auto cone_commutes = [&](const Graph& ctx, const std::string& prefix) {
    std::vector<Statement> out;
    for (const auto& y : I.edges()) {
      if (colimit)
        out.push_back(cmp(ctx, y.name, prefix + y.target, prefix + y.source));
      else
        out.push_back(cmp(ctx, prefix + y.source, y.name, prefix + y.target));
    }
    return out;
  };
  auto mediates = [&](const Graph& ctx, const std::string& m) {
    std::vector<Statement> out;
    for (const auto& x : I.nodes()) {
      if (colimit)
        out.push_back(cmp(ctx, "p_" + x, m, "q_" + x));
      else
        out.push_back(cmp(ctx, m, "p_" + x, "q_" + x));
    }
    return out;
  };

  auto psi1 = cone_commutes(cc.two_cones, "p_");
  for (auto& s : cone_commutes(cc.two_cones, "q_")) psi1.push_back(s);
  auto psi2 = mediates(cc.one_mediator, "m");
  auto psi3 = cone_commutes(cc.two_mediators, "p_");
  for (auto& s : cone_commutes(cc.two_mediators, "q_")) psi3.push_back(s);
  for (auto& s : mediates(cc.two_mediators, "m1")) psi3.push_back(s);
  for (auto& s : mediates(cc.two_mediators, "m2")) psi3.push_back(s);

  auto exist = unguarded_forall(
      cc.cone_in_two, Condition::exists(conj(cc.two_cones, psi1), cc.two_in_one_mediator, conj(cc.one_mediator, psi2)));
  auto unique = unguarded_forall(cc.cone_in_two_mediators,
                                 Condition::exists(conj(cc.two_mediators, psi3), cc.merge, Condition::truth(cc.one_mediator)));
  return Condition::conj(cc.cone, {exist, unique});
}

}  // namespace

Condition limit_condition(const Graph& I) { return universal_property(I, false); }
Condition colimit_condition(const Graph& I) { return universal_property(I, true); }

// ---------------------------------------------------------------- unfolding

Condition unfold(const Condition& cond, const std::map<std::string, Condition>& definitions) {
  const Graph& ctx = cond.context();
  switch (cond.kind()) {
    case ConditionKind::Statement: {
      const auto& s = cond.statement();
      auto it = definitions.find(s.predicate().name);
      if (it == definitions.end()) return cond;
      if (!(it->second.context() == s.predicate().arity))
        throw Error(ErrorKind::DomainMismatch, "definition of '" + s.predicate().name + "' is not over its arity");
      return translate_condition(s.binding(), it->second);
    }
    case ConditionKind::True:
    case ConditionKind::False:
      return cond;
    case ConditionKind::And:
    case ConditionKind::Or: {
      std::vector<Condition> kids;
      for (const auto& child : cond.children()) kids.push_back(unfold(child, definitions));
      return cond.kind() == ConditionKind::And ? Condition::conj(ctx, std::move(kids)) : Condition::disj(ctx, std::move(kids));
    }
    case ConditionKind::Not:
      return Condition::negation(unfold(cond.child(), definitions));
    case ConditionKind::Exists:
    case ConditionKind::Forall: {
      auto guard = unfold(cond.guard(), definitions);
      auto body = unfold(cond.body(), definitions);
      return cond.kind() == ConditionKind::Exists ? Condition::exists(ctx, guard, cond.shift(), body)
                                                  : Condition::forall(ctx, guard, cond.shift(), body);
    }
  }
  throw Error(ErrorKind::Internal, "unknown condition kind");
}

}  // namespace gsketch

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "deduction_walk.hpp"
#include "gsketch/cli.hpp"
#include "gsketch/dsl.hpp"
#include "gsketch/translation.hpp"
#include "support.hpp"

using namespace gsketch;
using namespace gsketch::testing;

namespace {

const std::string kFixtures = GSKETCH_FIXTURES;

bool preserves(const GraphMorphism& phi, const Sketch& from, const Sketch& to) {
  for (const auto& s : from.statements())
    if (!has_statement(to, translate_statement(phi, s))) return false;
  return true;
}

bool criterion_running_example() {
  const auto& ct = ct_fixtures();
  auto v1 = satisfies(ct.t1, ct.G, ct.phi1);
  bool ok = v1.holds && v1.extension && v1.extension->edge("e3") == "e";
  ok = ok && !satisfies(ct.t2, ct.G, ct.phi1).holds;
  ok = ok && !holds_globally(ct.phi2, ct.G) && !holds_globally(ct.phi3, ct.G) && holds_globally(ct.phi4, ct.G) &&
       holds_globally(ct.phi5, ct.G) && !holds_globally(ct.phi6, ct.G);
  auto six = counterexamples(initial_morphism(ct.G.context()), ct.G, ct.phi6);
  ok = ok && six.size() == 1 && six[0].edge("e1") == "c" && six[0].edge("e2") == "d" && six[0].edge("e3") == "g";
  ok = ok && counterexamples(initial_morphism(ct.G.context()), ct.G, ct.phi3).size() == 2;
  // Engine verdicts match the oracle.
  for (const auto* c : {&ct.phi2, &ct.phi3, &ct.phi4, &ct.phi5, &ct.phi6})
    ok = ok && holds_globally(*c, ct.G) == oracle_holds(initial_morphism(ct.G.context()), ct.G, *c);
  ok = ok && oracle_holds(ct.t1, ct.G, ct.phi1) && !oracle_holds(ct.t2, ct.G, ct.phi1);
  return ok;
}

bool criterion_g_prime() {
  const auto& ct = ct_fixtures();
  return holds_globally(ct.phi3, ct.G_prime) && oracle_holds(initial_morphism(ct.G_prime.context()), ct.G_prime, ct.phi3) &&
         ct.G_prime.context().edge_count() == 6;
}

bool criterion_repair() {
  const auto& ct = ct_fixtures();
  auto out = repair_to_fixpoint({ct.rule3, ct.rule6}, ct.G, 100);
  if (out.exhausted || out.trace.size() != 2) return false;
  auto track = compose(out.trace[0].application.tracking, out.trace[1].application.tracking);
  return sketches_isomorphic(out.result, ct.H) && holds_globally(ct.phi3, out.result) &&
         holds_globally(ct.phi6, out.result) && !holds_globally(ct.phi2, out.result) &&
         is_sketch_morphism(track, ct.G, out.result);
}

bool criterion_conjunction() {
  auto all = fixture_sketches();
  std::size_t checked = 0;
  for (const auto& k : all)
    for (const auto& g : all) {
      Condition c = conjunction_of(k.sketch.context(), k.sketch.statements());
      for (const auto& phi : enumerate_morphisms(k.sketch.context(), g.sketch.context())) {
        bool direct = preserves(phi, k.sketch, g.sketch);
        if (is_sketch_morphism(phi, k.sketch, g.sketch) != direct) return false;
        if (satisfies(phi, g.sketch, c).holds != direct) return false;
        ++checked;
      }
    }
  std::cerr << "  conjunction: " << checked << " morphisms\n";
  return checked > 100;
}

bool criterion_shift() {
  const auto& ct = ct_fixtures();
  const Graph& path = ct.phi1.context();
  const Graph& arrow = ct.monic.arity;
  const Graph& point = ct.final.arity;
  const Graph two_loops({"v"}, {{"e", "v", "v"}, {"f", "v", "v"}});
  std::vector<std::pair<Condition, GraphMorphism>> cases{
      {ct.phi7, ct.loop_collapse},
      {ct.phi1, ct.t1},
      {ct.phi1, ct.t2},
      {ct.phi1, inclusion(path, ct.comp.arity)},
      {ct.phi1, GraphMorphism::from_names(path, two_loops, {}, {{"e1", "e"}, {"e2", "f"}})},
      {ct.phi7, GraphMorphism::from_names(arrow, ct.G.context(), {}, {{"e", "b"}})},
      {ct.phi8, GraphMorphism::from_names(point, arrow, {{"v", "v1"}}, {})},
      {ct.phi3, initial_morphism(arrow)},
      {ct.phi6, initial_morphism(ct.id.arity)},
  };
  std::vector<Sketch> samples;
  for (const auto& s : fixture_sketches())
    if (s.sketch.context().node_count() <= 5) samples.push_back(s.sketch);
  for (const auto& [cond, c] : cases) {
    if (!shift_equivalence_oracle(c, cond, samples)) return false;
    auto moved = translate_condition(c, cond);
    for (const auto& s : samples)
      for (const auto& t : brute_force_morphisms(c.cod(), s.context())) {
        bool lhs = oracle_holds(t, s, moved);
        if (lhs != oracle_holds(compose(c, t), s, cond)) return false;
        if (satisfies(t, s, moved).holds != lhs) return false;
      }
  }
  return true;
}

bool direct_uc(const SketchMorphism& a, const Sketch& G, bool negative) {
  for (const auto& t : brute_force_morphisms(a.dom.context(), G.context())) {
    if (!preserves(t, a.dom, G)) continue;
    bool found = false;
    for (const auto& r : brute_force_extensions(a.map, t)) found = found || preserves(r, a.cod, G);
    if (found == negative) return false;
  }
  return true;
}

bool criterion_universal_constraints() {
  const auto& ct = ct_fixtures();
  const Graph& arrow = ct.monic.arity;
  std::vector<Rule> rules{ct.rule2, ct.rule3, ct.rule5, ct.rule6,
                          Rule::from_sketch_morphism(SketchMorphism::make(Sketch(arrow, {}),
                                                                          Sketch(arrow, {make_statement(ct.monic, arrow, {{"e", "e"}})}),
                                                                          identity(arrow)),
                                                     "all_monic")};
  for (const auto& rule : rules) {
    auto a = rule.as_sketch_morphism();
    for (const auto& s : fixture_sketches()) {
      auto root = initial_morphism(s.sketch.context());
      if (satisfies(root, s.sketch, uc(a)).holds != direct_uc(a, s.sketch, false)) return false;
      if (satisfies(root, s.sketch, nuc(a)).holds != direct_uc(a, s.sketch, true)) return false;
    }
  }
  return true;
}

std::size_t class_count(std::size_t b_size, std::size_t a_size, const std::vector<std::pair<std::size_t, std::size_t>>& glue) {
  std::vector<std::size_t> parent(b_size + a_size);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [b, a] : glue) parent[find(b)] = find(b_size + a);
  std::size_t n = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) n += find(i) == i;
  return n;
}

bool criterion_universal_properties() {
  const std::vector<Graph> objects{Graph(), Graph({"p"}, {}), Graph({"p"}, {{"l", "p", "p"}}),
                                   Graph({"p", "q"}, {{"x", "p", "q"}}),
                                   Graph({"p", "q"}, {{"x", "p", "q"}, {"y", "p", "q"}, {"z", "q", "q"}})};
  std::mt19937 rng(5);
  int pushouts = 0, pullbacks = 0;
  for (int round = 0; round < 400 && (pushouts < 40 || pullbacks < 40); ++round) {
    Graph c = random_graph(rng, 2, 2, "c"), b = random_graph(rng, 3, 3, "b"), a = random_graph(rng, 3, 3, "a");
    auto ms = enumerate_morphisms(c, b), rs = enumerate_morphisms(c, a);
    if (!ms.empty() && !rs.empty() && pushouts < 40) {
      const auto& m = ms[rng() % ms.size()];
      const auto& r = rs[rng() % rs.size()];
      auto po = pushout(m, r);
      if (!(compose(m, po.left) == compose(r, po.right)) || !verify_pushout(m, r, po)) return false;
      std::vector<std::pair<std::size_t, std::size_t>> ng, eg;
      for (std::size_t x = 0; x < c.node_count(); ++x) ng.emplace_back(m.node(x), r.node(x));
      for (std::size_t x = 0; x < c.edge_count(); ++x) eg.emplace_back(m.edge(x), r.edge(x));
      if (po.object.node_count() != class_count(b.node_count(), a.node_count(), ng)) return false;
      if (po.object.edge_count() != class_count(b.edge_count(), a.edge_count(), eg)) return false;
      for (const auto& x : objects)
        for (const auto& f : brute_force_morphisms(b, x))
          for (const auto& g : brute_force_morphisms(a, x)) {
            if (!(compose(m, f) == compose(r, g))) continue;
            int count = 0;
            for (const auto& u : brute_force_morphisms(po.object, x)) count += compose(po.left, u) == f && compose(po.right, u) == g;
            if (count != 1) return false;
          }
      ++pushouts;
    }
    auto ms2 = enumerate_morphisms(b, c), rs2 = enumerate_morphisms(a, c);
    if (!ms2.empty() && !rs2.empty() && pullbacks < 40) {
      const auto& m = ms2[rng() % ms2.size()];
      const auto& r = rs2[rng() % rs2.size()];
      auto pb = pullback(m, r);
      if (!(compose(pb.left, m) == compose(pb.right, r)) || !verify_pullback(m, r, pb)) return false;
      for (const auto& x : objects)
        for (const auto& f : brute_force_morphisms(x, b))
          for (const auto& g : brute_force_morphisms(x, a)) {
            if (!(compose(f, m) == compose(g, r))) continue;
            int count = 0;
            for (const auto& u : brute_force_morphisms(x, pb.object)) count += compose(u, pb.left) == f && compose(u, pb.right) == g;
            if (count != 1) return false;
          }
      ++pullbacks;
    }
  }
  if (pushouts < 40 || pullbacks < 40) return false;

  // Sketch pushout: statements come from one side, mediators are sketch morphisms.
  const auto& ct = ct_fixtures();
  const Graph& arrow = ct.monic.arity;
  Sketch bare(arrow, {});
  Sketch ma(arrow, {make_statement(ct.monic, arrow, {{"e", "e"}})});
  auto m = SketchMorphism::make(bare, ct.G, GraphMorphism::from_names(arrow, ct.G.context(), {}, {{"e", "c"}}));
  auto r = SketchMorphism::make(bare, ma, identity(arrow));
  auto po = sketch_pushout(m, r);
  if (po.object.statements().size() != 6 || !is_sketch_morphism(po.left.map, ct.G, po.object) ||
      !is_sketch_morphism(po.right.map, ma, po.object))
    return false;
  for (const auto& x : fixture_sketches())
    for (const auto& f : enumerate_morphisms(ct.G.context(), x.sketch.context())) {
      if (!is_sketch_morphism(f, ct.G, x.sketch)) continue;
      for (const auto& g : enumerate_morphisms(arrow, x.sketch.context())) {
        if (!is_sketch_morphism(g, ma, x.sketch) || !(compose(m.map, f) == compose(r.map, g))) continue;
        auto us = mediators_from(po.object.context(), x.sketch.context(), {{po.left.map, f}, {po.right.map, g}});
        if (us.size() != 1 || !is_sketch_morphism(us.front(), po.object, x.sketch)) return false;
      }
    }

  // Sketch pullback maximality over a cospan into a loop carrying every statement.
  const Graph& loop = ct.id.arity;
  std::vector<Statement> all_loop;
  for (const auto& p : ct.footprint.predicates())
    for (const auto& alpha : enumerate_morphisms(p.arity, loop)) all_loop.emplace_back(p, alpha);
  Sketch c(loop, all_loop);
  auto to_loop = [&](const Sketch& s) { return SketchMorphism::make(s, c, enumerate_morphisms(s.context(), loop).front()); };
  for (const auto& [b, a] : std::vector<std::pair<Sketch, Sketch>>{{ct.G, ct.H}, {ct.G_prime, ct.G}}) {
    auto pb = sketch_pullback(to_loop(b), to_loop(a));
    if (!is_sketch_morphism(pb.left.map, pb.object, b) || !is_sketch_morphism(pb.right.map, pb.object, a)) return false;
    for (const auto& p : ct.footprint.predicates())
      for (const auto& alpha : brute_force_morphisms(p.arity, pb.object.context())) {
        Statement s(p, alpha);
        bool both = has_statement(b, translate_statement(pb.left.map, s)) && has_statement(a, translate_statement(pb.right.map, s));
        if (pb.object.contains(s) != both) return false;
      }
  }

  // Multi sketches keep identifiers apart unless glued.
  const Graph& g = ct.G.context();
  MultiSketch one{arrow, {{"s", make_statement(ct.monic, arrow, {{"e", "e"}})}}};
  MultiSketch none{arrow, {}};
  MultiSketch big{g, {{"mb", make_statement(ct.monic, g, {{"e", "b"}})}}};
  auto to_b = GraphMorphism::from_names(arrow, g, {}, {{"e", "b"}});
  auto mb = MultiSketchMorphism::make(one, big, to_b, {{"s", "mb"}});
  auto glued = multi_pushout(MultiSketchMorphism::make(one, one, identity(arrow), {{"s", "s"}}), mb);
  auto apart = multi_pushout(MultiSketchMorphism::make(none, one, identity(arrow), {}), MultiSketchMorphism::make(none, big, to_b, {}));
  auto mpb = multi_pullback(mb, mb);
  return glued.object.statements.size() == 1 && apart.object.statements.size() == 2 &&
         mpb.object.statements.count("s|s") == 1;
}

bool criterion_final_object() {
  const auto& ct = ct_fixtures();
  auto lim = limit_condition(Graph());
  if (!well_formed(lim).empty() || !equivalent_modulo_renaming(lim, ct.phi8)) return false;
  auto iso = find_isomorphism(lim.context(), ct.phi8.context());
  if (!iso) return false;
  auto moved = translate_condition(*iso, lim);
  for (const auto& s : fixture_sketches())
    for (const auto& t : enumerate_morphisms(ct.phi8.context(), s.sketch.context()))
      if (satisfies(t, s.sketch, moved).holds != oracle_holds(t, s.sketch, ct.phi8)) return false;
  return true;
}

bool criterion_deduction() {
  std::mt19937 rng(7);
  WalkReport report;
  for (int i = 0; i < 200; ++i) random_deduction_walk(rng, 8, report, i);
  for (const auto& v : report.violations) std::cerr << "  " << v << "\n";
  std::cerr << "  walks: " << report.steps << " steps, " << report.derived << " derived\n";
  return report.violations.empty() && report.derived > 200;
}

bool criterion_dsl_and_cli() {
  Document doc = parse_file(kFixtures + "/ct.sketch");
  std::string printed = print_document(doc);
  Document again = parse_document(printed);
  if (!(again == doc) || print_document(again) != printed) return false;
  const auto& ct = ct_fixtures();
  if (!(doc.sketch("G") == ct.G) || !equivalent_modulo_renaming(doc.condition("phi6"), ct.phi6)) return false;

  const std::string corpus = kFixtures + "/ct.sketch";
  const std::vector<std::pair<std::vector<std::string>, int>> runs{
      {{"check", corpus, "--sketch", "G", "--constraint", "phi5_global"}, kExitOk},
      {{"check", corpus, "--sketch", "G", "--constraint", "phi6_global", "--json"}, kExitFails},
      {{"check", corpus, kFixtures + "/g_prime.sketch", "--sketch", "Gp", "--constraint", "phi3_global"}, kExitOk},
      {{"check", kFixtures + "/dangling.sketch", "--all"}, kExitInput},
      {{"check", corpus, "--sketch", "G", "--constraint", "no_such_constraint"}, kExitInput},
      {{"repair", corpus, "--sketch", "G", "--rules", "phi3,phi6"}, kExitOk},
      {{"repair", corpus, "--sketch", "G", "--rules", "phi2", "--max-steps", "5"}, kExitExhausted},
      {{"translate", corpus, "--condition", "phi7", "--along", "collapse"}, kExitOk},
      {{"deduce", corpus, "--script", kFixtures + "/example.deduce"}, kExitOk},
  };
  for (const auto& [args, expected] : runs) {
    std::ostringstream out, err;
    if (run_cli(args, out, err) != expected) return false;
  }
  return true;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool()>>> criteria{
      {"running example verdicts, witnesses and counterexamples", criterion_running_example},
      {"G' satisfies the no-parallel-composites condition", criterion_g_prime},
      {"repair of G reaches H in two steps", criterion_repair},
      {"sketch morphisms are exactly conjunction satisfaction", criterion_conjunction},
      {"condition translation satisfies the shift property", criterion_shift},
      {"universal constraints match their definitions", criterion_universal_constraints},
      {"pushouts and pullbacks have their universal properties", criterion_universal_properties},
      {"limit of the empty shape is the final-object condition", criterion_final_object},
      {"random deduction sequences stay sound", criterion_deduction},
      {"DSL corpus round-trips and CLI exit codes", criterion_dsl_and_cli},
  };
  int failed = 0;
  auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    bool ok = false;
    try {
      ok = criteria[i].second();
    } catch (const std::exception& e) {
      std::cerr << "  exception: " << e.what() << "\n";
    }
    failed += !ok;
    std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << " - " << criteria[i].first << "\n";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failed ? "FAILED" : "all criteria passed") << " in " << ms << " ms\n";
  return failed ? 1 : 0;
}

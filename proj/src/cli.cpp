#include "gsketch/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "gsketch/dsl.hpp"
#include "gsketch/translation.hpp"

namespace gsketch {

namespace {

using nlohmann::ordered_json;

// Reported as exit code 1 rather than 2.
struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Document load(const std::vector<std::string>& files) {
  Document doc;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Resolution, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    parse_into(doc, ss.str(), path);
  }
  return doc;
}

ordered_json morphism_json(const GraphMorphism& m) {
  ordered_json nodes = ordered_json::object(), edges = ordered_json::object();
  for (const auto& [k, v] : m.node_names()) nodes[k] = v;
  for (const auto& [k, v] : m.edge_names()) edges[k] = v;
  return {{"nodes", nodes}, {"edges", edges}};
}

// The sketch a constraint is checked on: the named one, or the only sketch
// whose context fits the anchor.
std::string pick_sketch(const Document& doc, const std::string& requested, const ConstraintDecl* decl) {
  if (!requested.empty()) {
    doc.sketch(requested);
    return requested;
  }
  std::vector<std::string> fits;
  for (const auto& [n, s] : doc.sketches())
    if (!decl || !decl->anchor || doc.morphism(*decl->anchor).cod() == s.sketch.context()) fits.push_back(n);
  if (fits.size() == 1) return fits.front();
  if (fits.empty()) throw Error(ErrorKind::Resolution, "no sketch fits; pass --sketch");
  std::string names;
  for (const auto& n : fits) names += " " + n;
  throw Error(ErrorKind::Resolution, "several sketches fit (" + names.substr(1) + "); pass --sketch");
}

// Removes leading pushout tags ("L:", "R:") from element names. Elements
// carried over from the repaired sketch keep their old names; a clashing new
// element gets primes appended.
struct Tidied {
  Sketch sketch;
  GraphMorphism iso;
};

Tidied strip_tags(const Sketch& s) {
  auto strip = [](std::string n) {
    while (n.size() > 2 && (n.starts_with("L:") || n.starts_with("R:"))) n = n.substr(2);
    return n;
  };
  auto assign = [&](const std::vector<std::string>& names) {
    std::vector<std::string> order = names;
    std::stable_partition(order.begin(), order.end(), [](const std::string& n) { return n.starts_with("L:"); });
    std::map<std::string, std::string> out;
    std::set<std::string> used;
    for (const auto& n : order) {
      std::string m = strip(n);
      while (used.count(m)) m += "'";
      used.insert(m);
      out[n] = m;
    }
    return out;
  };
  const Graph& g = s.context();
  std::vector<std::string> node_names(g.nodes().begin(), g.nodes().end()), edge_names;
  for (const auto& e : g.edges()) edge_names.push_back(e.name);
  auto nodes = assign(node_names);
  auto edges = assign(edge_names);
  Graph renamed = rename(
      g, [&](const std::string& n) { return nodes.at(n); }, [&](const std::string& e) { return edges.at(e); });
  auto iso = GraphMorphism::from_names(g, renamed, nodes, edges);
  std::vector<Statement> statements;
  for (const auto& st : s.statements()) statements.push_back(translate_statement(iso, st));
  return {Sketch(renamed, std::move(statements)), iso};
}

// A document holding `fp` (and the graphs its arities refer to), plus one
// sketch with its context graph.
Document sketch_document(const Document& source, const std::string& footprint, const std::string& name,
                         const Sketch& sketch) {
  Document doc;
  const auto& fp = source.footprint(footprint);
  for (const auto& [pred, graph] : fp.arity_refs)
    if (!doc.has(DeclKind::Graph, graph)) doc.add_graph(graph, source.graph(graph));
  doc.add_footprint(footprint, fp);
  std::string ctx = name + "_ctx";
  doc.add_graph(ctx, sketch.context());
  doc.add_sketch(name, SketchDecl{footprint, ctx, sketch});
  return doc;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::vector<std::string> files;
  std::vector<std::string> constraints;
  bool all = false;
  bool json = false;
  std::string sketch;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  auto doc = load(a.files);
  std::vector<std::string> names = a.constraints;
  if (a.all)
    for (const auto& e : doc.entries())
      if (e.kind == DeclKind::Constraint) names.push_back(e.name);
  if (names.empty()) throw Error(ErrorKind::Precondition, "nothing to check; pass --constraint NAME or --all");

  bool all_hold = true;
  ordered_json report = ordered_json::array();
  for (const auto& n : names) {
    if (!doc.has(DeclKind::Constraint, n)) throw Error(ErrorKind::Resolution, "no constraint named '" + n + "'");
    const auto& decl = doc.constraints().at(n);
    auto sketch_name = pick_sketch(doc, a.sketch, &decl);
    const Sketch& G = doc.sketch(sketch_name);
    auto k = doc.constraint(n, G);
    auto verdict = check_constraint(G, k);
    all_hold = all_hold && verdict.holds;

    std::vector<GraphMorphism> violations;
    if (!verdict.holds && k.condition.kind() == ConditionKind::Forall)
      violations = counterexamples(k.anchor, G, k.condition);
    else if (!verdict.holds && verdict.extension)
      violations.push_back(*verdict.extension);

    if (a.json) {
      ordered_json v{{"constraint", n}, {"sketch", sketch_name}, {"holds", verdict.holds}, {"anchor", morphism_json(k.anchor)}};
      if (verdict.holds && verdict.extension) v["witness"] = morphism_json(*verdict.extension);
      if (!violations.empty()) v["counterexample"] = morphism_json(violations.front());
      report.push_back(v);
      continue;
    }
    out << n << " on " << sketch_name << ": " << (verdict.holds ? "holds" : "fails") << "\n";
    if (verdict.holds && verdict.extension) out << "  witness " << print_morphism_entries(*verdict.extension) << "\n";
    for (std::size_t i = 0; i < violations.size(); ++i)
      out << "  counterexample " << i + 1 << " " << print_morphism_entries(violations[i]) << "\n";
  }
  if (a.json) out << report.dump(2) << "\n";
  return all_hold ? kExitOk : kExitFails;
}

// ---------------------------------------------------------------- repair

struct RepairArgs {
  std::vector<std::string> files;
  std::vector<std::string> rules;
  std::size_t max_steps = 100;
  std::string out_path;
  std::string sketch;
  std::string name;
};

int cmd_repair(const RepairArgs& a, std::ostream& out) {
  auto doc = load(a.files);
  auto sketch_name = pick_sketch(doc, a.sketch, nullptr);
  std::vector<Rule> rules;
  for (const auto& r : a.rules) rules.push_back(doc.rule(r));

  Sketch current = doc.sketch(sketch_name);
  std::size_t steps = 0;
  bool exhausted = false;
  while (true) {
    auto step = repair_to_fixpoint(rules, current, 1);
    if (step.trace.empty()) break;
    if (steps == a.max_steps) {
      exhausted = true;
      break;
    }
    const auto& s = step.trace.front();
    out << "step " << ++steps << ": " << s.rule << " at " << print_morphism_entries(s.match) << "\n";
    current = strip_tags(step.result).sketch;
  }
  if (exhausted)
    out << "step bound " << a.max_steps << " reached with matches remaining\n";
  else
    out << "fixpoint after " << steps << " step" << (steps == 1 ? "" : "s") << "\n";

  auto result = sketch_document(doc, doc.sketches().at(sketch_name).footprint,
                                a.name.empty() ? sketch_name + "_repaired" : a.name, current);
  auto text = print_document(result);
  if (a.out_path.empty()) {
    out << "\n" << text;
  } else {
    std::ofstream file(a.out_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Resolution, "cannot write '" + a.out_path + "'");
    file << text;
  }
  return exhausted ? kExitExhausted : kExitOk;
}

// ---------------------------------------------------------------- translate

struct TranslateArgs {
  std::vector<std::string> files;
  std::string condition;
  std::string along;
  std::string name;
};

int cmd_translate(const TranslateArgs& a, std::ostream& out) {
  auto doc = load(a.files);
  const auto& mdecl = doc.morphisms().at([&] {
    doc.morphism(a.along);
    return a.along;
  }());
  auto translated = translate_condition(mdecl.morphism, doc.condition(a.condition));
  Document result;
  result.add_condition(a.name.empty() ? a.condition + "_along_" + a.along : a.name, ConditionDecl{mdecl.cod, translated});
  out << print_document(result);
  return kExitOk;
}

// ---------------------------------------------------------------- pushout / pullback

struct ConstructArgs {
  std::vector<std::string> files;
  std::vector<std::string> legs;
  std::vector<std::string> sketches;
  std::string name;
};

int cmd_construct(const ConstructArgs& a, bool is_pushout, std::ostream& out) {
  auto doc = load(a.files);
  if (a.legs.size() != 2) throw Error(ErrorKind::Precondition, "expected two morphism names");
  if (!a.sketches.empty() && a.sketches.size() != 3) throw Error(ErrorKind::Precondition, "expected three sketch names");
  const auto& m = doc.morphism(a.legs[0]);
  const auto& r = doc.morphism(a.legs[1]);
  const std::string name = a.name.empty() ? (is_pushout ? "pushout" : "pullback") : a.name;

  Document result;
  std::string ctx = name + "_ctx";
  Graph object;
  GraphMorphism left = identity(Graph()), right = identity(Graph());
  if (a.sketches.empty()) {
    if (is_pushout) {
      auto po = pushout(m, r);
      object = po.object, left = po.left, right = po.right;
    } else {
      auto pb = pullback(m, r);
      object = pb.object, left = pb.left, right = pb.right;
    }
    result.add_graph(ctx, object);
  } else {
    const Sketch& shared = doc.sketch(a.sketches[0]);
    const Sketch& B = doc.sketch(a.sketches[1]);
    const Sketch& A = doc.sketch(a.sketches[2]);
    Sketch obj;
    if (is_pushout) {
      auto po = sketch_pushout(SketchMorphism::make(shared, B, m), SketchMorphism::make(shared, A, r));
      obj = po.object, left = po.left.map, right = po.right.map;
    } else {
      auto pb = sketch_pullback(SketchMorphism::make(B, shared, m), SketchMorphism::make(A, shared, r));
      obj = pb.object, left = pb.left.map, right = pb.right.map;
    }
    object = obj.context();
    result = sketch_document(doc, doc.sketches().at(a.sketches[1]).footprint, name, obj);
  }
  // Legs, when the outer graphs are named.
  auto graph_name = [&](const Graph& g, const std::string& preferred) -> std::optional<std::string> {
    if (doc.has(DeclKind::Graph, preferred) && doc.graph(preferred) == g) return preferred;
    return std::nullopt;
  };
  const auto& md = doc.morphisms().at(a.legs[0]);
  const auto& rd = doc.morphisms().at(a.legs[1]);
  auto b_name = graph_name(is_pushout ? m.cod() : m.dom(), is_pushout ? md.cod : md.dom);
  auto a_name = graph_name(is_pushout ? r.cod() : r.dom(), is_pushout ? rd.cod : rd.dom);
  for (auto [leg, outer, label] : {std::tuple{left, b_name, "left"}, std::tuple{right, a_name, "right"}}) {
    if (!outer) continue;
    if (!result.has(DeclKind::Graph, *outer)) result.add_graph(*outer, doc.graph(*outer));
    if (is_pushout)
      result.add_morphism(name + "_" + label, MorphismDecl{*outer, ctx, leg});
    else
      result.add_morphism(name + "_" + label, MorphismDecl{ctx, *outer, leg});
  }
  out << print_document(result);
  return kExitOk;
}

// ---------------------------------------------------------------- deduce

struct Entry {
  std::string name;
  Constraint constraint;
  bool certified;
};

class Deduction {
 public:
  explicit Deduction(const Document& doc) : doc_(doc) {}

  void run(std::istream& script) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(script, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream words(line);
      std::vector<std::string> w;
      for (std::string s; words >> s;) w.push_back(s);
      if (w.empty()) continue;
      try {
        step(w, line);
      } catch (const Failed& e) {
        throw Failed("script line " + std::to_string(lineno) + ": " + e.what());
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotCertified) throw Failed("script line " + std::to_string(lineno) + ": " + e.what());
        throw Error(e.kind(), "script line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }

  void dump(std::ostream& out) const {
    if (!sketch_name_) throw Error(ErrorKind::Precondition, "script never selected a sketch with 'use'");
    std::string certified, assumed;
    for (const auto& e : entries_) (e.certified ? certified : assumed) += " " + e.name;
    out << "# certified:" << certified << "\n# assumed:" << assumed << "\n";
    if (!demoted_.empty()) {
      out << "# no longer certified after a sketch change:";
      for (const auto& n : demoted_) out << " " << n;
      out << "\n";
    }
    out << "\n";
    auto doc = sketch_document(doc_, doc_.sketches().at(*sketch_name_).footprint, current_name_, sketch_);
    const std::string ctx = current_name_ + "_ctx";
    for (const auto& e : entries_) {
      const auto& k = e.constraint;
      if (k.anchor.dom().empty()) {
        doc.add_condition(e.name + "_cond", ConditionDecl{std::nullopt, k.condition});
        doc.add_constraint(e.name, ConstraintDecl{e.name + "_cond", std::nullopt});
        continue;
      }
      const std::string dom = e.name + "_ctx";
      doc.add_graph(dom, k.anchor.dom());
      doc.add_condition(e.name + "_cond", ConditionDecl{dom, k.condition});
      doc.add_morphism(e.name + "_anchor", MorphismDecl{dom, ctx, k.anchor});
      doc.add_constraint(e.name, ConstraintDecl{e.name + "_cond", e.name + "_anchor"});
    }
    out << print_document(doc);
  }

 private:
  void need(const std::vector<std::string>& w, std::size_t n, const char* usage) const {
    if (w.size() != n) throw Error(ErrorKind::Syntax, std::string("usage: ") + usage);
  }

  const Entry& get(const std::string& n) const {
    for (const auto& e : entries_)
      if (e.name == n) return e;
    throw Error(ErrorKind::Resolution, "no constraint '" + n + "' in the store");
  }

  void add(std::string n, Constraint k, bool certified) {
    for (const auto& e : entries_)
      if (e.name == n) throw Error(ErrorKind::Validation, "constraint '" + n + "' is already in the store");
    if (certified && !check_constraint(sketch_, k).holds)
      throw Failed("constraint '" + n + "' does not hold on the sketch");
    entries_.push_back({std::move(n), std::move(k), certified});
  }

  static Certification mode(bool certified) { return certified ? Certification::Required : Certification::Assumed; }

  void step(const std::vector<std::string>& w, const std::string& line) {
    const auto& op = w[0];
    if (op == "use") {
      need(w, 2, "use SKETCH");
      if (sketch_name_) throw Error(ErrorKind::Precondition, "'use' may appear once, before every other step");
      sketch_name_ = w[1];
      current_name_ = w[1];
      sketch_ = doc_.sketch(w[1]);
      return;
    }
    if (!sketch_name_) throw Error(ErrorKind::Precondition, "select a sketch with 'use' first");
    if ((op == "have" || op == "assume") && w.size() == 5 && w[2] == ":=" && w[3] == "constraint") {
      if (current_name_ != *sketch_name_) throw Error(ErrorKind::Precondition, "declared constraints refer to the original sketch");
      add(w[1], doc_.constraint(w[4], sketch_), op == "have");
      return;
    }
    if (op == "elim" && w.size() == 6 && w[2] == ":=" && w[4] == "at") {
      const auto& k = get(w[3]);
      add(w[1], universal_elim(k.constraint, doc_.morphism(w[5]), sketch_, mode(k.certified)), k.certified);
      return;
    }
    if (op == "mp" && w.size() == 6 && w[2] == ":=" && w[4] == "with") {
      const auto& k = get(w[3]);
      const auto& g = get(w[5]);
      bool certified = k.certified && g.certified;
      add(w[1], modus_ponens(k.constraint, g.constraint, sketch_, mode(certified)), certified);
      return;
    }
    if (op == "skolem" && w.size() == 4 && w[2] == ":=") {
      const auto& k = get(w[3]);
      bool certified = k.certified;
      auto sk = skolemize(k.constraint, sketch_, mode(certified));
      auto tidy = strip_tags(sk.sketch);
      SketchMorphism phi{sketch_, tidy.sketch, compose(sk.tracking, tidy.iso)};
      sketch_ = tidy.sketch;
      for (auto& e : entries_) {
        e.constraint = cstr_translate(phi, e.constraint);
        if (e.certified && !check_constraint(sketch_, e.constraint).holds) {
          e.certified = false;
          demoted_.push_back(e.name);
        }
      }
      current_name_ = *sketch_name_ + "_skolem";
      add(w[1], Constraint::make(sk.constraint.condition, compose(sk.constraint.anchor, tidy.iso)), certified);
      return;
    }
    if (op == "conj" && w.size() >= 3 && w[2] == ":=") {
      std::vector<Constraint> ks;
      bool certified = true;
      for (std::size_t i = 3; i < w.size(); ++i) {
        const auto& k = get(w[i]);
        ks.push_back(k.constraint);
        certified = certified && k.certified;
      }
      if (ks.empty()) throw Error(ErrorKind::Syntax, "usage: conj K := K1 K2 ...");
      add(w[1], conj_intro(ks, ks.front().anchor), certified);
      return;
    }
    if (op == "split" && w.size() == 2) {
      const auto k = get(w[1]);
      auto parts = conj_elim(k.constraint);
      for (std::size_t i = 0; i < parts.size(); ++i) add(w[1] + "_" + std::to_string(i + 1), parts[i], k.certified);
      return;
    }
    if (op == "instance" && w.size() >= 7 && w[2] == ":=" && w[4] == "at" && w[5] == "stmt") {
      // instance K := COND at stmt P via { ... } [along MORPH]
      auto start = line.find("stmt");
      std::string text = line.substr(start);
      std::optional<std::string> along;
      if (w.size() >= 2 && w[w.size() - 2] == "along") {
        along = w.back();
        text = text.substr(0, text.rfind("along"));
      }
      auto s = parse_statement(doc_, text, sketch_.context());
      const auto& def = doc_.condition(w[3]);
      auto c = along ? doc_.morphism(*along) : identity(s.predicate().arity);
      auto k = statement_to_constraint(s, sketch_, def, c);
      add(w[1], k, check_constraint(sketch_, k).holds);
      return;
    }
    throw Error(ErrorKind::Syntax, "unknown or malformed step '" + line + "'");
  }

  const Document& doc_;
  std::optional<std::string> sketch_name_;
  std::string current_name_;
  Sketch sketch_;
  std::vector<Entry> entries_;
  std::vector<std::string> demoted_;
};

struct DeduceArgs {
  std::vector<std::string> files;
  std::string script;
};

int cmd_deduce(const DeduceArgs& a, std::ostream& out) {
  auto doc = load(a.files);
  std::ifstream script(a.script);
  if (!script) throw Error(ErrorKind::Resolution, "cannot read '" + a.script + "'");
  Deduction d(doc);
  d.run(script);
  d.dump(out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Check, repair and reason about generalized sketches.", "gsketch"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check constraints on a sketch");
  c->add_option("files", check.files, "Input documents, loaded in order")->required();
  c->add_option("--constraint", check.constraints, "Constraint to check (repeatable)");
  c->add_flag("--all", check.all, "Check every declared constraint");
  c->add_flag("--json", check.json, "Machine-readable report");
  c->add_option("--sketch", check.sketch, "Sketch to check against");

  RepairArgs repair;
  auto* r = app.add_subcommand("repair", "Apply rules until no rule has a match");
  r->add_option("files", repair.files, "Input documents, loaded in order")->required();
  r->add_option("--rules", repair.rules, "Rules or rule-shaped conditions, in priority order")->delimiter(',')->required();
  r->add_option("--max-steps", repair.max_steps, "Bound on rule applications")->capture_default_str();
  r->add_option("--out", repair.out_path, "Write the repaired sketch here instead of standard output");
  r->add_option("--sketch", repair.sketch, "Sketch to repair");
  r->add_option("--name", repair.name, "Name of the repaired sketch");

  TranslateArgs translate;
  auto* t = app.add_subcommand("translate", "Translate a condition along a morphism");
  t->add_option("files", translate.files, "Input documents, loaded in order")->required();
  t->add_option("--condition", translate.condition, "Condition to translate")->required();
  t->add_option("--along", translate.along, "Morphism starting at the condition's context")->required();
  t->add_option("--name", translate.name, "Name of the translated condition");

  DeduceArgs deduce;
  auto* d = app.add_subcommand("deduce", "Run a deduction script and dump the constraint store");
  d->add_option("files", deduce.files, "Input documents, loaded in order")->required();
  d->add_option("--script", deduce.script, "Deduction script")->required();

  ConstructArgs po, pb;
  auto* p = app.add_subcommand("pushout", "Pushout of a span");
  p->add_option("files", po.files, "Input documents, loaded in order")->required();
  p->add_option("--span", po.legs, "m,r with m: C -> B and r: C -> A")->delimiter(',')->required();
  p->add_option("--sketches", po.sketches, "C,B,A for a pushout of sketches")->delimiter(',');
  p->add_option("--name", po.name, "Name of the result");
  auto* q = app.add_subcommand("pullback", "Pullback of a cospan");
  q->add_option("files", pb.files, "Input documents, loaded in order")->required();
  q->add_option("--cospan", pb.legs, "m,r with m: B -> C and r: A -> C")->delimiter(',')->required();
  q->add_option("--sketches", pb.sketches, "C,B,A for a pullback of sketches")->delimiter(',');
  q->add_option("--name", pb.name, "Name of the result");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (c->parsed()) return cmd_check(check, out);
    if (r->parsed()) return cmd_repair(repair, out);
    if (t->parsed()) return cmd_translate(translate, out);
    if (d->parsed()) return cmd_deduce(deduce, out);
    if (p->parsed()) return cmd_construct(po, true, out);
    if (q->parsed()) return cmd_construct(pb, false, out);
  } catch (const Failed& e) {
    err << "gsketch: " << e.what() << "\n";
    return kExitFails;
  } catch (const std::exception& e) {
    err << "gsketch: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace gsketch

#include "gsketch/deduce.hpp"

#include <algorithm>

namespace gsketch {

namespace {

bool is_truth(const Condition& c) {
  return c.kind() == ConditionKind::True || (c.kind() == ConditionKind::And && c.children().empty());
}

// true, a statement, or an `and` of statements.
std::optional<std::vector<Statement>> statement_conjunction(const Condition& c) {
  switch (c.kind()) {
    case ConditionKind::True:
      return std::vector<Statement>{};
    case ConditionKind::Statement:
      return std::vector<Statement>{c.statement()};
    case ConditionKind::And: {
      std::vector<Statement> out;
      for (const auto& child : c.children()) {
        if (child.kind() != ConditionKind::Statement) return std::nullopt;
        out.push_back(child.statement());
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

bool premise_holds(const Rule& rule, const GraphMorphism& t, const Sketch& G) {
  return std::all_of(rule.lhs.statements().begin(), rule.lhs.statements().end(),
                     [&](const Statement& s) { return G.contains(translate_statement(t, s)); });
}

Condition negative_condition(const Rule& rule) {
  return Condition::negation(unguarded_exists(rule.morphism, conjunction_of(rule.rhs.context(), rule.added)));
}

std::optional<GraphMorphism> first_match(const Rule& rule, const Sketch& G) {
  auto nac = negative_condition(rule);
  std::optional<GraphMorphism> found;
  search_morphisms(rule.lhs.context(), G.context(), Candidates::unrestricted(rule.lhs.context()), {},
                   [&](const GraphMorphism& t) {
                     if (premise_holds(rule, t, G) && satisfies(t, G, nac).holds) found = t;
                     return !found;
                   });
  return found;
}

void require_holds(const Constraint& k, const Sketch& G, Certification mode, const char* what) {
  if (mode == Certification::Assumed) return;
  if (!check_constraint(G, k).holds) throw Error(ErrorKind::NotCertified, std::string(what) + ": input constraint does not hold");
}

}  // namespace

// ---------------------------------------------------------------- rules

Rule Rule::make(Sketch lhs, GraphMorphism a, std::vector<Statement> added, std::string name) {
  if (!(a.dom() == lhs.context())) throw Error(ErrorKind::DomainMismatch, "rule morphism does not start at the premise context");
  std::vector<Statement> rhs = added;
  for (const auto& s : lhs.statements()) rhs.push_back(translate_statement(a, s));
  Sketch rhs_sketch(a.cod(), std::move(rhs));
  std::sort(added.begin(), added.end());
  added.erase(std::unique(added.begin(), added.end()), added.end());
  return Rule{std::move(name), std::move(lhs), std::move(rhs_sketch), std::move(a), std::move(added)};
}

Rule Rule::from_sketch_morphism(const SketchMorphism& m, std::string name) {
  std::vector<Statement> image;
  for (const auto& s : m.dom.statements()) image.push_back(translate_statement(m.map, s));
  std::vector<Statement> added;
  for (const auto& s : m.cod.statements())
    if (std::find(image.begin(), image.end(), s) == image.end()) added.push_back(s);
  return make(m.dom, m.map, std::move(added), std::move(name));
}

Condition Rule::as_condition() const {
  const Graph& L = lhs.context();
  auto inner = Condition::exists(conjunction_of(L, lhs.statements()), morphism, conjunction_of(rhs.context(), added));
  return unguarded_forall(initial_morphism(L), inner);
}

Rule rule_from_condition(const Condition& c, std::string name) {
  auto reject = [&](const std::string& where) -> Rule {
    throw Error(ErrorKind::Precondition, "not a universal rule condition: " + where);
  };
  if (c.kind() != ConditionKind::Forall) return reject("root is not a universal quantifier");
  if (!is_closed(c)) return reject("root context is not empty");
  if (!is_truth(c.guard())) return reject("root quantifier is guarded");
  const Condition& inner = c.body();
  if (inner.kind() != ConditionKind::Exists) return reject("body is not an existential quantifier");
  auto premise = statement_conjunction(inner.guard());
  if (!premise) return reject("existential guard is not a conjunction of statements");
  auto conclusion = statement_conjunction(inner.body());
  if (!conclusion) return reject("existential body is not a conjunction of statements");
  return Rule::make(Sketch(c.shift().cod(), *premise), inner.shift(), *conclusion, std::move(name));
}

std::vector<GraphMorphism> find_matches(const Rule& rule, const Sketch& G, const EvalOptions& options) {
  auto nac = negative_condition(rule);
  std::vector<GraphMorphism> out;
  search_morphisms(rule.lhs.context(), G.context(), Candidates::unrestricted(rule.lhs.context()),
                   SearchOptions{.injective = options.monic_extensions}, [&](const GraphMorphism& t) {
                     if (premise_holds(rule, t, G) && satisfies(t, G, nac, options).holds) out.push_back(t);
                     return true;
                   });
  return out;
}

RuleApplication rule_pushout(const Rule& rule, const GraphMorphism& match, const Sketch& G) {
  if (!(match.dom() == rule.lhs.context()) || !(match.cod() == G.context()))
    throw Error(ErrorKind::DomainMismatch, "match does not go from the rule's premise context to the sketch");
  if (!premise_holds(rule, match, G)) throw Error(ErrorKind::Precondition, "rule premise does not hold at the match");
  auto po = sketch_pushout(SketchMorphism{rule.lhs, G, match}, rule.as_sketch_morphism());
  return {po.object, po.left.map, po.right.map};
}

RuleApplication apply_rule(const Rule& rule, const GraphMorphism& match, const Sketch& G) {
  auto matches = find_matches(rule, G);
  if (std::find(matches.begin(), matches.end(), match) == matches.end())
    throw Error(ErrorKind::Precondition, "morphism is not a match of the rule");
  return rule_pushout(rule, match, G);
}

RepairOutcome repair_to_fixpoint(const std::vector<Rule>& rules, const Sketch& G, std::size_t max_steps) {
  RepairOutcome out{G, {}, false};
  auto next = [&]() -> std::optional<std::pair<std::size_t, GraphMorphism>> {
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (auto m = first_match(rules[i], out.result)) return std::pair{i, *m};
    return std::nullopt;
  };
  while (auto found = next()) {
    if (out.trace.size() == max_steps) {
      out.exhausted = true;
      break;
    }
    const Rule& rule = rules[found->first];
    auto app = rule_pushout(rule, found->second, out.result);
    out.result = app.result;
    out.trace.push_back({rule.name, found->first, found->second, std::move(app)});
  }
  return out;
}

// ---------------------------------------------------------------- deduction

Constraint universal_elim(const Constraint& k, const GraphMorphism& extension, const Sketch& G, Certification mode) {
  const Condition& c = k.condition;
  if (c.kind() != ConditionKind::Forall) throw Error(ErrorKind::Precondition, "universal elimination needs a universal condition");
  if (!is_truth(c.guard())) throw Error(ErrorKind::Precondition, "universal elimination needs an unguarded quantifier");
  if (!(extension.dom() == c.shift().cod()) || !(extension.cod() == G.context()))
    throw Error(ErrorKind::DomainMismatch, "extension has the wrong endpoints");
  if (!(compose(c.shift(), extension) == k.anchor))
    throw Error(ErrorKind::Precondition, "morphism does not extend the constraint's anchor");
  require_holds(k, G, mode, "universal elimination");
  return Constraint::make(c.body(), extension);
}

Constraint modus_ponens(const Constraint& k, const Constraint& guard, const Sketch& G, Certification mode) {
  const Condition& c = k.condition;
  if (c.kind() != ConditionKind::Exists) throw Error(ErrorKind::Precondition, "modus ponens needs an existential condition");
  if (!(guard.anchor == k.anchor)) throw Error(ErrorKind::Precondition, "modus ponens: anchors differ");
  if (!(guard.condition == c.guard())) throw Error(ErrorKind::Precondition, "modus ponens: second constraint is not the guard");
  require_holds(k, G, mode, "modus ponens");
  require_holds(guard, G, mode, "modus ponens");
  return Constraint::make(unguarded_exists(c.shift(), c.body()), k.anchor);
}

Skolemization skolemize(const Constraint& k, const Sketch& G, Certification mode) {
  const Condition& c = k.condition;
  if (c.kind() != ConditionKind::Exists) throw Error(ErrorKind::Precondition, "skolemisation needs an existential condition");
  if (!is_truth(c.guard())) throw Error(ErrorKind::Precondition, "skolemisation needs an unguarded existential");
  auto conclusion = statement_conjunction(c.body());
  if (!conclusion) throw Error(ErrorKind::Precondition, "skolemisation needs a conjunction of statements as body");
  if (!(k.anchor.cod() == G.context())) throw Error(ErrorKind::DomainMismatch, "anchor does not end at the sketch's context");
  require_holds(k, G, mode, "skolemisation");
  auto rule = Rule::make(Sketch(c.context(), {}), c.shift(), *conclusion);
  auto app = rule_pushout(rule, k.anchor, G);
  return {app.result, app.tracking, Constraint::make(c.body(), app.comatch)};
}

Constraint conj_intro(const std::vector<Constraint>& ks, const GraphMorphism& anchor) {
  std::vector<Condition> parts;
  for (const auto& k : ks) {
    if (!(k.anchor == anchor)) throw Error(ErrorKind::Precondition, "conjunction introduction: anchors differ");
    parts.push_back(k.condition);
  }
  return Constraint::make(Condition::conj(anchor.dom(), std::move(parts)), anchor);
}

std::vector<Constraint> conj_elim(const Constraint& k) {
  if (k.condition.kind() != ConditionKind::And) throw Error(ErrorKind::Precondition, "conjunction elimination needs a conjunction");
  std::vector<Constraint> out;
  for (const auto& child : k.condition.children()) out.push_back(Constraint::make(child, k.anchor));
  return out;
}

Constraint statement_to_constraint(const Statement& s, const Sketch& G, const Condition& def, const GraphMorphism& c) {
  if (!G.contains(s)) throw Error(ErrorKind::Precondition, "statement is not a statement of the sketch");
  if (!(c.dom() == def.context())) throw Error(ErrorKind::DomainMismatch, "instance morphism does not start at the definition's context");
  if (!(c.cod() == s.predicate().arity)) throw Error(ErrorKind::DomainMismatch, "instance morphism does not end at the predicate's arity");
  return Constraint::make(def, compose(c, s.binding()));
}

Constraint cstr_translate(const SketchMorphism& phi, const Constraint& k) {
  if (!(k.anchor.cod() == phi.dom.context()))
    throw Error(ErrorKind::DomainMismatch, "constraint anchor does not end at the morphism's domain");
  return Constraint::make(k.condition, compose(k.anchor, phi.map));
}

// ---------------------------------------------------------------- constrained sketches

ConstrainedSketch::ConstrainedSketch(Sketch sketch, std::vector<Constraint> constraints, bool certified)
    : sketch_(std::move(sketch)), constraints_(std::move(constraints)), certified_(certified) {
  for (const auto& k : constraints_)
    if (!(k.anchor.cod() == sketch_.context()))
      throw Error(ErrorKind::DomainMismatch, "stored constraint is not anchored in the sketch's context");
  if (certified_) certify();
}

ConstrainedSketch ConstrainedSketch::certified(Sketch sketch, std::vector<Constraint> constraints) {
  return ConstrainedSketch(std::move(sketch), std::move(constraints), true);
}

ConstrainedSketch ConstrainedSketch::unchecked(Sketch sketch, std::vector<Constraint> constraints) {
  return ConstrainedSketch(std::move(sketch), std::move(constraints), false);
}

void ConstrainedSketch::certify() const {
  auto bad = failing();
  if (!bad.empty())
    throw Error(ErrorKind::NotCertified, "stored constraint #" + std::to_string(bad.front()) + " does not hold");
}

std::vector<std::size_t> ConstrainedSketch::failing() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < constraints_.size(); ++i)
    if (!check_constraint(sketch_, constraints_[i]).holds) out.push_back(i);
  return out;
}

ConstrainedSketch ConstrainedSketch::with(Constraint k) const {
  auto ks = constraints_;
  ks.push_back(std::move(k));
  return ConstrainedSketch(sketch_, std::move(ks), certified_);
}

ConstrainedSketch ConstrainedSketch::along(const SketchMorphism& phi) const {
  if (!(phi.dom == sketch_)) throw Error(ErrorKind::DomainMismatch, "sketch morphism does not start at the stored sketch");
  std::vector<Constraint> ks;
  for (const auto& k : constraints_) ks.push_back(cstr_translate(phi, k));
  return ConstrainedSketch(phi.cod, std::move(ks), certified_);
}

}  // namespace gsketch

#include "gsketch/condition.hpp"

#include <algorithm>

namespace gsketch {

// ---------------------------------------------------------------- construction

Condition Condition::stmt(Statement s) {
  Graph k = s.context();
  return stmt(std::move(k), std::move(s));
}

Condition Condition::stmt(Graph context, Statement s) {
  return Condition(std::make_shared<const Node>(Node{ConditionKind::Statement, std::move(context), std::move(s), {}, {}}));
}

Condition Condition::truth(Graph context) {
  return Condition(std::make_shared<const Node>(Node{ConditionKind::True, std::move(context), {}, {}, {}}));
}

Condition Condition::falsity(Graph context) {
  return Condition(std::make_shared<const Node>(Node{ConditionKind::False, std::move(context), {}, {}, {}}));
}

Condition Condition::conj(Graph context, std::vector<Condition> children) {
  return Condition(std::make_shared<const Node>(Node{ConditionKind::And, std::move(context), {}, std::move(children), {}}));
}

Condition Condition::disj(Graph context, std::vector<Condition> children) {
  return Condition(std::make_shared<const Node>(Node{ConditionKind::Or, std::move(context), {}, std::move(children), {}}));
}

Condition Condition::negation(Condition child) {
  Graph k = child.context();
  return Condition(std::make_shared<const Node>(Node{ConditionKind::Not, std::move(k), {}, {std::move(child)}, {}}));
}

Condition Condition::exists(Condition guard, GraphMorphism shift, Condition body) {
  Graph k = guard.context();
  return exists(std::move(k), std::move(guard), std::move(shift), std::move(body));
}

Condition Condition::forall(Condition guard, GraphMorphism shift, Condition body) {
  Graph k = guard.context();
  return forall(std::move(k), std::move(guard), std::move(shift), std::move(body));
}

Condition Condition::exists(Graph context, Condition guard, GraphMorphism shift, Condition body) {
  return Condition(std::make_shared<const Node>(
      Node{ConditionKind::Exists, std::move(context), {}, {std::move(guard), std::move(body)}, std::move(shift)}));
}

Condition Condition::forall(Graph context, Condition guard, GraphMorphism shift, Condition body) {
  return Condition(std::make_shared<const Node>(
      Node{ConditionKind::Forall, std::move(context), {}, {std::move(guard), std::move(body)}, std::move(shift)}));
}

const Statement& Condition::statement() const {
  if (kind() != ConditionKind::Statement) throw Error(ErrorKind::Internal, "condition is not a statement");
  return *node_->statement;
}

const std::vector<Condition>& Condition::children() const {
  if (kind() != ConditionKind::And && kind() != ConditionKind::Or && kind() != ConditionKind::Not)
    throw Error(ErrorKind::Internal, "condition has no children");
  return node_->children;
}

const Condition& Condition::child() const {
  if (kind() != ConditionKind::Not) throw Error(ErrorKind::Internal, "condition is not a negation");
  return node_->children.front();
}

const Condition& Condition::guard() const {
  if (!is_quantifier()) throw Error(ErrorKind::Internal, "condition is not a quantifier");
  return node_->children[0];
}

const Condition& Condition::body() const {
  if (!is_quantifier()) throw Error(ErrorKind::Internal, "condition is not a quantifier");
  return node_->children[1];
}

const GraphMorphism& Condition::shift() const {
  if (!is_quantifier()) throw Error(ErrorKind::Internal, "condition is not a quantifier");
  return *node_->shift;
}

std::size_t Condition::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

bool operator==(const Condition& a, const Condition& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.context == y.context && x.statement == y.statement && x.shift == y.shift &&
         x.children == y.children;
}

Condition implication(const Condition& lhs, const Condition& rhs) {
  if (!(lhs.context() == rhs.context()))
    throw Error(ErrorKind::DomainMismatch, "implication: premise and conclusion have different contexts");
  return Condition::exists(lhs, identity(lhs.context()), rhs);
}

Condition unguarded_exists(const GraphMorphism& shift, const Condition& body) {
  return Condition::exists(Condition::truth(shift.dom()), shift, body);
}

Condition unguarded_forall(const GraphMorphism& shift, const Condition& body) {
  return Condition::forall(Condition::truth(shift.dom()), shift, body);
}

Condition conjunction_of(const Graph& context, const std::vector<Statement>& statements) {
  std::vector<Condition> children;
  for (const auto& s : statements) children.push_back(Condition::stmt(context, s));
  return Condition::conj(context, std::move(children));
}

bool is_closed(const Condition& c) { return c.context().empty(); }

// ---------------------------------------------------------------- well-formedness

namespace {

void check_tree(const Condition& c, const std::string& path, std::vector<std::string>& out) {
  if (!c.context().valid()) out.push_back(path + ": context graph is invalid");
  switch (c.kind()) {
    case ConditionKind::Statement:
      if (!(c.statement().context() == c.context()))
        out.push_back(path + ": statement '" + c.statement().predicate().name + "' is bound into another context");
      break;
    case ConditionKind::True:
    case ConditionKind::False:
      break;
    case ConditionKind::And:
    case ConditionKind::Or:
    case ConditionKind::Not: {
      const auto& kids = c.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        auto sub = path + "/" + std::to_string(i);
        if (!(kids[i].context() == c.context())) out.push_back(sub + ": child context differs from parent context");
        check_tree(kids[i], sub, out);
      }
      break;
    }
    case ConditionKind::Exists:
    case ConditionKind::Forall:
      if (!(c.guard().context() == c.context())) out.push_back(path + "/guard: guard context differs from parent context");
      if (!(c.shift().dom() == c.context())) out.push_back(path + ": shift does not start at the context");
      if (!(c.body().context() == c.shift().cod())) out.push_back(path + "/body: body context is not the shift's codomain");
      check_tree(c.guard(), path + "/guard", out);
      check_tree(c.body(), path + "/body", out);
      break;
  }
}

}  // namespace

std::vector<std::string> well_formed(const Condition& c) {
  std::vector<std::string> out;
  check_tree(c, "", out);
  return out;
}

// ---------------------------------------------------------------- satisfaction

namespace {

class Evaluator {
 public:
  Evaluator(const Sketch& G, const EvalOptions& options) : G_(G), options_(options) {}

  Verdict eval(const GraphMorphism& t, const Condition& c) {
    if (++steps_ > options_.fuel) throw Error(ErrorKind::FuelExhausted, "evaluation exceeded its step budget");
    switch (c.kind()) {
      case ConditionKind::Statement:
        return {G_.contains(translate_statement(t, c.statement())), std::nullopt, {}};
      case ConditionKind::True:
        return {true, std::nullopt, {}};
      case ConditionKind::False:
        return {false, std::nullopt, {}};
      case ConditionKind::And:
        for (const auto& child : c.children()) {
          auto v = eval(t, child);
          if (!v.holds) return {false, std::nullopt, {std::move(v)}};
        }
        return {true, std::nullopt, {}};
      case ConditionKind::Or:
        for (const auto& child : c.children()) {
          auto v = eval(t, child);
          if (v.holds) return {true, std::nullopt, {std::move(v)}};
        }
        return {false, std::nullopt, {}};
      case ConditionKind::Not: {
        auto v = eval(t, c.child());
        bool holds = !v.holds;
        return {holds, std::nullopt, {std::move(v)}};
      }
      case ConditionKind::Exists:
      case ConditionKind::Forall:
        return quantifier(t, c);
    }
    throw Error(ErrorKind::Internal, "unknown condition kind");
  }

  std::size_t steps() const { return steps_; }

 private:
  Verdict quantifier(const GraphMorphism& t, const Condition& c) {
    auto guard = eval(t, c.guard());
    if (!guard.holds) return {true, std::nullopt, {std::move(guard)}};
    const bool existential = c.kind() == ConditionKind::Exists;
    Verdict out{!existential, std::nullopt, {}};
    for_each_extension(c.shift(), t, SearchOptions{.injective = options_.monic_extensions},
                       [&](const GraphMorphism& r) {
                         auto v = eval(r, c.body());
                         if (v.holds != existential) return true;
                         out = {existential, r, {std::move(v)}};
                         return false;
                       });
    return out;
  }

  const Sketch& G_;
  const EvalOptions& options_;
  std::size_t steps_ = 0;
};

void check_endpoints(const GraphMorphism& t, const Sketch& G, const Condition& c) {
  if (!(t.dom() == c.context())) throw Error(ErrorKind::DomainMismatch, "anchor does not start at the condition's context");
  if (!(t.cod() == G.context())) throw Error(ErrorKind::DomainMismatch, "anchor does not end at the sketch's context");
  auto problems = well_formed(c);
  if (!problems.empty()) throw Error(ErrorKind::IllFormedCondition, problems.front());
}

}  // namespace

Verdict satisfies(const GraphMorphism& t, const Sketch& G, const Condition& c, const EvalOptions& options,
                  EvalStats* stats) {
  check_endpoints(t, G, c);
  Evaluator ev(G, options);
  auto v = ev.eval(t, c);
  if (stats) stats->steps += ev.steps();
  return v;
}

Constraint Constraint::make(Condition condition, GraphMorphism anchor) {
  if (!(anchor.dom() == condition.context()))
    throw Error(ErrorKind::DomainMismatch, "constraint anchor does not start at the condition's context");
  return Constraint{std::move(condition), std::move(anchor)};
}

Constraint Constraint::global(Condition condition, const Graph& g) {
  if (!is_closed(condition)) throw Error(ErrorKind::Precondition, "global constraints need a closed condition");
  return make(std::move(condition), initial_morphism(g));
}

Verdict check_constraint(const Sketch& G, const Constraint& k, const EvalOptions& options) {
  return satisfies(k.anchor, G, k.condition, options);
}

std::vector<GraphMorphism> counterexamples(const GraphMorphism& t, const Sketch& G, const Condition& forall,
                                           const EvalOptions& options) {
  if (forall.kind() != ConditionKind::Forall) throw Error(ErrorKind::Precondition, "counterexamples need a universal condition");
  check_endpoints(t, G, forall);
  std::vector<GraphMorphism> out;
  Evaluator ev(G, options);
  if (!ev.eval(t, forall.guard()).holds) return out;
  for_each_extension(forall.shift(), t, SearchOptions{.injective = options.monic_extensions},
                     [&](const GraphMorphism& r) {
                       if (!ev.eval(r, forall.body()).holds) out.push_back(r);
                       return true;
                     });
  return out;
}

// ---------------------------------------------------------------- universal constraints

Condition uc(const SketchMorphism& rule) {
  const Graph& L = rule.dom.context();
  const Graph& R = rule.cod.context();
  auto inner = Condition::exists(conjunction_of(L, rule.dom.statements()), rule.map, conjunction_of(R, rule.cod.statements()));
  return unguarded_forall(initial_morphism(L), inner);
}

Condition nuc(const SketchMorphism& rule) {
  const Graph& L = rule.dom.context();
  const Graph& R = rule.cod.context();
  auto forbidden = Condition::negation(unguarded_exists(rule.map, conjunction_of(R, rule.cod.statements())));
  return unguarded_forall(initial_morphism(L), implication(conjunction_of(L, rule.dom.statements()), forbidden));
}

// ---------------------------------------------------------------- renaming equivalence

namespace {

bool same_modulo(const Condition& a, const Condition& b, const GraphMorphism& rho) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ConditionKind::Statement:
      return a.statement().predicate().name == b.statement().predicate().name &&
             a.statement().predicate().arity == b.statement().predicate().arity &&
             compose(a.statement().binding(), rho) == b.statement().binding();
    case ConditionKind::True:
    case ConditionKind::False:
      return true;
    case ConditionKind::And:
    case ConditionKind::Or:
    case ConditionKind::Not: {
      const auto& x = a.children();
      const auto& y = b.children();
      if (x.size() != y.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!same_modulo(x[i], y[i], rho)) return false;
      return true;
    }
    case ConditionKind::Exists:
    case ConditionKind::Forall: {
      if (!same_modulo(a.guard(), b.guard(), rho)) return false;
      const Graph& ma = a.shift().cod();
      const Graph& mb = b.shift().cod();
      if (ma.node_count() != mb.node_count() || ma.edge_count() != mb.edge_count()) return false;
      bool found = false;
      for_each_extension(a.shift(), compose(rho, b.shift()), SearchOptions{.injective = true},
                         [&](const GraphMorphism& sigma) {
                           found = same_modulo(a.body(), b.body(), sigma);
                           return !found;
                         });
      return found;
    }
  }
  return false;
}

}  // namespace

bool equivalent_modulo_renaming(const Condition& a, const Condition& b) {
  const Graph& ka = a.context();
  const Graph& kb = b.context();
  if (ka.node_count() != kb.node_count() || ka.edge_count() != kb.edge_count()) return false;
  bool found = false;
  search_morphisms(ka, kb, Candidates::unrestricted(ka), SearchOptions{.injective = true}, [&](const GraphMorphism& rho) {
    found = same_modulo(a, b, rho);
    return !found;
  });
  return found;
}

}  // namespace gsketch

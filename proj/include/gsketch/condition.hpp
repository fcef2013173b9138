#pragma once

// First-order sketch conditions with guarded quantification along context
// morphisms, their satisfaction relation, and sketch constraints.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsketch/sketch.hpp"

namespace gsketch {

enum class ConditionKind { Statement, True, False, And, Or, Not, Exists, Forall };

/// Immutable condition tree. Every node records its context graph. The
/// factories do not enforce context discipline so that ill-formed trees can
/// be represented and reported by well_formed().
class Condition {
 public:
  static Condition stmt(Statement s);
  static Condition stmt(Graph context, Statement s);
  static Condition truth(Graph context);
  static Condition falsity(Graph context);
  static Condition conj(Graph context, std::vector<Condition> children);
  static Condition disj(Graph context, std::vector<Condition> children);
  static Condition negation(Condition child);
  /// Context is the guard's context.
  static Condition exists(Condition guard, GraphMorphism shift, Condition body);
  static Condition forall(Condition guard, GraphMorphism shift, Condition body);
  static Condition exists(Graph context, Condition guard, GraphMorphism shift, Condition body);
  static Condition forall(Graph context, Condition guard, GraphMorphism shift, Condition body);

  ConditionKind kind() const { return node_->kind; }
  const Graph& context() const { return node_->context; }
  bool is_quantifier() const { return kind() == ConditionKind::Exists || kind() == ConditionKind::Forall; }

  const Statement& statement() const;
  /// Children of And/Or; the single child of Not.
  const std::vector<Condition>& children() const;
  const Condition& child() const;
  const Condition& guard() const;
  const GraphMorphism& shift() const;
  const Condition& body() const;

  /// Node count of the tree.
  std::size_t size() const;

  friend bool operator==(const Condition& a, const Condition& b);

 private:
  struct Node {
    ConditionKind kind;
    Graph context;
    std::optional<Statement> statement;
    std::vector<Condition> children;  // quantifiers: {guard, body}
    std::optional<GraphMorphism> shift;
  };
  explicit Condition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// lhs -> rhs, encoded as the guarded existential along the identity.
Condition implication(const Condition& lhs, const Condition& rhs);
Condition unguarded_exists(const GraphMorphism& shift, const Condition& body);
Condition unguarded_forall(const GraphMorphism& shift, const Condition& body);
/// And of one Stmt per statement (True-free, possibly empty).
Condition conjunction_of(const Graph& context, const std::vector<Statement>& statements);

bool is_closed(const Condition& c);

/// Context-discipline violations, each with a path into the tree.
std::vector<std::string> well_formed(const Condition& c);

struct Verdict {
  bool holds = false;
  /// Quantifier nodes only: the witnessing extension when the verdict holds,
  /// the first violating extension when it fails.
  std::optional<GraphMorphism> extension;
  /// Sub-verdicts explaining this one, one level per quantifier or connective.
  std::vector<Verdict> detail;
};

struct EvalOptions {
  /// Restrict quantified extensions to monomorphisms.
  bool monic_extensions = false;
  /// Upper bound on evaluation steps; exceeding it throws FuelExhausted.
  std::size_t fuel = 50'000'000;
};

struct EvalStats {
  std::size_t steps = 0;
};

/// t |=_G c. Throws on endpoint mismatch or an ill-formed condition.
Verdict satisfies(const GraphMorphism& t, const Sketch& G, const Condition& c, const EvalOptions& options = {},
                  EvalStats* stats = nullptr);

struct Constraint {
  Condition condition;
  GraphMorphism anchor;

  /// Throws unless anchor.dom equals the condition's context.
  static Constraint make(Condition condition, GraphMorphism anchor);
  /// The global constraint (c, !_G) for a closed condition c.
  static Constraint global(Condition condition, const Graph& g);

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

Verdict check_constraint(const Sketch& G, const Constraint& k, const EvalOptions& options = {});

/// For a condition rooted in Forall: every extension r at which the guard
/// holds and the body fails, in canonical order.
std::vector<GraphMorphism> counterexamples(const GraphMorphism& t, const Sketch& G, const Condition& forall,
                                           const EvalOptions& options = {});

/// Universal constraint L -> R: forall(L : exists(/\S^L, a, R : /\S^R)).
Condition uc(const SketchMorphism& rule);
/// Negative universal constraint: forall(L : (/\S^L -> not exists(a, R : /\S^R))).
Condition nuc(const SketchMorphism& rule);

/// Structural equality up to bijective renaming of context elements,
/// propagated through quantifier shifts.
bool equivalent_modulo_renaming(const Condition& a, const Condition& b);

}  // namespace gsketch

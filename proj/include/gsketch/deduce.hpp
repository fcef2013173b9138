#pragma once

// Rule application by sketch pushout with a negative application condition,
// the repair loop built on it, and single-step deduction rules over sketch
// constraints.

#include <string>
#include <vector>

#include "gsketch/condition.hpp"

namespace gsketch {

/// a : (L, added_premise) -> (R, added ∪ a(premise)).
struct Rule {
  std::string name;
  Sketch lhs;
  Sketch rhs;
  GraphMorphism morphism;
  std::vector<Statement> added;

  static Rule make(Sketch lhs, GraphMorphism a, std::vector<Statement> added, std::string name = {});
  /// Added statements are those of `m.cod` not already in the image of `m.dom`.
  static Rule from_sketch_morphism(const SketchMorphism& m, std::string name = {});

  SketchMorphism as_sketch_morphism() const { return {lhs, rhs, morphism}; }
  /// The closed condition forall(L : exists(/\premise, a, R : /\added)).
  Condition as_condition() const;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Extracts the rule from a closed condition of the shape
///   forall(empty -> L : exists(/\S1, a : L -> R, /\S2))
/// where each conjunction is `true`, a single statement or an `and` of
/// statements. Anything else is rejected with a Precondition error naming
/// the offending position.
Rule rule_from_condition(const Condition& c, std::string name = {});

/// Context morphisms t : L -> G with G |= (/\premise, t) and
/// G |= (not exists(a, R : /\added), t), in canonical order.
std::vector<GraphMorphism> find_matches(const Rule& rule, const Sketch& G, const EvalOptions& options = {});

struct RuleApplication {
  Sketch result;
  GraphMorphism tracking;  // a* : G -> H
  GraphMorphism comatch;   // t* : R -> H
};

/// Pushout of G <-t- (L, premise) -a-> (R, ...). Requires `match` to be a
/// match (premise and negative application condition).
RuleApplication apply_rule(const Rule& rule, const GraphMorphism& match, const Sketch& G);

/// The same pushout without the negative application condition; only the
/// premise is required.
RuleApplication rule_pushout(const Rule& rule, const GraphMorphism& match, const Sketch& G);

struct RepairStep {
  std::string rule;
  std::size_t rule_index;
  GraphMorphism match;
  RuleApplication application;
};

struct RepairOutcome {
  Sketch result;
  std::vector<RepairStep> trace;
  /// True when the step bound stopped the loop while a match remained.
  bool exhausted = false;
};

/// Repeatedly applies the first rule (in list order) that has a match, at its
/// first match in canonical order, until no rule matches or `max_steps`
/// applications have been made.
RepairOutcome repair_to_fixpoint(const std::vector<Rule>& rules, const Sketch& G, std::size_t max_steps);

// ---------------------------------------------------------------- deduction

/// Whether a deduction step checks that its input constraints hold on the
/// sketch. Assumed is for hypothesis management and never certifies output.
enum class Certification { Required, Assumed };

/// (forall(a, M : body), t) and an extension r with a;r = t give (body, r).
Constraint universal_elim(const Constraint& k, const GraphMorphism& extension, const Sketch& G,
                          Certification mode = Certification::Required);

/// (exists(guard, a, M : body), t) and (guard, t) give (exists(a, M : body), t).
Constraint modus_ponens(const Constraint& k, const Constraint& guard, const Sketch& G,
                        Certification mode = Certification::Required);

struct Skolemization {
  Sketch sketch;           // H
  GraphMorphism tracking;  // G -> H
  Constraint constraint;   // (/\S2, t* : R -> H)
};

/// Materialises the witness of (exists(a, R : /\S2), t) by the rule pushout.
Skolemization skolemize(const Constraint& k, const Sketch& G, Certification mode = Certification::Required);

/// (and(c1..cn), t) from constraints (ci, t); the empty set gives (and(), t).
Constraint conj_intro(const std::vector<Constraint>& ks, const GraphMorphism& anchor);
std::vector<Constraint> conj_elim(const Constraint& k);

/// For a statement (P, alpha) of G, a condition def over K and c : K -> ar(P),
/// the constraint (def, c;alpha). Not certified; the caller checks it.
Constraint statement_to_constraint(const Statement& s, const Sketch& G, const Condition& def, const GraphMorphism& c);

/// Cstr(phi)(cond, t) = (cond, t;phi).
Constraint cstr_translate(const SketchMorphism& phi, const Constraint& k);

/// A sketch with a store of constraints on its context. A certified store
/// holds only constraints the sketch satisfies; every construction and
/// mutation re-checks. An unchecked store holds hypotheses.
class ConstrainedSketch {
 public:
  static ConstrainedSketch certified(Sketch sketch, std::vector<Constraint> constraints);
  static ConstrainedSketch unchecked(Sketch sketch, std::vector<Constraint> constraints);

  const Sketch& sketch() const { return sketch_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool is_certified() const { return certified_; }

  ConstrainedSketch with(Constraint k) const;
  /// Moves the sketch and every stored constraint along a sketch morphism.
  ConstrainedSketch along(const SketchMorphism& phi) const;
  /// Indices of stored constraints the sketch does not satisfy.
  std::vector<std::size_t> failing() const;

 private:
  ConstrainedSketch(Sketch sketch, std::vector<Constraint> constraints, bool certified);
  void certify() const;

  Sketch sketch_;
  std::vector<Constraint> constraints_;
  bool certified_;
};

}  // namespace gsketch

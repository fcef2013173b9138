#pragma once

// Footprints, statements (atomic constraints), sketches, sketch morphisms and
// their pushouts and pullbacks, including the multi-sketch variants whose
// statements carry identifiers.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsketch/category.hpp"
#include "gsketch/graph.hpp"

namespace gsketch {

struct PredicateSymbol {
  std::string name;
  Graph arity;

  friend bool operator==(const PredicateSymbol&, const PredicateSymbol&) = default;
};

class Footprint {
 public:
  Footprint() = default;
  /// Throws on duplicate names or invalid arities.
  explicit Footprint(std::vector<PredicateSymbol> predicates);

  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const PredicateSymbol* find(std::string_view name) const;
  const PredicateSymbol& at(std::string_view name) const;

  friend bool operator==(const Footprint&, const Footprint&) = default;

 private:
  std::vector<PredicateSymbol> predicates_;
};

/// A predicate together with a binding of its arity into a context.
class Statement {
 public:
  Statement(PredicateSymbol predicate, GraphMorphism binding);

  const PredicateSymbol& predicate() const { return predicate_; }
  const GraphMorphism& binding() const { return binding_; }
  const Graph& context() const { return binding_.cod(); }

  friend bool operator==(const Statement& a, const Statement& b);
  /// Predicate name, then node images, then edge images.
  friend bool operator<(const Statement& a, const Statement& b);

 private:
  PredicateSymbol predicate_;
  GraphMorphism binding_;
};

/// Stm(phi): (P, alpha) |-> (P, alpha;phi).
Statement translate_statement(const GraphMorphism& phi, const Statement& s);

class Sketch {
 public:
  Sketch() = default;
  /// Statements are deduplicated and put in canonical order. Throws if a
  /// statement is not over `context`.
  Sketch(Graph context, std::vector<Statement> statements);

  const Graph& context() const { return context_; }
  const std::vector<Statement>& statements() const { return statements_; }
  bool contains(const Statement& s) const;

  friend bool operator==(const Sketch&, const Sketch&) = default;

 private:
  Graph context_;
  std::vector<Statement> statements_;
};

/// Statement preservation: phi(s) is a statement of `to` for every statement
/// s of `from`.
bool is_sketch_morphism(const GraphMorphism& phi, const Sketch& from, const Sketch& to);

struct SketchMorphism {
  Sketch dom;
  Sketch cod;
  GraphMorphism map;

  /// Throws NotASketchMorphism unless `map` preserves statements.
  static SketchMorphism make(Sketch dom, Sketch cod, GraphMorphism map);
  static SketchMorphism identity(const Sketch& s);
};

SketchMorphism compose(const SketchMorphism& f, const SketchMorphism& g);

/// Pushout of B <-m- C -r-> A: context pushout, statements
/// left(S^B) united with right(S^A).
struct SketchPushout {
  Sketch object;
  SketchMorphism left;   // B -> D
  SketchMorphism right;  // A -> D
};
SketchPushout sketch_pushout(const SketchMorphism& m, const SketchMorphism& r);

/// Pullback of B -m-> C <-r- A: context pullback, with every statement over D
/// whose projections are statements of B and A respectively.
struct SketchPullback {
  Sketch object;
  SketchMorphism left;   // D -> B
  SketchMorphism right;  // D -> A
};
SketchPullback sketch_pullback(const SketchMorphism& m, const SketchMorphism& r);

// ---------------------------------------------------------------- multi sketches

struct MultiSketch {
  Graph context;
  std::map<std::string, Statement> statements;

  /// Throws unless every statement is over `context`.
  void validate() const;
  friend bool operator==(const MultiSketch&, const MultiSketch&) = default;
};

struct MultiSketchMorphism {
  MultiSketch dom;
  MultiSketch cod;
  GraphMorphism map;
  std::map<std::string, std::string> ids;

  /// Throws unless ids is total and map(stm(i)) = stm(ids(i)) for all i.
  static MultiSketchMorphism make(MultiSketch dom, MultiSketch cod, GraphMorphism map,
                                  std::map<std::string, std::string> ids);
};

struct MultiPushout {
  MultiSketch object;
  MultiSketchMorphism left;   // B -> D
  MultiSketchMorphism right;  // A -> D
};
/// Componentwise pushout of contexts and identifier sets; identifier classes
/// are named like pushout elements ("L:"/"R:" tags, least member).
MultiPushout multi_pushout(const MultiSketchMorphism& m, const MultiSketchMorphism& r);

struct MultiPullback {
  MultiSketch object;
  MultiSketchMorphism left;   // D -> B
  MultiSketchMorphism right;  // D -> A
};
/// Componentwise pullback; identifier pairs are named "b|a" and carry the
/// unique statement whose binding mediates the two component bindings.
MultiPullback multi_pullback(const MultiSketchMorphism& m, const MultiSketchMorphism& r);

}  // namespace gsketch

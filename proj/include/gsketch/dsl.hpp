#pragma once

// Text format for graphs, footprints, morphisms, sketches, conditions,
// constraints and rules: parser with positioned diagnostics and a canonical
// printer.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsketch/deduce.hpp"

namespace gsketch {

struct SourcePos {
  std::string source;
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Syntax, resolution and validation errors from the parser. what() reads
/// "source:line:column: kind: message" plus the expected-token set, if any.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, SourcePos pos, const std::string& message, std::vector<std::string> expected = {});

  const SourcePos& pos() const { return pos_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

enum class DeclKind { Footprint, Graph, Morphism, Sketch, Condition, Constraint, Rule };
std::string_view to_string(DeclKind kind);

struct FootprintDecl {
  Footprint footprint;
  /// Predicates whose arity was given by graph name.
  std::map<std::string, std::string> arity_refs;
  friend bool operator==(const FootprintDecl&, const FootprintDecl&) = default;
};

struct MorphismDecl {
  std::string dom;
  std::string cod;
  GraphMorphism morphism;
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

struct SketchDecl {
  std::string footprint;
  std::optional<std::string> graph;  // unset: inline context literal
  Sketch sketch;
  friend bool operator==(const SketchDecl&, const SketchDecl&) = default;
};

struct ConditionDecl {
  std::optional<std::string> graph;
  Condition condition;
  friend bool operator==(const ConditionDecl&, const ConditionDecl&) = default;
};

struct ConstraintDecl {
  std::string condition;
  std::optional<std::string> anchor;  // unset: the initial morphism
  friend bool operator==(const ConstraintDecl&, const ConstraintDecl&) = default;
};

struct RuleDecl {
  std::string morphism;
  std::string from;
  std::string to;
  Rule rule;
  friend bool operator==(const RuleDecl&, const RuleDecl&) = default;
};

class Document {
 public:
  struct Entry {
    DeclKind kind;
    std::string name;
    SourcePos pos;
  };

  const std::vector<Entry>& entries() const { return entries_; }

  const std::map<std::string, FootprintDecl>& footprints() const { return footprints_; }
  const std::map<std::string, Graph>& graphs() const { return graphs_; }
  const std::map<std::string, MorphismDecl>& morphisms() const { return morphisms_; }
  const std::map<std::string, SketchDecl>& sketches() const { return sketches_; }
  const std::map<std::string, ConditionDecl>& conditions() const { return conditions_; }
  const std::map<std::string, ConstraintDecl>& constraints() const { return constraints_; }
  const std::map<std::string, RuleDecl>& rules() const { return rules_; }

  bool has(DeclKind kind, std::string_view name) const;

  // Lookups throw a Resolution error naming the missing declaration.
  const Graph& graph(std::string_view name) const;
  const GraphMorphism& morphism(std::string_view name) const;
  const Sketch& sketch(std::string_view name) const;
  const Condition& condition(std::string_view name) const;
  const FootprintDecl& footprint(std::string_view name) const;
  /// Predicate by name across all footprints; differing arities are an error.
  const PredicateSymbol& predicate(std::string_view name) const;

  /// The constraint with its anchor resolved; `initial` anchors resolve to
  /// the initial morphism into `target`'s context.
  Constraint constraint(std::string_view name, const Sketch& target) const;
  /// A rule declaration, or a rule-shaped condition of that name.
  Rule rule(std::string_view name) const;

  // Builders; each rejects a duplicate name of the same kind.
  void add_footprint(std::string name, FootprintDecl decl, SourcePos pos = {});
  void add_graph(std::string name, Graph g, SourcePos pos = {});
  void add_morphism(std::string name, MorphismDecl decl, SourcePos pos = {});
  void add_sketch(std::string name, SketchDecl decl, SourcePos pos = {});
  void add_condition(std::string name, ConditionDecl decl, SourcePos pos = {});
  void add_constraint(std::string name, ConstraintDecl decl, SourcePos pos = {});
  void add_rule(std::string name, RuleDecl decl, SourcePos pos = {});

  /// Same declarations in the same order; positions are ignored.
  friend bool operator==(const Document& a, const Document& b);

 private:
  void claim(DeclKind kind, const std::string& name, SourcePos pos);

  std::vector<Entry> entries_;
  std::map<std::string, FootprintDecl> footprints_;
  std::map<std::string, Graph> graphs_;
  std::map<std::string, MorphismDecl> morphisms_;
  std::map<std::string, SketchDecl> sketches_;
  std::map<std::string, ConditionDecl> conditions_;
  std::map<std::string, ConstraintDecl> constraints_;
  std::map<std::string, RuleDecl> rules_;
};

Document parse_document(std::string_view text, std::string_view source = "<input>");
/// Parses `text` into an existing document; it may reference earlier declarations.
void parse_into(Document& doc, std::string_view text, std::string_view source = "<input>");
Document parse_file(const std::string& path);
/// A single `stmt P via { ... }` over `context`, predicates resolved in `doc`.
Statement parse_statement(const Document& doc, std::string_view text, const Graph& context);

std::string print_document(const Document& doc);

/// Names that are not plain identifiers, or are keywords, are quoted.
std::string quote_name(std::string_view name);
std::string print_graph_literal(const Graph& g);
/// `{ nodes x -> y, ...; edges e -> f, ... }`
std::string print_morphism_entries(const GraphMorphism& m);
/// Condition expression. Shifts that equal a morphism in `named` are
/// printed by name; other non-inclusions are printed inline.
std::string print_condition(const Condition& c, const std::map<std::string, MorphismDecl>* named = nullptr,
                            int indent = 0);

}  // namespace gsketch

#include "gsketch/dsl.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace gsketch {

namespace {

constexpr std::array kKeywords{"graph", "footprint", "morphism", "sketch", "condition", "constraint", "rule",
                               "nodes", "edges",     "pred",     "arity",  "over",      "on",         "stmt",
                               "via",   "true",      "false",    "and",    "or",        "not",        "exists",
                               "forall", "given",    "extend",   "map",    "to",        "implies",    "initial",
                               "from"};

bool is_keyword(std::string_view s) { return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end(); }

bool ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '\'' || u >= 0x80;
}

std::string describe(const SourcePos& pos) {
  return pos.source + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

std::string format_message(ErrorKind kind, const SourcePos& pos, const std::string& message,
                           const std::vector<std::string>& expected) {
  std::string out = describe(pos) + ": " + std::string(to_string(kind)) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) out += (i ? ", " : "") + expected[i];
    out += ")";
  }
  return out;
}

// ---------------------------------------------------------------- lexer

enum class Tok { Ident, String, Punct, End };

struct Token {
  Tok type;
  std::string text;
  SourcePos pos;
};

std::vector<Token> lex(std::string_view text, const std::string& source) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto here = [&] { return SourcePos{source, line, col}; };
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    auto pos = here();
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      advance();
      advance();
      out.push_back({Tok::Punct, "->", pos});
      continue;
    }
    if (std::string_view("{}();,:=.").find(c) != std::string_view::npos) {
      advance();
      out.push_back({Tok::Punct, std::string(1, c), pos});
      continue;
    }
    if (c == '"') {
      advance();
      std::string value;
      while (true) {
        if (i >= text.size() || text[i] == '\n') throw ParseError(ErrorKind::Syntax, pos, "unterminated quoted name");
        char d = text[i];
        if (d == '"') {
          advance();
          break;
        }
        if (d == '\\') {
          advance();
          if (i >= text.size() || (text[i] != '"' && text[i] != '\\'))
            throw ParseError(ErrorKind::Syntax, here(), "unknown escape in quoted name", {"\\\"", "\\\\"});
        }
        value += text[i];
        advance();
      }
      out.push_back({Tok::String, std::move(value), pos});
      continue;
    }
    if (ident_char(c)) {
      std::string value;
      while (i < text.size() && ident_char(text[i])) {
        value += text[i];
        advance();
      }
      out.push_back({Tok::Ident, std::move(value), pos});
      continue;
    }
    throw ParseError(ErrorKind::Syntax, pos, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", here()});
  return out;
}

// ---------------------------------------------------------------- parser

struct RawEntry {
  std::string from;
  SourcePos from_pos;
  std::string to;
  SourcePos to_pos;
};

struct RawMap {
  SourcePos pos;
  bool sectioned = false;
  std::vector<RawEntry> nodes, edges, flat;
};

class Parser {
 public:
  Parser(Document& doc, std::vector<Token> tokens) : doc_(doc), toks_(std::move(tokens)) {}

  void document() {
    while (peek().type != Tok::End) declaration();
  }

  Statement lone_statement(const Graph& ctx) {
    auto s = statement(ctx, [&](const std::string& p, const SourcePos& ppos) -> const PredicateSymbol& {
      try {
        return doc_.predicate(p);
      } catch (const Error& e) {
        throw ParseError(ErrorKind::Resolution, ppos, e.what());
      }
    });
    if (peek().type != Tok::End) unexpected({"end of statement"});
    return s;
  }

 private:
  // -------------------------------------------------------------- tokens

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  const Token& take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  bool at_kw(std::string_view kw, std::size_t k = 0) const {
    return peek(k).type == Tok::Ident && peek(k).text == kw;
  }
  bool at_punct(std::string_view p) const { return peek().type == Tok::Punct && peek().text == p; }
  bool at_name() const { return peek().type == Tok::Ident || peek().type == Tok::String; }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const auto& t = peek();
    std::string found = t.type == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(ErrorKind::Syntax, t.pos, "unexpected " + found, std::move(expected));
  }

  void expect(std::string_view p) {
    if (!at_punct(p)) unexpected({"'" + std::string(p) + "'"});
    take();
  }
  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) unexpected({std::string(kw)});
    take();
  }
  bool accept(std::string_view p) {
    if (!at_punct(p)) return false;
    take();
    return true;
  }
  bool accept_kw(std::string_view kw) {
    if (!at_kw(kw)) return false;
    take();
    return true;
  }

  std::pair<std::string, SourcePos> name(const std::string& what) {
    if (!at_name()) unexpected({what});
    const auto& t = take();
    return {t.text, t.pos};
  }

  // -------------------------------------------------------------- declarations

  void declaration() {
    const auto pos = peek().pos;
    try {
      if (accept_kw("graph")) return graph_decl(pos);
      if (accept_kw("footprint")) return footprint_decl(pos);
      if (accept_kw("morphism")) return morphism_decl(pos);
      if (accept_kw("sketch")) return sketch_decl(pos);
      if (accept_kw("condition")) return condition_decl(pos);
      if (accept_kw("constraint")) return constraint_decl(pos);
      if (accept_kw("rule")) return rule_decl(pos);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.kind() == ErrorKind::Resolution ? ErrorKind::Resolution : ErrorKind::Validation, pos, e.what());
    }
    unexpected({"graph", "footprint", "morphism", "sketch", "condition", "constraint", "rule"});
  }

  void check_fresh(DeclKind kind, const std::string& n, const SourcePos& pos) const {
    if (doc_.has(kind, n))
      throw ParseError(ErrorKind::Validation, pos, std::string(to_string(kind)) + " '" + n + "' is already declared");
  }

  void graph_decl(const SourcePos& pos) {
    auto [n, npos_] = name("graph name");
    check_fresh(DeclKind::Graph, n, npos_);
    doc_.add_graph(n, graph_literal(nullptr), pos);
  }

  void footprint_decl(const SourcePos& pos) {
    auto [n, npos_] = name("footprint name");
    check_fresh(DeclKind::Footprint, n, npos_);
    expect("{");
    std::vector<PredicateSymbol> preds;
    FootprintDecl decl;
    while (accept_kw("pred")) {
      auto [p, ppos] = name("predicate name");
      for (const auto& q : preds)
        if (q.name == p) throw ParseError(ErrorKind::Validation, ppos, "predicate '" + p + "' is declared twice");
      expect_kw("arity");
      Graph arity;
      if (at_punct("{")) {
        arity = graph_literal(nullptr);
      } else {
        auto [g, gpos] = name("arity graph name or graph literal");
        arity = graph_ref(g, gpos);
        decl.arity_refs[p] = g;
      }
      preds.push_back({p, arity});
      accept(";");
    }
    if (!at_punct("}")) unexpected({"pred", "'}'"});
    take();
    decl.footprint = Footprint(std::move(preds));
    doc_.add_footprint(n, std::move(decl), pos);
  }

  void morphism_decl(const SourcePos& pos) {
    auto [n, npos_] = name("morphism name");
    check_fresh(DeclKind::Morphism, n, npos_);
    expect(":");
    auto [d, dpos] = name("domain graph name");
    expect("->");
    auto [c, cpos] = name("codomain graph name");
    const Graph& dom = graph_ref(d, dpos);
    const Graph& cod = graph_ref(c, cpos);
    auto raw = map_body();
    doc_.add_morphism(n, MorphismDecl{d, c, resolve(raw, dom, cod)}, pos);
  }

  void sketch_decl(const SourcePos& pos) {
    auto [n, npos_] = name("sketch name");
    check_fresh(DeclKind::Sketch, n, npos_);
    expect_kw("over");
    auto [fp, fppos] = name("footprint name");
    if (!doc_.has(DeclKind::Footprint, fp))
      throw ParseError(ErrorKind::Resolution, fppos, "no footprint named '" + fp + "'");
    const Footprint& footprint = doc_.footprint(fp).footprint;
    expect_kw("on");
    SketchDecl decl;
    decl.footprint = fp;
    Graph ctx;
    if (at_punct("{")) {
      ctx = graph_literal(nullptr);
    } else {
      auto [g, gpos] = name("context graph name or graph literal");
      ctx = graph_ref(g, gpos);
      decl.graph = g;
    }
    expect("{");
    std::vector<Statement> statements;
    while (at_kw("stmt")) {
      statements.push_back(statement(ctx, [&](const std::string& p, const SourcePos& ppos) -> const PredicateSymbol& {
        if (auto* sym = footprint.find(p)) return *sym;
        throw ParseError(ErrorKind::Resolution, ppos, "footprint '" + fp + "' has no predicate '" + p + "'");
      }));
      accept(";");
    }
    if (!at_punct("}")) unexpected({"stmt", "'}'"});
    take();
    decl.sketch = Sketch(ctx, std::move(statements));
    doc_.add_sketch(n, std::move(decl), pos);
  }

  void condition_decl(const SourcePos& pos) {
    auto [n, npos_] = name("condition name");
    check_fresh(DeclKind::Condition, n, npos_);
    expect_kw("over");
    ConditionDecl decl{std::nullopt, Condition::truth(Graph())};
    Graph ctx;
    if (at_punct("{")) {
      ctx = graph_literal(nullptr);
    } else {
      auto [g, gpos] = name("context graph name or graph literal");
      ctx = graph_ref(g, gpos);
      decl.graph = g;
    }
    expect("=");
    decl.condition = expression(ctx);
    auto problems = well_formed(decl.condition);
    if (!problems.empty()) throw ParseError(ErrorKind::Validation, pos, "condition '" + n + "': " + problems.front());
    doc_.add_condition(n, std::move(decl), pos);
  }

  void constraint_decl(const SourcePos& pos) {
    auto [n, npos_] = name("constraint name");
    check_fresh(DeclKind::Constraint, n, npos_);
    expect("=");
    expect("(");
    auto [c, cpos] = name("condition name");
    if (!doc_.has(DeclKind::Condition, c)) throw ParseError(ErrorKind::Resolution, cpos, "no condition named '" + c + "'");
    const Condition& cond = doc_.condition(c);
    expect(",");
    ConstraintDecl decl{c, std::nullopt};
    if (accept_kw("initial")) {
      if (!is_closed(cond))
        throw ParseError(ErrorKind::Validation, cpos, "an initial anchor needs a closed condition; '" + c + "' is not");
    } else {
      auto [m, mpos] = name("anchor morphism name or initial");
      if (!doc_.has(DeclKind::Morphism, m)) throw ParseError(ErrorKind::Resolution, mpos, "no morphism named '" + m + "'");
      if (!(doc_.morphism(m).dom() == cond.context()))
        throw ParseError(ErrorKind::Validation, mpos, "anchor '" + m + "' does not start at the context of '" + c + "'");
      decl.anchor = m;
    }
    expect(")");
    doc_.add_constraint(n, std::move(decl), pos);
  }

  void rule_decl(const SourcePos& pos) {
    auto [n, npos_] = name("rule name");
    check_fresh(DeclKind::Rule, n, npos_);
    expect("=");
    expect_kw("morphism");
    auto [m, mpos] = name("morphism name");
    if (!doc_.has(DeclKind::Morphism, m)) throw ParseError(ErrorKind::Resolution, mpos, "no morphism named '" + m + "'");
    expect_kw("from");
    auto [s, spos] = name("sketch name");
    if (!doc_.has(DeclKind::Sketch, s)) throw ParseError(ErrorKind::Resolution, spos, "no sketch named '" + s + "'");
    expect_kw("to");
    auto [t, tpos] = name("sketch name");
    if (!doc_.has(DeclKind::Sketch, t)) throw ParseError(ErrorKind::Resolution, tpos, "no sketch named '" + t + "'");
    auto sm = SketchMorphism::make(doc_.sketch(s), doc_.sketch(t), doc_.morphism(m));
    doc_.add_rule(n, RuleDecl{m, s, t, Rule::from_sketch_morphism(sm, n)}, pos);
  }

  // -------------------------------------------------------------- pieces

  const Graph& graph_ref(const std::string& n, const SourcePos& pos) const {
    if (!doc_.has(DeclKind::Graph, n)) throw ParseError(ErrorKind::Resolution, pos, "no graph named '" + n + "'");
    return doc_.graph(n);
  }

  // `{ nodes ...; edges ... }`, optionally extending `base`.
  Graph graph_literal(const Graph* base) {
    expect("{");
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::set<std::string> node_set, edge_set;
    if (base) {
      for (const auto& n : base->nodes()) nodes.push_back(n), node_set.insert(n);
      for (const auto& e : base->edges()) edges.push_back(e), edge_set.insert(e.name);
    }
    if (accept_kw("nodes")) {
      while (at_name() && !at_kw("edges")) {
        auto [n, pos] = name("node name");
        if (!node_set.insert(n).second) throw ParseError(ErrorKind::Validation, pos, "node '" + n + "' is declared twice");
        nodes.push_back(n);
      }
      accept(";");
    }
    if (accept_kw("edges")) {
      if (!at_punct("}") && !at_punct(";")) {
        do {
          auto [e, epos] = name("edge name");
          if (!edge_set.insert(e).second) throw ParseError(ErrorKind::Validation, epos, "edge '" + e + "' is declared twice");
          expect(":");
          auto [s, spos] = name("source node");
          if (!node_set.count(s)) throw ParseError(ErrorKind::Resolution, spos, "edge '" + e + "' has undeclared source node '" + s + "'");
          expect("->");
          auto [t, tpos] = name("target node");
          if (!node_set.count(t)) throw ParseError(ErrorKind::Resolution, tpos, "edge '" + e + "' has undeclared target node '" + t + "'");
          edges.push_back({e, s, t});
        } while (accept(","));
      }
      accept(";");
    }
    if (!at_punct("}")) unexpected(base || !nodes.empty() || !edges.empty() ? std::vector<std::string>{"edges", "'}'"}
                                                                            : std::vector<std::string>{"nodes", "edges", "'}'"});
    take();
    return Graph(std::move(nodes), std::move(edges));
  }

  std::vector<RawEntry> entries() {
    std::vector<RawEntry> out;
    if (at_punct("}") || at_punct(";")) return out;
    do {
      auto [f, fpos] = name("element name");
      expect("->");
      auto [t, tpos] = name("image name");
      out.push_back({f, fpos, t, tpos});
    } while (accept(","));
    return out;
  }

  RawMap map_body() {
    RawMap raw;
    raw.pos = peek().pos;
    expect("{");
    if (at_kw("nodes") || at_kw("edges")) {
      raw.sectioned = true;
      if (accept_kw("nodes")) {
        raw.nodes = entries();
        accept(";");
      }
      if (accept_kw("edges")) {
        raw.edges = entries();
        accept(";");
      }
    } else {
      raw.flat = entries();
    }
    if (!at_punct("}")) unexpected({raw.sectioned ? "edges" : "','", "'}'"});
    take();
    return raw;
  }

  GraphMorphism resolve(const RawMap& raw, const Graph& dom, const Graph& cod) const {
    std::map<std::string, std::string> nodes, edges;
    auto put = [](std::map<std::string, std::string>& m, const RawEntry& e, const char* what) {
      if (!m.emplace(e.from, e.to).second)
        throw ParseError(ErrorKind::Validation, e.from_pos, std::string(what) + " '" + e.from + "' is mapped twice");
    };
    auto node = [&](const RawEntry& e) {
      if (!dom.has_node(e.from)) throw ParseError(ErrorKind::Resolution, e.from_pos, "no node '" + e.from + "' in the domain");
      if (!cod.has_node(e.to)) throw ParseError(ErrorKind::Resolution, e.to_pos, "no node '" + e.to + "' in the codomain");
      put(nodes, e, "node");
    };
    auto edge = [&](const RawEntry& e) {
      if (!dom.has_edge(e.from)) throw ParseError(ErrorKind::Resolution, e.from_pos, "no edge '" + e.from + "' in the domain");
      if (!cod.has_edge(e.to)) throw ParseError(ErrorKind::Resolution, e.to_pos, "no edge '" + e.to + "' in the codomain");
      put(edges, e, "edge");
    };
    for (const auto& e : raw.nodes) node(e);
    for (const auto& e : raw.edges) edge(e);
    for (const auto& e : raw.flat) {
      bool is_edge = dom.has_edge(e.from), is_node = dom.has_node(e.from);
      if (is_edge && is_node)
        throw ParseError(ErrorKind::Validation, e.from_pos,
                         "'" + e.from + "' names both a node and an edge; use the nodes/edges sections");
      if (is_edge)
        edge(e);
      else if (is_node)
        node(e);
      else
        throw ParseError(ErrorKind::Resolution, e.from_pos, "no node or edge '" + e.from + "' in the domain");
    }
    try {
      return GraphMorphism::from_names(dom, cod, nodes, edges);
    } catch (const Error& err) {
      throw ParseError(ErrorKind::Validation, raw.pos, err.what());
    }
  }

  template <typename Lookup>
  Statement statement(const Graph& ctx, Lookup&& lookup) {
    expect_kw("stmt");
    auto [p, ppos] = name("predicate name");
    const PredicateSymbol& sym = lookup(p, ppos);
    expect_kw("via");
    auto raw = map_body();
    return Statement(sym, resolve(raw, sym.arity, ctx));
  }

  Condition expression(const Graph& ctx) {
    if (accept_kw("true")) return Condition::truth(ctx);
    if (accept_kw("false")) return Condition::falsity(ctx);
    if (at_kw("stmt")) {
      auto s = statement(ctx, [&](const std::string& p, const SourcePos& ppos) -> const PredicateSymbol& {
        try {
          return doc_.predicate(p);
        } catch (const Error& e) {
          throw ParseError(ErrorKind::Resolution, ppos, e.what());
        }
      });
      return Condition::stmt(ctx, std::move(s));
    }
    if (at_kw("and") || at_kw("or")) {
      bool conj = take().text == "and";
      expect("(");
      std::vector<Condition> kids;
      if (!at_punct(")")) {
        do kids.push_back(expression(ctx));
        while (accept(","));
      }
      expect(")");
      return conj ? Condition::conj(ctx, std::move(kids)) : Condition::disj(ctx, std::move(kids));
    }
    if (accept_kw("not")) return Condition::negation(expression(ctx));
    if (accept_kw("implies")) {
      expect("(");
      auto lhs = expression(ctx);
      expect(",");
      auto rhs = expression(ctx);
      expect(")");
      return implication(lhs, rhs);
    }
    if (at_kw("exists") || at_kw("forall")) {
      bool existential = take().text == "exists";
      auto guard = accept_kw("given") ? expression(ctx) : Condition::truth(ctx);
      auto shift = shift_expr(ctx);
      expect(".");
      auto body = expression(shift.cod());
      return existential ? Condition::exists(ctx, guard, shift, body) : Condition::forall(ctx, guard, shift, body);
    }
    if (accept("(")) {
      auto inner = expression(ctx);
      expect(")");
      return inner;
    }
    unexpected({"true", "false", "stmt", "and", "or", "not", "implies", "exists", "forall", "'('"});
  }

  GraphMorphism shift_expr(const Graph& ctx) {
    if (accept_kw("extend")) {
      auto bigger = graph_literal(&ctx);
      return inclusion(ctx, bigger);
    }
    if (accept_kw("map")) {
      auto raw = map_body();
      expect_kw("to");
      auto cod = graph_literal(nullptr);
      return resolve(raw, ctx, cod);
    }
    if (!at_name()) unexpected({"extend", "map", "morphism name"});
    auto [m, mpos] = name("morphism name");
    if (!doc_.has(DeclKind::Morphism, m)) throw ParseError(ErrorKind::Resolution, mpos, "no morphism named '" + m + "'");
    const auto& mor = doc_.morphism(m);
    if (!(mor.dom() == ctx))
      throw ParseError(ErrorKind::Validation, mpos, "morphism '" + m + "' does not start at the current context");
    return mor;
  }

  Document& doc_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---------------------------------------------------------------- printing helpers

std::string pad(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

std::string entry_list(const std::vector<std::pair<std::string, std::string>>& es) {
  std::string out;
  for (std::size_t i = 0; i < es.size(); ++i) out += (i ? ", " : "") + quote_name(es[i].first) + " -> " + quote_name(es[i].second);
  return out;
}

std::string binding_entries(const GraphMorphism& m) {
  const Graph& a = m.dom();
  bool ambiguous = false;
  for (const auto& n : a.nodes()) ambiguous = ambiguous || a.has_edge(n);
  if (ambiguous) return print_morphism_entries(m);
  std::vector<std::pair<std::string, std::string>> es;
  std::vector<bool> forced(a.node_count(), false);
  for (std::size_t e = 0; e < a.edge_count(); ++e) {
    es.push_back({a.edge_name(e), m.cod().edge_name(m.edge(e))});
    forced[a.source(e)] = forced[a.target(e)] = true;
  }
  for (std::size_t v = 0; v < a.node_count(); ++v)
    if (!forced[v]) es.push_back({a.node_name(v), m.cod().node_name(m.node(v))});
  return es.empty() ? "{ }" : "{ " + entry_list(es) + " }";
}

std::string extension_literal(const GraphMorphism& inc) {
  const Graph& small = inc.dom();
  const Graph& big = inc.cod();
  std::string nodes, edges;
  for (const auto& n : big.nodes())
    if (!small.has_node(n)) nodes += " " + quote_name(n);
  for (const auto& e : big.edges())
    if (!small.has_edge(e.name))
      edges += (edges.empty() ? " " : ", ") + quote_name(e.name) + ": " + quote_name(e.source) + " -> " + quote_name(e.target);
  if (nodes.empty() && edges.empty()) return "{ }";
  std::string out = "{";
  if (!nodes.empty()) out += " nodes" + nodes + (edges.empty() ? "" : ";");
  if (!edges.empty()) out += " edges" + edges;
  return out + " }";
}

bool atomic(const Condition& c) {
  return c.kind() == ConditionKind::Statement || c.kind() == ConditionKind::True || c.kind() == ConditionKind::False;
}

std::string shift_text(const GraphMorphism& shift, const std::map<std::string, MorphismDecl>* named) {
  if (is_inclusion(shift)) return "extend " + extension_literal(shift);
  if (named)
    for (const auto& [n, decl] : *named)
      if (decl.morphism == shift) return quote_name(n);
  return "map " + print_morphism_entries(shift) + " to " + print_graph_literal(shift.cod());
}

}  // namespace

// ---------------------------------------------------------------- public

ParseError::ParseError(ErrorKind kind, SourcePos pos, const std::string& message, std::vector<std::string> expected)
    : Error(kind, format_message(kind, pos, message, expected), Verbatim{}),
      pos_(std::move(pos)),
      message_(message),
      expected_(std::move(expected)) {}

std::string_view to_string(DeclKind kind) {
  switch (kind) {
    case DeclKind::Footprint: return "footprint";
    case DeclKind::Graph: return "graph";
    case DeclKind::Morphism: return "morphism";
    case DeclKind::Sketch: return "sketch";
    case DeclKind::Condition: return "condition";
    case DeclKind::Constraint: return "constraint";
    case DeclKind::Rule: return "rule";
  }
  return "declaration";
}

bool Document::has(DeclKind kind, std::string_view name) const {
  std::string n(name);
  switch (kind) {
    case DeclKind::Footprint: return footprints_.count(n) > 0;
    case DeclKind::Graph: return graphs_.count(n) > 0;
    case DeclKind::Morphism: return morphisms_.count(n) > 0;
    case DeclKind::Sketch: return sketches_.count(n) > 0;
    case DeclKind::Condition: return conditions_.count(n) > 0;
    case DeclKind::Constraint: return constraints_.count(n) > 0;
    case DeclKind::Rule: return rules_.count(n) > 0;
  }
  return false;
}

namespace {

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, std::string_view name, DeclKind kind) {
  auto it = m.find(std::string(name));
  if (it == m.end()) throw Error(ErrorKind::Resolution, "no " + std::string(to_string(kind)) + " named '" + std::string(name) + "'");
  return it->second;
}

}  // namespace

const Graph& Document::graph(std::string_view name) const { return lookup(graphs_, name, DeclKind::Graph); }
const GraphMorphism& Document::morphism(std::string_view name) const {
  return lookup(morphisms_, name, DeclKind::Morphism).morphism;
}
const Sketch& Document::sketch(std::string_view name) const { return lookup(sketches_, name, DeclKind::Sketch).sketch; }
const Condition& Document::condition(std::string_view name) const {
  return lookup(conditions_, name, DeclKind::Condition).condition;
}
const FootprintDecl& Document::footprint(std::string_view name) const {
  return lookup(footprints_, name, DeclKind::Footprint);
}

const PredicateSymbol& Document::predicate(std::string_view name) const {
  const PredicateSymbol* found = nullptr;
  for (const auto& [fname, decl] : footprints_) {
    const auto* p = decl.footprint.find(name);
    if (!p) continue;
    if (found && !(found->arity == p->arity))
      throw Error(ErrorKind::Resolution, "predicate '" + std::string(name) + "' has different arities in different footprints");
    found = p;
  }
  if (!found) throw Error(ErrorKind::Resolution, "no predicate named '" + std::string(name) + "' in any footprint");
  return *found;
}

Constraint Document::constraint(std::string_view name, const Sketch& target) const {
  const auto& decl = lookup(constraints_, name, DeclKind::Constraint);
  const auto& cond = condition(decl.condition);
  if (!decl.anchor) return Constraint::global(cond, target.context());
  const auto& anchor = morphism(*decl.anchor);
  if (!(anchor.cod() == target.context()))
    throw Error(ErrorKind::DomainMismatch, "anchor of constraint '" + std::string(name) + "' does not end at the sketch's context");
  return Constraint::make(cond, anchor);
}

Rule Document::rule(std::string_view name) const {
  if (auto it = rules_.find(std::string(name)); it != rules_.end()) return it->second.rule;
  if (auto it = conditions_.find(std::string(name)); it != conditions_.end())
    return rule_from_condition(it->second.condition, std::string(name));
  throw Error(ErrorKind::Resolution, "no rule or rule-shaped condition named '" + std::string(name) + "'");
}

void Document::claim(DeclKind kind, const std::string& name, SourcePos pos) {
  if (has(kind, name)) throw Error(ErrorKind::Validation, std::string(to_string(kind)) + " '" + name + "' is already declared");
  entries_.push_back({kind, name, std::move(pos)});
}

void Document::add_footprint(std::string name, FootprintDecl decl, SourcePos pos) {
  claim(DeclKind::Footprint, name, std::move(pos));
  footprints_.emplace(std::move(name), std::move(decl));
}
void Document::add_graph(std::string name, Graph g, SourcePos pos) {
  g.require_valid("declared graph");
  claim(DeclKind::Graph, name, std::move(pos));
  graphs_.emplace(std::move(name), std::move(g));
}
void Document::add_morphism(std::string name, MorphismDecl decl, SourcePos pos) {
  claim(DeclKind::Morphism, name, std::move(pos));
  morphisms_.emplace(std::move(name), std::move(decl));
}
void Document::add_sketch(std::string name, SketchDecl decl, SourcePos pos) {
  claim(DeclKind::Sketch, name, std::move(pos));
  sketches_.emplace(std::move(name), std::move(decl));
}
void Document::add_condition(std::string name, ConditionDecl decl, SourcePos pos) {
  claim(DeclKind::Condition, name, std::move(pos));
  conditions_.emplace(std::move(name), std::move(decl));
}
void Document::add_constraint(std::string name, ConstraintDecl decl, SourcePos pos) {
  claim(DeclKind::Constraint, name, std::move(pos));
  constraints_.emplace(std::move(name), std::move(decl));
}
void Document::add_rule(std::string name, RuleDecl decl, SourcePos pos) {
  claim(DeclKind::Rule, name, std::move(pos));
  rules_.emplace(std::move(name), std::move(decl));
}

bool operator==(const Document& a, const Document& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i)
    if (a.entries_[i].kind != b.entries_[i].kind || a.entries_[i].name != b.entries_[i].name) return false;
  return a.footprints_ == b.footprints_ && a.graphs_ == b.graphs_ && a.morphisms_ == b.morphisms_ &&
         a.sketches_ == b.sketches_ && a.conditions_ == b.conditions_ && a.constraints_ == b.constraints_ &&
         a.rules_ == b.rules_;
}

void parse_into(Document& doc, std::string_view text, std::string_view source) {
  Parser(doc, lex(text, std::string(source))).document();
}

Document parse_document(std::string_view text, std::string_view source) {
  Document doc;
  parse_into(doc, text, source);
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Resolution, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

Statement parse_statement(const Document& doc, std::string_view text, const Graph& context) {
  Document scratch = doc;
  return Parser(scratch, lex(text, "<statement>")).lone_statement(context);
}

std::string quote_name(std::string_view name) {
  bool plain = !name.empty() && !is_keyword(name) && std::all_of(name.begin(), name.end(), ident_char);
  if (plain) return std::string(name);
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string print_graph_literal(const Graph& g) {
  if (g.empty()) return "{ }";
  std::string out = "{ nodes";
  for (const auto& n : g.nodes()) out += " " + quote_name(n);
  if (g.edge_count() > 0) {
    out += "; edges ";
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edges()[e];
      out += (e ? ", " : "") + quote_name(edge.name) + ": " + quote_name(edge.source) + " -> " + quote_name(edge.target);
    }
  }
  return out + " }";
}

std::string print_morphism_entries(const GraphMorphism& m) {
  std::vector<std::pair<std::string, std::string>> nodes, edges;
  for (std::size_t v = 0; v < m.dom().node_count(); ++v) nodes.push_back({m.dom().node_name(v), m.cod().node_name(m.node(v))});
  for (std::size_t e = 0; e < m.dom().edge_count(); ++e) edges.push_back({m.dom().edge_name(e), m.cod().edge_name(m.edge(e))});
  if (nodes.empty()) return "{ }";
  std::string out = "{ nodes " + entry_list(nodes);
  if (!edges.empty()) out += "; edges " + entry_list(edges);
  return out + " }";
}

std::string print_condition(const Condition& c, const std::map<std::string, MorphismDecl>* named, int indent) {
  switch (c.kind()) {
    case ConditionKind::True:
      return "true";
    case ConditionKind::False:
      return "false";
    case ConditionKind::Statement:
      return "stmt " + quote_name(c.statement().predicate().name) + " via " + binding_entries(c.statement().binding());
    case ConditionKind::And:
    case ConditionKind::Or: {
      std::string head = c.kind() == ConditionKind::And ? "and(" : "or(";
      const auto& kids = c.children();
      if (kids.empty()) return head + ")";
      if (std::all_of(kids.begin(), kids.end(), atomic) && kids.size() <= 1) return head + print_condition(kids[0], named, indent) + ")";
      std::string out = head + "\n";
      for (std::size_t i = 0; i < kids.size(); ++i)
        out += pad(indent + 2) + print_condition(kids[i], named, indent + 2) + (i + 1 < kids.size() ? ",\n" : "\n");
      return out + pad(indent) + ")";
    }
    case ConditionKind::Not:
      return "not " + print_condition(c.child(), named, indent);
    case ConditionKind::Exists:
    case ConditionKind::Forall: {
      bool existential = c.kind() == ConditionKind::Exists;
      if (existential && c.guard().kind() != ConditionKind::True && c.shift() == identity(c.context()))
        return "implies(\n" + pad(indent + 2) + print_condition(c.guard(), named, indent + 2) + ",\n" + pad(indent + 2) +
               print_condition(c.body(), named, indent + 2) + "\n" + pad(indent) + ")";
      std::string out = existential ? "exists" : "forall";
      if (c.guard().kind() != ConditionKind::True) out += " given " + print_condition(c.guard(), named, indent + 2);
      out += " " + shift_text(c.shift(), named) + " .\n" + pad(indent + 2) + print_condition(c.body(), named, indent + 2);
      return out;
    }
  }
  throw Error(ErrorKind::Internal, "unknown condition kind");
}

std::string print_document(const Document& doc) {
  std::ostringstream out;
  std::map<std::string, MorphismDecl> declared;
  bool first = true;
  for (const auto& entry : doc.entries()) {
    if (!first) out << "\n";
    first = false;
    const std::string n = quote_name(entry.name);
    switch (entry.kind) {
      case DeclKind::Graph:
        out << "graph " << n << " " << print_graph_literal(doc.graph(entry.name)) << "\n";
        break;
      case DeclKind::Footprint: {
        const auto& decl = doc.footprint(entry.name);
        out << "footprint " << n << " {\n";
        for (const auto& p : decl.footprint.predicates()) {
          auto ref = decl.arity_refs.find(p.name);
          out << "  pred " << quote_name(p.name) << " arity "
              << (ref != decl.arity_refs.end() ? quote_name(ref->second) : print_graph_literal(p.arity)) << ";\n";
        }
        out << "}\n";
        break;
      }
      case DeclKind::Morphism: {
        const auto& decl = doc.morphisms().at(entry.name);
        out << "morphism " << n << " : " << quote_name(decl.dom) << " -> " << quote_name(decl.cod) << " "
            << print_morphism_entries(decl.morphism) << "\n";
        declared.emplace(entry.name, decl);
        break;
      }
      case DeclKind::Sketch: {
        const auto& decl = doc.sketches().at(entry.name);
        out << "sketch " << n << " over " << quote_name(decl.footprint) << " on "
            << (decl.graph ? quote_name(*decl.graph) : print_graph_literal(decl.sketch.context())) << " {\n";
        for (const auto& s : decl.sketch.statements())
          out << "  stmt " << quote_name(s.predicate().name) << " via " << binding_entries(s.binding()) << ";\n";
        out << "}\n";
        break;
      }
      case DeclKind::Condition: {
        const auto& decl = doc.conditions().at(entry.name);
        out << "condition " << n << " over "
            << (decl.graph ? quote_name(*decl.graph) : print_graph_literal(decl.condition.context())) << " =\n  "
            << print_condition(decl.condition, &declared, 2) << "\n";
        break;
      }
      case DeclKind::Constraint: {
        const auto& decl = doc.constraints().at(entry.name);
        out << "constraint " << n << " = (" << quote_name(decl.condition) << ", "
            << (decl.anchor ? quote_name(*decl.anchor) : "initial") << ")\n";
        break;
      }
      case DeclKind::Rule: {
        const auto& decl = doc.rules().at(entry.name);
        out << "rule " << n << " = morphism " << quote_name(decl.morphism) << " from " << quote_name(decl.from) << " to "
            << quote_name(decl.to) << "\n";
        break;
      }
    }
  }
  return out.str();
}

}  // namespace gsketch

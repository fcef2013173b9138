#include "gsketch/sketch.hpp"

#include <algorithm>
#include <numeric>

namespace gsketch {

Footprint::Footprint(std::vector<PredicateSymbol> predicates) : predicates_(std::move(predicates)) {
  std::sort(predicates_.begin(), predicates_.end(),
            [](const PredicateSymbol& a, const PredicateSymbol& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < predicates_.size(); ++i) {
    predicates_[i].arity.require_valid("arity of '" + predicates_[i].name + "'");
    if (i > 0 && predicates_[i].name == predicates_[i - 1].name)
      throw Error(ErrorKind::Precondition, "duplicate predicate '" + predicates_[i].name + "'");
  }
}

const PredicateSymbol* Footprint::find(std::string_view name) const {
  auto it = std::lower_bound(predicates_.begin(), predicates_.end(), name,
                             [](const PredicateSymbol& p, std::string_view n) { return p.name < n; });
  if (it == predicates_.end() || it->name != name) return nullptr;
  return &*it;
}

const PredicateSymbol& Footprint::at(std::string_view name) const {
  if (auto* p = find(name)) return *p;
  throw Error(ErrorKind::Precondition, "unknown predicate '" + std::string(name) + "'");
}

Statement::Statement(PredicateSymbol predicate, GraphMorphism binding)
    : predicate_(std::move(predicate)), binding_(std::move(binding)) {
  if (!(binding_.dom() == predicate_.arity))
    throw Error(ErrorKind::DomainMismatch, "binding of '" + predicate_.name + "' does not start at its arity");
}

bool operator==(const Statement& a, const Statement& b) {
  return a.predicate_.name == b.predicate_.name && a.binding_ == b.binding_;
}

bool operator<(const Statement& a, const Statement& b) {
  if (a.predicate_.name != b.predicate_.name) return a.predicate_.name < b.predicate_.name;
  auto an = a.binding_.node_map(), bn = b.binding_.node_map();
  if (!std::equal(an.begin(), an.end(), bn.begin(), bn.end()))
    return std::lexicographical_compare(an.begin(), an.end(), bn.begin(), bn.end());
  auto ae = a.binding_.edge_map(), be = b.binding_.edge_map();
  return std::lexicographical_compare(ae.begin(), ae.end(), be.begin(), be.end());
}

Statement translate_statement(const GraphMorphism& phi, const Statement& s) {
  if (!(s.context() == phi.dom()))
    throw Error(ErrorKind::DomainMismatch, "statement '" + s.predicate().name + "' is not over the morphism's domain");
  return Statement(s.predicate(), compose(s.binding(), phi));
}

Sketch::Sketch(Graph context, std::vector<Statement> statements)
    : context_(std::move(context)), statements_(std::move(statements)) {
  context_.require_valid("sketch context");
  for (const auto& s : statements_)
    if (!(s.context() == context_))
      throw Error(ErrorKind::DomainMismatch, "statement '" + s.predicate().name + "' is not over the sketch context");
  std::sort(statements_.begin(), statements_.end());
  statements_.erase(std::unique(statements_.begin(), statements_.end()), statements_.end());
}

bool Sketch::contains(const Statement& s) const {
  if (!(s.context() == context_)) return false;
  auto it = std::lower_bound(statements_.begin(), statements_.end(), s);
  return it != statements_.end() && *it == s;
}

bool is_sketch_morphism(const GraphMorphism& phi, const Sketch& from, const Sketch& to) {
  if (!(phi.dom() == from.context()) || !(phi.cod() == to.context()))
    throw Error(ErrorKind::DomainMismatch, "morphism endpoints differ from the sketch contexts");
  return std::all_of(from.statements().begin(), from.statements().end(),
                     [&](const Statement& s) { return to.contains(translate_statement(phi, s)); });
}

SketchMorphism SketchMorphism::make(Sketch dom, Sketch cod, GraphMorphism map) {
  if (!is_sketch_morphism(map, dom, cod))
    throw Error(ErrorKind::NotASketchMorphism, "context morphism does not preserve statements");
  return SketchMorphism{std::move(dom), std::move(cod), std::move(map)};
}

SketchMorphism SketchMorphism::identity(const Sketch& s) { return {s, s, gsketch::identity(s.context())}; }

SketchMorphism compose(const SketchMorphism& f, const SketchMorphism& g) {
  return {f.dom, g.cod, compose(f.map, g.map)};
}

namespace {
std::vector<Statement> translate_all(const GraphMorphism& phi, const std::vector<Statement>& ss) {
  std::vector<Statement> out;
  out.reserve(ss.size());
  for (const auto& s : ss) out.push_back(translate_statement(phi, s));
  return out;
}
}  // namespace

SketchPushout sketch_pushout(const SketchMorphism& m, const SketchMorphism& r) {
  if (!(m.dom == r.dom)) throw Error(ErrorKind::DomainMismatch, "sketch pushout: span legs start at different sketches");
  auto po = pushout(m.map, r.map);
  auto statements = translate_all(po.left, m.cod.statements());
  auto from_a = translate_all(po.right, r.cod.statements());
  statements.insert(statements.end(), from_a.begin(), from_a.end());
  Sketch D(po.object, std::move(statements));
  return {D, SketchMorphism{m.cod, D, po.left}, SketchMorphism{r.cod, D, po.right}};
}

SketchPullback sketch_pullback(const SketchMorphism& m, const SketchMorphism& r) {
  if (!(m.cod == r.cod)) throw Error(ErrorKind::DomainMismatch, "sketch pullback: cospan legs end at different sketches");
  auto pb = pullback(m.map, r.map);
  std::vector<const PredicateSymbol*> predicates;
  for (const auto& s : m.dom.statements())
    if (std::none_of(predicates.begin(), predicates.end(), [&](auto* p) { return p->name == s.predicate().name; }))
      predicates.push_back(&s.predicate());

  // Stm(D) restricted to predicates that can possibly qualify.
  std::vector<Statement> statements;
  for (const auto* p : predicates)
    for (const auto& alpha : enumerate_morphisms(p->arity, pb.object)) {
      Statement sigma(*p, alpha);
      if (m.dom.contains(translate_statement(pb.left, sigma)) && r.dom.contains(translate_statement(pb.right, sigma)))
        statements.push_back(std::move(sigma));
    }
  Sketch D(pb.object, std::move(statements));
  return {D, SketchMorphism{D, m.dom, pb.left}, SketchMorphism{D, r.dom, pb.right}};
}

// ---------------------------------------------------------------- multi sketches

void MultiSketch::validate() const {
  context.require_valid("multi-sketch context");
  for (const auto& [id, s] : statements)
    if (!(s.context() == context))
      throw Error(ErrorKind::DomainMismatch, "statement '" + id + "' is not over the multi-sketch context");
}

MultiSketchMorphism MultiSketchMorphism::make(MultiSketch dom, MultiSketch cod, GraphMorphism map,
                                              std::map<std::string, std::string> ids) {
  if (!(map.dom() == dom.context) || !(map.cod() == cod.context))
    throw Error(ErrorKind::DomainMismatch, "multi-sketch morphism endpoints differ from the contexts");
  for (const auto& [id, s] : dom.statements) {
    auto it = ids.find(id);
    if (it == ids.end()) throw Error(ErrorKind::NotASketchMorphism, "identifier '" + id + "' is not mapped");
    auto target = cod.statements.find(it->second);
    if (target == cod.statements.end())
      throw Error(ErrorKind::NotASketchMorphism, "identifier '" + it->second + "' is not in the codomain");
    if (!(translate_statement(map, s) == target->second))
      throw Error(ErrorKind::NotASketchMorphism, "identifier '" + id + "' is mapped to a different statement");
  }
  if (ids.size() != dom.statements.size())
    throw Error(ErrorKind::NotASketchMorphism, "identifier map has entries outside the domain");
  return {std::move(dom), std::move(cod), std::move(map), std::move(ids)};
}

MultiPushout multi_pushout(const MultiSketchMorphism& m, const MultiSketchMorphism& r) {
  if (!(m.dom == r.dom)) throw Error(ErrorKind::DomainMismatch, "multi pushout: span legs start at different sketches");
  auto po = pushout(m.map, r.map);

  // Pushout of identifier sets in Set.
  std::vector<std::string> tagged;
  std::vector<const Statement*> images;
  std::map<std::string, std::size_t> index;
  for (const auto& [id, _] : m.cod.statements) {
    index["L:" + id] = tagged.size();
    tagged.push_back("L:" + id);
  }
  for (const auto& [id, _] : r.cod.statements) {
    index["R:" + id] = tagged.size();
    tagged.push_back("R:" + id);
  }
  std::vector<std::size_t> parent(tagged.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [id, _] : m.dom.statements) parent[find(index["L:" + m.ids.at(id)])] = find(index["R:" + r.ids.at(id)]);
  std::map<std::size_t, std::string> least;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    auto root = find(i);
    if (!least.count(root) || tagged[i] < least[root]) least[root] = tagged[i];
  }

  MultiSketch D{po.object, {}};
  std::map<std::string, std::string> left_ids, right_ids;
  for (const auto& [id, s] : m.cod.statements) {
    auto name = least[find(index["L:" + id])];
    left_ids[id] = name;
    D.statements.try_emplace(name, translate_statement(po.left, s));
  }
  for (const auto& [id, s] : r.cod.statements) {
    auto name = least[find(index["R:" + id])];
    right_ids[id] = name;
    D.statements.try_emplace(name, translate_statement(po.right, s));
  }
  auto left = MultiSketchMorphism::make(m.cod, D, po.left, std::move(left_ids));
  auto right = MultiSketchMorphism::make(r.cod, D, po.right, std::move(right_ids));
  return {std::move(D), std::move(left), std::move(right)};
}

MultiPullback multi_pullback(const MultiSketchMorphism& m, const MultiSketchMorphism& r) {
  if (!(m.cod == r.cod)) throw Error(ErrorKind::DomainMismatch, "multi pullback: cospan legs end at different sketches");
  auto pb = pullback(m.map, r.map);
  MultiSketch D{pb.object, {}};
  std::map<std::string, std::string> left_ids, right_ids;
  for (const auto& [b, sb] : m.dom.statements)
    for (const auto& [a, sa] : r.dom.statements) {
      if (m.ids.at(b) != r.ids.at(a)) continue;
      auto mediators = mediators_into(sb.predicate().arity, pb.object, {{pb.left, sb.binding()}, {pb.right, sa.binding()}});
      if (mediators.size() != 1)
        throw Error(ErrorKind::Internal, "multi pullback: statement pair " + b + "|" + a + " has " +
                                             std::to_string(mediators.size()) + " mediating bindings");
      auto name = b + "|" + a;
      D.statements.emplace(name, Statement(sb.predicate(), mediators.front()));
      left_ids[name] = b;
      right_ids[name] = a;
    }
  auto left = MultiSketchMorphism::make(D, m.dom, pb.left, std::move(left_ids));
  auto right = MultiSketchMorphism::make(D, r.dom, pb.right, std::move(right_ids));
  return {std::move(D), std::move(left), std::move(right)};
}

}  // namespace gsketch

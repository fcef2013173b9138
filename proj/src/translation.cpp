#include "gsketch/translation.hpp"

namespace gsketch {

ChosenPushout chosen_pushout(const GraphMorphism& c, const GraphMorphism& a) {
  if (!(c.dom() == a.dom())) throw Error(ErrorKind::DomainMismatch, "chosen pushout: legs have different domains");
  if (is_isomorphism(c)) return {a.cod(), compose(invert(c), a), identity(a.cod())};
  auto po = pushout(c, a);
  return {po.object, po.left, po.right};
}

Condition translate_condition(const GraphMorphism& c, const Condition& cond) {
  if (!(c.dom() == cond.context()))
    throw Error(ErrorKind::DomainMismatch, "translation morphism does not start at the condition's context");
  const Graph& H = c.cod();
  switch (cond.kind()) {
    case ConditionKind::Statement:
      return Condition::stmt(H, translate_statement(c, cond.statement()));
    case ConditionKind::True:
      return Condition::truth(H);
    case ConditionKind::False:
      return Condition::falsity(H);
    case ConditionKind::And:
    case ConditionKind::Or: {
      std::vector<Condition> kids;
      for (const auto& child : cond.children()) kids.push_back(translate_condition(c, child));
      return cond.kind() == ConditionKind::And ? Condition::conj(H, std::move(kids)) : Condition::disj(H, std::move(kids));
    }
    case ConditionKind::Not:
      return Condition::negation(translate_condition(c, cond.child()));
    case ConditionKind::Exists:
    case ConditionKind::Forall: {
      auto po = chosen_pushout(c, cond.shift());
      auto guard = translate_condition(c, cond.guard());
      auto body = translate_condition(po.moved, cond.body());
      return cond.kind() == ConditionKind::Exists ? Condition::exists(H, guard, po.shift, body)
                                                  : Condition::forall(H, guard, po.shift, body);
    }
  }
  throw Error(ErrorKind::Internal, "unknown condition kind");
}

std::optional<ShiftDisagreement> find_shift_disagreement(const GraphMorphism& c, const Condition& cond,
                                                         const std::vector<Sketch>& samples) {
  auto translated = translate_condition(c, cond);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& G = samples[i];
    std::optional<ShiftDisagreement> found;
    search_morphisms(c.cod(), G.context(), Candidates::unrestricted(c.cod()), {}, [&](const GraphMorphism& t) {
      bool lhs = satisfies(t, G, translated).holds;
      bool rhs = satisfies(compose(c, t), G, cond).holds;
      if (lhs != rhs) found = ShiftDisagreement{i, t, lhs, rhs};
      return !found;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool shift_equivalence_oracle(const GraphMorphism& c, const Condition& cond, const std::vector<Sketch>& samples) {
  return !find_shift_disagreement(c, cond, samples).has_value();
}

}  // namespace gsketch

#pragma once

// Translation of conditions along context morphisms, using a fixed choice of
// pushouts for the quantifier cases.

#include <optional>
#include <string>
#include <vector>

#include "gsketch/condition.hpp"

namespace gsketch {

/// Chosen pushout of H <-c- K -a-> M.
///   shift  : H -> M_c   (a*)
///   moved  : M -> M_c   (c*)
/// If c is an isomorphism the cospan is (c^-1;a, id_M); otherwise the
/// canonical graph pushout.
struct ChosenPushout {
  Graph object;
  GraphMorphism shift;
  GraphMorphism moved;
};
ChosenPushout chosen_pushout(const GraphMorphism& c, const GraphMorphism& a);

/// Translates a condition over K into one over H = c.cod.
Condition translate_condition(const GraphMorphism& c, const Condition& cond);

struct ShiftDisagreement {
  std::size_t sample;  // index into the sample list
  GraphMorphism anchor;  // t : H -> G
  bool translated_holds;
  bool original_holds;
};

/// First anchor t : H -> G (over all samples) where t |= translate(c, cond)
/// and c;t |= cond disagree, if any.
std::optional<ShiftDisagreement> find_shift_disagreement(const GraphMorphism& c, const Condition& cond,
                                                         const std::vector<Sketch>& samples);

bool shift_equivalence_oracle(const GraphMorphism& c, const Condition& cond, const std::vector<Sketch>& samples);

}  // namespace gsketch

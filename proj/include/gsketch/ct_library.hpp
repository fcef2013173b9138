#pragma once

// The category-theory footprint (comp, id, monic, final), the running-example
// sketch and conditions, the (co)limit condition generator and unfolding of
// statements by defining conditions.

#include <map>
#include <string>
#include <vector>

#include "gsketch/deduce.hpp"

namespace gsketch {

struct CTFixtures {
  Footprint footprint;
  PredicateSymbol comp, id, monic, final;

  Sketch G;
  /// G without edge f and the statement that mentions it.
  Sketch G_prime;
  /// The repaired sketch: e and f merged into "ef", monic added on c.
  Sketch H;

  Condition phi1, phi2, phi3, phi4, phi5, phi6, phi7, phi8;
  /// phi4 with the final-statement replaced by phi8.
  Condition phi4_unfolded;
  GraphMorphism t1, t2;
  /// v1 -e-> v2 onto the single loop e at v.
  GraphMorphism loop_collapse;

  /// phi2, phi3, phi5, phi6 as rules.
  Rule rule2, rule3, rule5, rule6;
};

const CTFixtures& ct_fixtures();
CTFixtures build_ct_fixtures();

/// Statement (P, binding) with the binding given by edge names (and node
/// names for nodes not forced by an edge).
Statement make_statement(const PredicateSymbol& p, const Graph& context,
                         const std::map<std::string, std::string>& edges,
                         const std::map<std::string, std::string>& nodes = {});

/// Small sketches (at most five nodes) used by the property suites.
struct NamedSketch {
  std::string name;
  Sketch sketch;
};
std::vector<NamedSketch> fixture_sketches();

struct ConeContexts {
  Graph shape;          // I
  Graph cone;           // C_I
  Graph two_cones;      // C_I + C'_I
  Graph one_mediator;   // two cones and m
  Graph two_mediators;  // two cones, m1 and m2
  GraphMorphism cone_in_two;          // C_I -> C_I + C'_I
  GraphMorphism two_in_one_mediator;  // C_I + C'_I -> one mediator
  GraphMorphism cone_in_two_mediators;
  GraphMorphism merge;                // alpha : m1, m2 |-> m
  bool colimit = false;
};

/// Projections p_<x> : apex -> x and q_<x> : apex2 -> x (reversed for
/// colimits); mediator m : apex2 -> apex (reversed for colimits). Throws
/// Precondition if I already uses one of these names.
ConeContexts cone_contexts(const Graph& I, bool colimit = false);

/// and(exist_I, unique_I) over C_I.
Condition limit_condition(const Graph& I);
Condition colimit_condition(const Graph& I);

/// Replaces every statement leaf whose predicate has a definition by the
/// definition translated along the statement's binding. One pass.
Condition unfold(const Condition& cond, const std::map<std::string, Condition>& definitions);

}  // namespace gsketch

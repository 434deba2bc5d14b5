/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCLASS_SCENARIOS_HPP
#define QCLASS_SCENARIOS_HPP

#include <string>
#include <vector>

#include "qclass/classicality.hpp"

namespace qclass {

// A built-in process together with the analysis configuration it is meant
// to run under.
struct Scenario {
  std::string id;
  std::string summary;
  MarkovProcess process;
  AnalyzeConfig config;
};

// Identifiers of all built-in scenarios, in registry order:
//   lueders-ex1   qutrit instrument with invariant effects but non-vanishing
//                 commutators (non-Hermitian Kraus operators)
//   weak-comm-ex2 state-weighted commutativity without consistency
//   abs-comm-ex3  consistency without absolute commutativity
//   inclusion-ex4 three-step process satisfying every criterion
//   skipping-ex5  four-level process whose invasiveness skips one time
//   ncgd-ex6      consistent fixed-basis process without commutativity
std::vector<std::string> scenario_ids();

// Throws std::invalid_argument for an unknown id.
Scenario make_scenario(const std::string &id);

}  // namespace qclass

#endif

/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qclass/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace qclass {

namespace {

KrausSet identity_dynamics(Eigen::Index d) { return KrausSet{{identity_matrix(d)}}; }

KrausSet unitary_dynamics(const cmatrix_t &u) { return KrausSet{{u}}; }

Instrument sigma_z_instrument() {
  return Instrument{{{"0", projector(basis_ket(2, 0))}, {"1", projector(basis_ket(2, 1))}}};
}

Instrument sigma_x_instrument() {
  return Instrument{{{"+", projector(ket_plus())}, {"-", projector(ket_minus())}}};
}

// Qutrit instrument whose five Kraus operators leave two effects invariant
// without commuting with them.
Scenario lueders_ex1() {
  const double r2 = std::sqrt(2.0);
  const double r10 = std::sqrt(10.0);

  cmatrix_t k1 = cmatrix_t::Zero(3, 3);
  k1(0, 0) = r2 / 2.0;
  k1(0, 2) = -0.5;
  cmatrix_t k2 = cmatrix_t::Zero(3, 3);
  k2(1, 1) = -r10 / 10.0;
  k2(1, 2) = 2.0 * r10 / 10.0;
  cmatrix_t k3 = cmatrix_t::Zero(3, 3);
  k3(1, 1) = r2 / 2.0;
  cmatrix_t k4 = cmatrix_t::Zero(3, 3);
  k4(1, 1) = 4.0 * r10 / 20.0;
  k4(1, 2) = 2.0 * r10 / 20.0;
  cmatrix_t k5 = cmatrix_t::Zero(3, 3);
  k5(0, 0) = r2 / 2.0;
  k5(0, 2) = 0.5;

  // The second measurement realises the two-outcome POVM
  // {diag(1,0,1/2), diag(0,1,1/2)} through its Hermitian square roots.
  cmatrix_t e1 = cmatrix_t::Zero(3, 3);
  e1(0, 0) = 1.0;
  e1(2, 2) = 1.0 / r2;
  cmatrix_t e2 = cmatrix_t::Zero(3, 3);
  e2(1, 1) = 1.0;
  e2(2, 2) = 1.0 / r2;

  Scenario s;
  s.id = "lueders-ex1";
  s.summary = "qutrit instrument: invariant effects, non-vanishing commutators";
  s.process.name = s.id;
  s.process.dim = 3;
  s.process.initial = DensityMatrix{identity_matrix(3) / 3.0, true};
  s.process.dynamics = {identity_dynamics(3)};
  s.process.instruments = {
      Instrument{{{"1", k1}, {"2", k2}, {"3", k3}, {"4", k4}, {"5", k5}}},
      Instrument{{{"1", e1}, {"2", e2}}}};
  return s;
}

// Two-time qubit process: every state-weighted commutator vanishes while
// the marginal statistics still notice the first measurement.
Scenario weak_comm_ex2() {
  const cmatrix_t id2 = identity_matrix(2);

  Scenario s;
  s.id = "weak-comm-ex2";
  s.summary = "weak commutativity holds, consistency fails";
  s.process.name = s.id;
  s.process.dim = 2;
  s.process.initial = DensityMatrix{(id2 + pauli_z()) / 2.0, true};
  s.process.dynamics = {identity_dynamics(2)};
  s.process.instruments = {
      Instrument{{{"+", (id2 + pauli_x()) / 2.0}, {"-", (id2 - pauli_x()) / 2.0}}},
      sigma_z_instrument()};
  return s;
}

// Same probing as weak-comm-ex2 with the initial state rotated into the
// y-basis: statistics become consistent, absolute commutativity fails.
Scenario abs_comm_ex3() {
  const cmatrix_t id2 = identity_matrix(2);

  Scenario s;
  s.id = "abs-comm-ex3";
  s.summary = "consistency holds, absolute commutativity fails";
  s.process.name = s.id;
  s.process.dim = 2;
  s.process.initial = DensityMatrix{(id2 + pauli_y()) / 2.0, true};
  s.process.dynamics = {identity_dynamics(2)};
  s.process.instruments = {
      Instrument{{{"+", (id2 + pauli_x()) / 2.0}, {"-", (id2 - pauli_x()) / 2.0}}},
      sigma_z_instrument()};
  return s;
}

// Three-step qubit process with Hadamard dynamics; attainable states and
// effect projectors span the same space and every criterion passes.
Scenario inclusion_ex4() {
  Scenario s;
  s.id = "inclusion-ex4";
  s.summary = "three-step process satisfying every criterion";
  s.process.name = s.id;
  s.process.dim = 2;
  s.process.initial = DensityMatrix{projector(basis_ket(2, 0)), true};
  s.process.dynamics = {unitary_dynamics(hadamard()), unitary_dynamics(hadamard())};
  s.process.instruments = {sigma_z_instrument(), sigma_x_instrument(), sigma_z_instrument()};
  return s;
}

// Four-level process probed by rank-2 projectors. The invasiveness of the
// first measurement is invisible at the second time and only shows up in
// the three-time statistics.
Scenario skipping_ex5() {
  const Eigen::Index d = 4;
  auto unit = [](Eigen::Index r, Eigen::Index c) {
    cmatrix_t m = cmatrix_t::Zero(4, 4);
    m(r, c) = 1.0;
    return m;
  };

  cmatrix_t pi_low = cmatrix_t::Zero(d, d);   // onto span{|0>,|1>}
  pi_low(0, 0) = pi_low(1, 1) = 1.0;
  cmatrix_t pi_high = cmatrix_t::Zero(d, d);  // onto span{|2>,|3>}
  pi_high(2, 2) = pi_high(3, 3) = 1.0;
  const Instrument block_instrument{{{"1", pi_low}, {"2", pi_high}}};

  const cmatrix_t l21_a = unit(0, 0) + unit(1, 3);
  const cmatrix_t l21_b = unit(1, 1) + unit(3, 2);

  const double r2 = std::sqrt(2.0);
  const cmatrix_t l32_a = (unit(2, 0) + unit(2, 1)) / r2;
  const cmatrix_t l32_b =
      (unit(0, 0) - unit(0, 1) - unit(1, 0) + unit(1, 1)) / 2.0 + unit(2, 2) + unit(3, 3);

  // Any initial state with a real part in the (0,3) coherence shows the
  // effect; this one keeps the spectrum comfortably positive.
  cmatrix_t rho = cmatrix_t::Zero(d, d);
  rho(0, 0) = 0.40;
  rho(1, 1) = 0.20;
  rho(2, 2) = 0.25;
  rho(3, 3) = 0.15;
  rho(0, 3) = complex_t(0.10, 0.05);
  rho(3, 0) = complex_t(0.10, -0.05);

  Scenario s;
  s.id = "skipping-ex5";
  s.summary = "four-level process whose invasiveness skips one time";
  s.process.name = s.id;
  s.process.dim = d;
  s.process.initial = DensityMatrix{rho, true};
  s.process.dynamics = {KrausSet{{l21_a, l21_b}}, KrausSet{{l32_a, l32_b}}};
  s.process.instruments = {block_instrument, block_instrument, block_instrument};
  return s;
}

// Three-step qubit process probed in the computational basis: a rotation to
// the y-basis followed by a Hadamard. The dephasing criterion and the
// statistics are classical, all commutator criteria fail.
Scenario ncgd_ex6() {
  cmatrix_t rotate_y(2, 2);
  const double s2 = 1.0 / std::sqrt(2.0);
  rotate_y << s2, s2, complex_t(0, s2), complex_t(0, -s2);

  Scenario s;
  s.id = "ncgd-ex6";
  s.summary = "consistent fixed-basis process without commutativity";
  s.process.name = s.id;
  s.process.dim = 2;
  s.process.initial = DensityMatrix{identity_matrix(2) / 2.0, true};
  s.process.dynamics = {unitary_dynamics(rotate_y), unitary_dynamics(hadamard())};
  s.process.instruments = {sigma_z_instrument(), sigma_z_instrument(), sigma_z_instrument()};
  s.config.ncgd_basis = {basis_ket(2, 0), basis_ket(2, 1)};
  return s;
}

}  // namespace

std::vector<std::string> scenario_ids() {
  return {"lueders-ex1", "weak-comm-ex2", "abs-comm-ex3",
          "inclusion-ex4", "skipping-ex5", "ncgd-ex6"};
}

Scenario make_scenario(const std::string &id) {
  if (id == "lueders-ex1") return lueders_ex1();
  if (id == "weak-comm-ex2") return weak_comm_ex2();
  if (id == "abs-comm-ex3") return abs_comm_ex3();
  if (id == "inclusion-ex4") return inclusion_ex4();
  if (id == "skipping-ex5") return skipping_ex5();
  if (id == "ncgd-ex6") return ncgd_ex6();
  throw std::invalid_argument("unknown scenario '" + id + "'");
}

}  // namespace qclass

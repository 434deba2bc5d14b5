/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include "qclass/scenarios.hpp"
#include "qclass/stats.hpp"
#include "testutil.hpp"

using namespace qclass;
using testutil::make_seq;
using testutil::Rng;

namespace {

bool approx(const cmatrix_t &a, const cmatrix_t &b, double tol = 1e-9) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= tol;
}

}  // namespace

TEST_CASE("joint_prob of a single-time trivial instrument") {
  MarkovProcess p;
  p.dim = 2;
  p.initial = DensityMatrix{identity_matrix(2) / 2.0, true};
  p.instruments = {Instrument{{{"go", identity_matrix(2)}}}};
  CHECK(joint_prob(p, make_seq({{1, "go"}})) == doctest::Approx(1.0));
}

TEST_CASE("joint_prob on the Hadamard three-step scenario") {
  const Scenario s = make_scenario("inclusion-ex4");
  // Independent oracle: |0> -> H -> |+> -> H -> |0>, all projections certain.
  const cvector_t step1 = hadamard() * basis_ket(2, 0);
  CHECK(std::abs(std::abs(ket_plus().dot(step1)) - 1.0) <= 1e-12);
  const cvector_t step2 = hadamard() * ket_plus();
  CHECK(std::abs(std::abs(basis_ket(2, 0).dot(step2)) - 1.0) <= 1e-12);

  CHECK(joint_prob(s.process, make_seq({{1, "0"}, {2, "+"}, {3, "0"}})) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(joint_prob(s.process, make_seq({{1, "0"}, {2, "+"}, {3, "1"}})) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("joint_prob is uniform on the fixed-basis scenario") {
  const Scenario s = make_scenario("ncgd-ex6");
  for (const auto &seq : testutil::all_sequences(s.process)) {
    CHECK(std::abs(joint_prob(s.process, seq) - 0.125) <= 1e-9);
    CHECK(std::abs(testutil::path_oracle_prob(s.process, seq) - 0.125) <= 1e-9);
  }
}

TEST_CASE("joint_prob rejects bad sequences") {
  const Scenario s = make_scenario("ncgd-ex6");
  CHECK_THROWS_AS(joint_prob(s.process, make_seq({{1, "0"}})), std::invalid_argument);
  CHECK_THROWS_AS(joint_prob(s.process, make_seq({{1, "0"}, {2, "0"}, {3, "x"}})),
                  std::invalid_argument);
}

TEST_CASE("joint_prob agrees with the path-sum oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const MarkovProcess p = testutil::random_process(2 + trial % 2, 2 + trial % 2, rng);
    for (const auto &seq : testutil::all_sequences(p)) {
      CHECK(std::abs(joint_prob(p, seq) - testutil::path_oracle_prob(p, seq)) <= 1e-9);
    }
  }
}

TEST_CASE("full_distribution over all times of the fixed-basis scenario") {
  const Scenario s = make_scenario("ncgd-ex6");
  const JointDistribution dist = full_distribution(s.process);
  REQUIRE(dist.table.size() == 8);
  for (const auto &[seq, prob] : dist.table) {
    CHECK(prob == doctest::Approx(0.125).epsilon(1e-9));
  }
  CHECK(dist.total() == doctest::Approx(1.0));
}

TEST_CASE("full_distribution with skipped times on the four-level scenario") {
  const Scenario s = make_scenario("skipping-ex5");
  const cmatrix_t &rho = s.process.initial.mat;

  const JointDistribution skip_first = full_distribution(s.process, {2, 3});
  const double *p11 = skip_first.find(make_seq({{2, "1"}, {3, "1"}}));
  REQUIRE(p11);
  const double expected =
      0.5 * (rho(0, 0).real() - 2.0 * rho(0, 3).real() + rho(1, 1).real() + rho(3, 3).real());
  CHECK(*p11 == doctest::Approx(expected).epsilon(1e-9));

  const JointDistribution nothing = full_distribution(s.process, {});
  REQUIRE(nothing.table.size() == 1);
  CHECK(nothing.table.front().second == doctest::Approx(1.0));
}

TEST_CASE("full_distribution sums to one on random processes") {
  Rng rng(103);
  for (int trial = 0; trial < 10; ++trial) {
    const MarkovProcess p = testutil::random_process(2 + trial % 2, 2 + trial % 2, rng);
    CHECK(full_distribution(p).total() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("pre_measurement_state") {
  const Scenario ex4 = make_scenario("inclusion-ex4");
  const ConditionedState start = pre_measurement_state(ex4.process, 1, {});
  CHECK(approx(start.state.mat, ex4.process.initial.mat));
  CHECK(start.state.normalized);

  const ConditionedState mid = pre_measurement_state(ex4.process, 2, make_seq({{1, "0"}}));
  CHECK(approx(mid.state.mat, projector(ket_plus())));
  CHECK(std::abs(mid.state.mat.trace().real() - 1.0) <= 1e-9);

  const Scenario ex6 = make_scenario("ncgd-ex6");
  const ConditionedState rotated = pre_measurement_state(ex6.process, 2, make_seq({{1, "0"}}));
  const double population = ex6.process.initial.mat(0, 0).real();
  CHECK(approx(rotated.state.mat, population * projector(ket_plus_i())));

  CHECK_THROWS_AS(pre_measurement_state(ex6.process, 2, OutcomeSequence{}),
                  std::invalid_argument);
}

TEST_CASE("pre_measurement_state trace equals the history probability") {
  Rng rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const MarkovProcess p = testutil::random_process(2, 3, rng);
    for (int time = 1; time <= p.times(); ++time) {
      for (const auto &pre : all_pre_states(p, time)) {
        // Probability of the history alone: measure only the earlier times.
        std::set<int> earlier;
        for (int t = 1; t < time; ++t) earlier.insert(t);
        const JointDistribution dist = full_distribution(p, earlier);
        const double *prob = dist.find(pre.history);
        REQUIRE(prob);
        CHECK(std::abs(pre.state.mat.trace().real() - *prob) <= 1e-9);
      }
    }
  }
}

TEST_CASE("post_measurement_operator") {
  const Scenario ex4 = make_scenario("inclusion-ex4");
  const PostOperator last = post_measurement_operator(ex4.process, 3, {});
  CHECK(approx(last.op, identity_matrix(2)));

  const PostOperator mid = post_measurement_operator(ex4.process, 2, make_seq({{3, "0"}}));
  CHECK(approx(mid.op, projector(ket_plus())));

  const Scenario ex6 = make_scenario("ncgd-ex6");
  const PostOperator rolled = post_measurement_operator(ex6.process, 2, make_seq({{3, "0"}}));
  CHECK(approx(rolled.op, projector(ket_plus())));

  CHECK_THROWS_AS(post_measurement_operator(ex6.process, 1, make_seq({{3, "0"}})),
                  std::invalid_argument);
}

TEST_CASE("post operators are effects and reproduce history marginals") {
  Rng rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    const MarkovProcess p = testutil::random_process(2 + trial % 2, 3, rng);
    for (int time = 1; time <= p.times(); ++time) {
      cmatrix_t gathered = cmatrix_t::Zero(p.dim, p.dim);
      for (const auto &post : all_post_operators(p, time)) {
        Eigen::SelfAdjointEigenSolver<cmatrix_t> es(post.op, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
        CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
        gathered += instrument_total_adjoint(p.instruments[time - 1], post.op);
      }
      // Summed over futures and the probed outcome, every history keeps its
      // own probability.
      for (const auto &pre : all_pre_states(p, time)) {
        const double marginal = std::real((pre.state.mat * gathered).trace());
        CHECK(std::abs(marginal - pre.state.mat.trace().real()) <= 1e-9);
      }
    }
  }
}

TEST_CASE("split_prob equals joint_prob at every split point") {
  const Scenario ex4 = make_scenario("inclusion-ex4");
  CHECK(split_prob(ex4.process, 2, make_seq({{1, "0"}, {2, "+"}, {3, "0"}})) ==
        doctest::Approx(1.0).epsilon(1e-9));

  const Scenario ex6 = make_scenario("ncgd-ex6");
  for (const auto &seq : testutil::all_sequences(ex6.process)) {
    for (int time = 1; time <= 3; ++time) {
      CHECK(split_prob(ex6.process, time, seq) == doctest::Approx(0.125).epsilon(1e-9));
    }
  }

  Rng rng(113);
  for (int trial = 0; trial < 12; ++trial) {
    const MarkovProcess p = testutil::random_process(2 + trial % 3, 2 + trial % 3, rng);
    for (const auto &seq : testutil::all_sequences(p)) {
      const double joint = joint_prob(p, seq);
      for (int time = 1; time <= p.times(); ++time) {
        CHECK(std::abs(split_prob(p, time, seq) - joint) <= 1e-9);
      }
    }
  }
}

TEST_CASE("marginalize") {
  const Scenario ex6 = make_scenario("ncgd-ex6");
  const JointDistribution full = full_distribution(ex6.process);
  const JointDistribution reduced = marginalize(full, 2);
  REQUIRE(reduced.table.size() == 4);
  for (const auto &[seq, prob] : reduced.table) {
    CHECK(prob == doctest::Approx(0.25).epsilon(1e-9));
  }

  const Scenario ex5 = make_scenario("skipping-ex5");
  const cmatrix_t &rho = ex5.process.initial.mat;
  const JointDistribution summed = marginalize(full_distribution(ex5.process), 1);
  const double *p11 = summed.find(make_seq({{2, "1"}, {3, "1"}}));
  REQUIRE(p11);
  const double expected =
      0.5 * (rho(0, 0).real() + rho(1, 1).real() + rho(3, 3).real());
  CHECK(*p11 == doctest::Approx(expected).epsilon(1e-9));

  JointDistribution rolling = full;
  for (int time = 1; time <= 3; ++time) rolling = marginalize(rolling, time);
  REQUIRE(rolling.table.size() == 1);
  CHECK(rolling.table.front().second == doctest::Approx(1.0));

  CHECK_THROWS_AS(marginalize(reduced, 2), std::invalid_argument);
}

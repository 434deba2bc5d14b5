/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Acceptance suite: the end-to-end behaviours the library promises, one
// printed line per criterion. Exit code 0 only if every criterion holds.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "qclass/process_io.hpp"
#include "qclass/scenarios.hpp"
#include "testutil.hpp"

using namespace qclass;
using testutil::make_seq;
using testutil::Rng;

namespace {

int failures = 0;

void criterion(int number, const std::string &title,
               const std::function<std::string()> &body) {
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception &e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  } catch (const char *msg) {
    ok = false;
    detail = msg;
  }
  if (!ok) ++failures;
  std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              detail.empty() ? "" : " - ", detail.c_str());
}

void require(bool condition, const std::string &message) {
  if (!condition) throw std::runtime_error(message);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

constexpr double kTol = 1e-9;

}  // namespace

int main() {
  //-----------------------------------------------------------------------
  criterion(1, "lueders-ex1: invariant effects, non-vanishing commutator", [] {
    const Scenario s = make_scenario("lueders-ex1");
    require(validate_process(s.process).valid(), "five-Kraus instrument must validate");

    cmatrix_t q1 = cmatrix_t::Zero(3, 3);
    q1(0, 0) = 1.0;
    q1(2, 2) = 0.5;
    cmatrix_t q2 = cmatrix_t::Zero(3, 3);
    q2(1, 1) = 1.0;
    q2(2, 2) = 0.5;

    const Instrument &instrument = s.process.instruments[0];
    const double inv1 = (instrument_total_adjoint(instrument, q1) - q1).norm();
    const double inv2 = (instrument_total_adjoint(instrument, q2) - q2).norm();
    require(inv1 <= kTol, "first effect must be invariant");
    require(inv2 <= kTol, "second effect must be invariant");

    const cmatrix_t *k5 = instrument.find("5");
    const double comm = hs_norm(commutator(*k5, q1));
    require(comm > 0.1, "fifth Kraus operator must not commute with the first effect");
    return "invariance " + fmt(std::max(inv1, inv2)) + ", commutator norm " + fmt(comm);
  });

  //-----------------------------------------------------------------------
  criterion(2, "weak-comm-ex2: weak commutativity without consistency", [] {
    const Scenario s = make_scenario("weak-comm-ex2");
    const CheckResult weak = check_weak_commutativity(s.process, kTol);
    require(weak.pass, "weak commutativity must hold");
    require(weak.max_residual < kTol, "weak residuals must vanish");

    const CheckResult consistency = check_kolmogorov(s.process, kTol);
    require(!consistency.pass, "consistency must fail");
    require(std::abs(consistency.max_residual - 0.5) <= kTol,
            "consistency residual magnitude must be 0.5");

    // Before taking the magnitude, the trace comes out at -0.5.
    const PostOperator post = post_measurement_operator(s.process, 1, make_seq({{2, "0"}}));
    const cmatrix_t drift =
        instrument_total_adjoint(s.process.instruments[0], post.op) - post.op;
    const complex_t signed_value = (s.process.initial.mat * drift).trace();
    require(std::abs(signed_value.real() + 0.5) <= kTol, "signed trace must equal -0.5");
    require(std::abs(signed_value.imag()) <= kTol, "signed trace must be real");
    return "weak max " + fmt(weak.max_residual) + ", consistency residual " +
           fmt(consistency.max_residual) + " (signed " + fmt(signed_value.real()) + ")";
  });

  //-----------------------------------------------------------------------
  criterion(3, "abs-comm-ex3: consistency without absolute commutativity", [] {
    const Scenario s = make_scenario("abs-comm-ex3");
    const CheckResult consistency = check_kolmogorov(s.process, kTol);
    require(consistency.pass, "consistency must hold");

    const CheckResult absolute = check_absolute_commutativity(s.process, kTol);
    require(!absolute.pass, "absolute commutativity must fail");
    require(std::abs(absolute.max_residual - 0.5) <= kTol,
            "absolute residual must equal 0.5");
    return "consistency max " + fmt(consistency.max_residual) + ", absolute residual " +
           fmt(absolute.max_residual);
  });

  //-----------------------------------------------------------------------
  criterion(4, "inclusion-ex4: matching two-dimensional subspaces", [] {
    const Scenario s = make_scenario("inclusion-ex4");
    const auto initial_set = default_initial_set(2);

    const OperatorSubspace attainable = compute_H(s.process, 2, initial_set);
    const FutureSubspace effects = compute_F(s.process, 2);
    require(attainable.size() == 2, "attainable span at t2 must have dimension 2");
    require(effects.space.size() == 2, "effect span at t2 must have dimension 2");
    require(!effects.degenerate, "effects at t2 must be non-degenerate");

    const InclusionResult forward = subspace_contains(attainable, effects.space, kTol);
    const InclusionResult backward = subspace_contains(effects.space, attainable, kTol);
    require(forward.contained && forward.residual < kTol, "effect span inside attainable span");
    require(backward.contained && backward.residual < kTol, "attainable span inside effect span");

    const CheckResult commutators = check_commutators(s.process, kTol);
    require(commutators.max_residual_at(2) < kTol, "all commutators at t2 must vanish");
    return "inclusion residuals " + fmt(std::max(forward.residual, backward.residual)) +
           ", t2 commutators " + fmt(commutators.max_residual_at(2));
  });

  //-----------------------------------------------------------------------
  criterion(5, "skipping-ex5: invasiveness hidden from the two-time statistics", [] {
    Rng rng(20240517);
    MarkovProcess process = make_scenario("skipping-ex5").process;
    cmatrix_t rho = testutil::random_density(4, rng);
    while (std::abs(rho(0, 3).real()) < 0.02) rho = testutil::random_density(4, rng);
    process.initial = DensityMatrix{rho, true};

    const double diag_sum = rho(0, 0).real() + rho(1, 1).real() + rho(3, 3).real();
    const double coherent = 0.5 * (diag_sum - 2.0 * rho(0, 3).real());

    const JointDistribution two_skip = full_distribution(process, {2});
    const double *p_m2 = two_skip.find(make_seq({{2, "1"}}));
    require(p_m2 && std::abs(*p_m2 - diag_sum) <= kTol,
            "skip-t1 single-time probability must match the diagonal sum");

    const JointDistribution three_skip = full_distribution(process, {2, 3});
    const double *p_m2m3 = three_skip.find(make_seq({{2, "1"}, {3, "1"}}));
    require(p_m2m3 && std::abs(*p_m2m3 - coherent) <= kTol,
            "skip-t1 two-time probability must expose the coherence");

    MarkovProcess two_time = process;
    two_time.dynamics = {process.dynamics[0]};
    two_time.instruments = {process.instruments[0], process.instruments[1]};
    const CheckResult short_check = check_kolmogorov(two_time, kTol);
    require(short_check.max_residual_at(1) < kTol,
            "two-time consistency at t1 must hold");

    const CheckResult long_check = check_kolmogorov(process, kTol);
    const double expected = std::abs(rho(0, 3).real());
    require(std::abs(long_check.max_residual_at(1) - expected) <= kTol,
            "three-time residual at t1 must equal |Re rho(0,3)|");
    return "two-time residual " + fmt(short_check.max_residual_at(1)) +
           ", three-time residual " + fmt(long_check.max_residual_at(1)) + " = |Re rho03| " +
           fmt(expected);
  });

  //-----------------------------------------------------------------------
  criterion(6, "ncgd-ex6: classical statistics without commutativity", [] {
    const Scenario s = make_scenario("ncgd-ex6");
    const auto &basis = s.config.ncgd_basis;

    const CheckResult dephasing = check_ncgd(s.process, basis, kTol);
    require(dephasing.pass, "dephasing criterion must pass");

    // Both sides of every dephasing comparison evaluate to one half.
    for (Eigen::Index prev = 0; prev < 2; ++prev) {
      const cmatrix_t evolved = apply_map(s.process.dynamics[0], projector(basis[prev]));
      cmatrix_t dephased = cmatrix_t::Zero(2, 2);
      for (const auto &vec : basis) dephased += vec.dot(evolved * vec) * projector(vec);
      for (Eigen::Index next = 0; next < 2; ++next) {
        const cvector_t &vec = basis[next];
        const double lhs =
            std::real(vec.dot(apply_map(s.process.dynamics[1], dephased) * vec));
        const double rhs =
            std::real(vec.dot(apply_map(s.process.dynamics[1], evolved) * vec));
        require(std::abs(lhs - 0.5) <= kTol, "dephased side must equal one half");
        require(std::abs(rhs - 0.5) <= kTol, "direct side must equal one half");
      }
    }

    require(check_kolmogorov(s.process, kTol).pass, "consistency must hold");

    const cmatrix_t *k20 = s.process.instruments[1].find("0");
    const PostOperator q20 = post_measurement_operator(s.process, 2, make_seq({{3, "0"}}));
    const double comm = hs_norm(commutator(*k20, q20.op));
    require(comm > 0.1, "commutator at t2 must be large");

    const CheckResult absolute = check_absolute_commutativity(s.process, kTol);
    require(!absolute.pass, "absolute commutativity must fail");
    for (const auto &ctx : absolute.contexts) {
      if (ctx.time != 2) continue;
      const double weight =
          pre_measurement_state(s.process, 2, ctx.history).state.mat.trace().real();
      require(std::abs(ctx.residual - 0.5 * weight) <= kTol,
              "absolute residual must equal half the conditioned trace");
    }

    const CheckResult inclusion = check_inclusion(s.process, 2, default_initial_set(2), kTol);
    require(!inclusion.pass, "inclusion must fail");
    require(inclusion.max_residual > 0.1, "inclusion residual must be large");
    return "commutator norm " + fmt(comm) + ", inclusion residual " +
           fmt(inclusion.max_residual);
  });

  //-----------------------------------------------------------------------
  criterion(7, "sequential evaluation matches the explicit path sum", [] {
    Rng rng(424242);
    int processes = 0;
    int comparisons = 0;
    double worst = 0.0;
    while (processes < 120) {
      const Eigen::Index d = 2 + processes % 2;
      const int times = 2 + (processes / 2) % 2;
      const MarkovProcess p = testutil::random_process(d, times, rng);
      for (const auto &seq : testutil::all_sequences(p)) {
        const double joint = joint_prob(p, seq);
        const double oracle = testutil::path_oracle_prob(p, seq);
        worst = std::max(worst, std::abs(joint - oracle));
        require(std::abs(joint - oracle) <= kTol, "path-sum oracle disagrees");
        for (int time = 1; time <= p.times(); ++time) {
          const double split = split_prob(p, time, seq);
          worst = std::max(worst, std::abs(split - joint));
          require(std::abs(split - joint) <= kTol, "split evaluation disagrees");
        }
        ++comparisons;
      }
      ++processes;
    }
    return std::to_string(processes) + " processes, " + std::to_string(comparisons) +
           " sequences, worst deviation " + fmt(worst);
  });

  //-----------------------------------------------------------------------
  criterion(8, "theorem audits hold over random ensembles", [] {
    Rng rng(90210);

    // Fixed-point vs commutation equivalence for Hermitian instruments.
    int equivalence_trials = 0;
    for (int trial = 0; trial < 220; ++trial) {
      const Eigen::Index d = 2 + trial % 2;
      const int n_out = 2 + trial % 2;
      Instrument instrument;
      cmatrix_t q;
      if (trial % 2 == 0) {
        instrument = testutil::random_hermitian_instrument(d, n_out, rng);
        q = testutil::random_psd(d, rng);
      } else {
        const cmatrix_t basis = testutil::random_unitary(d, rng);
        instrument = testutil::random_commuting_instrument(d, n_out, rng, basis);
        Eigen::VectorXd vals = Eigen::VectorXd::Random(d).cwiseAbs();
        cmatrix_t diag = basis * vals.cast<complex_t>().asDiagonal() * basis.adjoint();
        q = (diag + diag.adjoint()) / 2.0;
      }
      const LuedersResult result = check_lueders_fixed_point(instrument, q, kTol);
      require(result.all_kraus_hermitian, "instrument construction must be Hermitian");
      require(result.fixed_point == result.commuting,
              "fixed point and commutation must coincide for Hermitian instruments");
      ++equivalence_trials;
    }

    // Implication lattice over generic and classical processes.
    int lattice_trials = 0;
    int commuting_cases = 0;
    int converse_applicable = 0;
    for (int trial = 0; trial < 210; ++trial) {
      const Eigen::Index d = 2 + trial % 2;
      const int times = 2 + trial % 2;
      const MarkovProcess p = (trial % 3 == 0)
                                  ? testutil::random_classical_process(d, times, rng)
                                  : testutil::random_process(d, times, rng);
      const CheckResult commutators = check_commutators(p, kTol);
      const CheckResult absolute = check_absolute_commutativity(p, kTol);
      const CheckResult weak = check_weak_commutativity(p, kTol);
      const CheckResult consistency = check_kolmogorov(p, kTol);
      if (commutators.pass) {
        ++commuting_cases;
        require(absolute.pass, "commutation must imply absolute commutativity");
        require(weak.pass, "commutation must imply weak commutativity");
        require(consistency.pass, "commutation must imply consistency");
      }
      if (absolute.pass) {
        require(consistency.pass, "absolute commutativity must imply consistency");
        require(weak.pass, "absolute commutativity must imply weak commutativity");
      }
      if (!consistency.pass) {
        require(!commutators.pass, "inconsistency must rule out commutation");
      }
      const ClassicalityReport report = analyze(p);
      require(report.audit_violations().empty(), "internal audit must stay clean");
      for (const auto &audit : report.audits) {
        if (audit.rule.rfind("inclusion+consistency=>commutators", 0) == 0 &&
            audit.applicable) {
          ++converse_applicable;
        }
      }
      ++lattice_trials;
    }
    require(commuting_cases >= 50, "ensemble must exercise the commuting branch");
    require(converse_applicable >= 30,
            "ensemble must exercise the restricted converse with met hypotheses");

    // Dephasing criterion vs consistency for fixed-basis projective probing.
    int projective_trials = 0;
    int classical_count = 0;
    for (int trial = 0; trial < 210; ++trial) {
      const Eigen::Index d = 2 + trial % 2;
      const int times = 3;
      const bool classical = trial % 2 == 0;
      const MarkovProcess p =
          testutil::random_projective_process(d, times, rng, classical);
      const CheckResult dephasing =
          check_ncgd(p, testutil::computational_basis(d), kTol);
      const CheckResult consistency = check_kolmogorov(p, kTol);
      require(dephasing.pass == consistency.pass,
              "dephasing criterion must match consistency");
      if (dephasing.pass) ++classical_count;
      ++projective_trials;
    }
    require(classical_count >= 100, "ensemble must exercise the classical branch");
    require(projective_trials - classical_count >= 50,
            "ensemble must exercise the non-classical branch");

    return std::to_string(equivalence_trials) + " fixed-point trials, " +
           std::to_string(lattice_trials) + " lattice trials (" +
           std::to_string(commuting_cases) + " commuting, " +
           std::to_string(converse_applicable) + " converse-applicable), " +
           std::to_string(projective_trials) + " projective trials";
  });

  //-----------------------------------------------------------------------
  criterion(9, "distributions are normalised and marginalise to one", [] {
    Rng rng(777);
    double worst = 0.0;

    auto exercise = [&worst](const MarkovProcess &p) {
      JointDistribution dist = full_distribution(p);
      worst = std::max(worst, std::abs(dist.total() - 1.0));
      require(std::abs(dist.total() - 1.0) <= kTol, "distribution must sum to one");
      for (int time = 1; time <= p.times(); ++time) dist = marginalize(dist, time);
      require(dist.table.size() == 1, "marginalising every time leaves one entry");
      require(std::abs(dist.table.front().second - 1.0) <= kTol,
              "the final entry must be one");
    };

    for (const auto &id : scenario_ids()) exercise(make_scenario(id).process);
    for (int trial = 0; trial < 60; ++trial) {
      exercise(testutil::random_process(2 + trial % 2, 2 + trial % 2, rng));
    }
    return "6 scenarios + 60 random processes, worst normalisation error " + fmt(worst);
  });

  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria hold\n");
  return 0;
}

// Copyright 2026 The qikit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "qikit/channels.hpp"
#include "qikit/instrument.hpp"

using namespace qikit;

namespace {

QuantumInstrument instrument_from_kraus(
    int num_qubits, const std::vector<std::vector<Eigen::MatrixXcd>>& branches) {
  std::vector<OutcomeBranch> outcomes;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    outcomes.push_back({std::to_string(i), ptm_from_kraus(branches[i])});
  }
  return QuantumInstrument(num_qubits, std::move(outcomes));
}

QuantumInstrument single_outcome_identity(int num_qubits) {
  return QuantumInstrument(num_qubits, {{"0", Ptm::identity(num_qubits)}});
}

QuantumInstrument fully_depolarizing_instrument() {
  const Ptm half(0.5 * channels::depolarizing_ptm(1.0).matrix());
  return QuantumInstrument(1, {{"0", half}, {"1", half}});
}

}  // namespace

TEST_CASE("construction enforces structure") {
  const Ptm id = Ptm::identity(1);
  CHECK_THROWS_AS(QuantumInstrument(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(QuantumInstrument(1, {{"0", id}, {"0", id}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(QuantumInstrument(2, {{"0", id}}), std::invalid_argument);
}

TEST_CASE("validate: ideal passes, duplicated branch fails TP") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  CHECK(validate(ideal, 1e-9).passed);

  const Ptm branch0 = ideal.outcome(0).ptm;
  const QuantumInstrument broken(1, {{"0", branch0}, {"1", branch0}});
  const ValidationReport report = validate(broken, 1e-9);
  CHECK_FALSE(report.passed);
  // Doubled top row sums to (1, 0, 0, 1).
  CHECK(report.tp_residual == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("validate: experimental fixture passes at the loose tolerance") {
  const QuantumInstrument experimental = fixtures::experimental_instrument();
  const ValidationReport report =
      validate(experimental, fixtures::kExperimentalTol);
  CHECK(report.passed);
  CHECK(report.tp_residual <= 1e-3);
  // The published rounding leaves small CP / trace-gain violations, so the
  // strict default must fail.
  CHECK_FALSE(validate(experimental, 1e-6).passed);
}

TEST_CASE("outcome probabilities reproduce the worked numbers") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  const auto p_ground = outcome_probabilities(ideal, PauliVector{1, 0, 0, 1});
  CHECK(p_ground[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p_ground[1] == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  const QuantumInstrument experimental = fixtures::experimental_instrument();
  const auto p_excited =
      outcome_probabilities(experimental, PauliVector{1, 0, 0, -1});
  CHECK(std::abs(p_excited[0] - 0.02) < 0.005);
  CHECK(std::abs(p_excited[1] - 0.98) < 0.005);
}

TEST_CASE("outcome probabilities satisfy the Born rule on |+>") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  const PauliVector plus{1, 1, 0, 0};
  const auto probs = outcome_probabilities(ideal, plus);
  // Oracle: Tr[E_i rho] with projective effects on |+><+|.
  Eigen::MatrixXcd rho_plus(2, 2);
  rho_plus << 0.5, 0.5, 0.5, 0.5;
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1;
  CHECK(probs[0] ==
        doctest::Approx((p0 * rho_plus).trace().real()).epsilon(1e-12));
  CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(outcome_probabilities(ideal, PauliVector{2, 0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("post-measurement states") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  const PauliVector mixed = PauliVector::maximally_mixed(1);
  CHECK(post_measurement_state(ideal, "0", mixed)
            .coeffs()
            .isApprox(Eigen::Vector4d(1, 0, 0, 1), 1e-12));

  const QuantumInstrument experimental = fixtures::experimental_instrument();
  const PauliVector post1 = post_measurement_state(experimental, "1", mixed);
  CHECK(std::abs(post1[3] - (-0.84)) < 0.02);

  // Impossible branch: measuring 1 on |0>.
  CHECK_THROWS_AS(post_measurement_state(ideal, "1", PauliVector{1, 0, 0, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(post_measurement_state(ideal, "2", mixed),
                  std::invalid_argument);
}

TEST_CASE("apply splits the state per outcome") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);

  const auto eigen_branches = apply(ideal, PauliVector{1, 0, 0, 1});
  REQUIRE(eigen_branches.size() == 1);
  CHECK(eigen_branches[0].label == "0");
  CHECK(eigen_branches[0].probability == doctest::Approx(1.0));

  const auto mixed_branches = apply(ideal, PauliVector::maximally_mixed(1));
  REQUIRE(mixed_branches.size() == 2);
  CHECK(mixed_branches[0].probability == doctest::Approx(0.5));
  CHECK(mixed_branches[0].state.coeffs().isApprox(
      Eigen::Vector4d(1, 0, 0, 1), 1e-12));
  CHECK(mixed_branches[1].state.coeffs().isApprox(
      Eigen::Vector4d(1, 0, 0, -1), 1e-12));

  const QuantumInstrument experimental = fixtures::experimental_instrument();
  const auto noisy = apply(experimental, PauliVector{1, 0, 0, -1});
  REQUIRE(noisy.size() == 2);
  CHECK(std::abs(noisy[1].state[3] - (-0.85)) < 0.02);
}

TEST_CASE("apply conserves probability") {
  std::mt19937_64 rng(51);
  const QuantumInstrument experimental = fixtures::experimental_instrument();
  for (int trial = 0; trial < 20; ++trial) {
    const PauliVector v = vectorize(oracle::random_density(2, rng));
    double total = 0.0;
    for (const auto& branch : apply(experimental, v)) {
      total += branch.probability;
    }
    CHECK(total == doctest::Approx(v.trace()).epsilon(1e-10));
  }
}

TEST_CASE("discard sums the branches") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  CHECK(discard(ideal).matrix().isApprox(
      Eigen::Vector4d(1, 0, 0, 1).asDiagonal().toDenseMatrix(), 1e-14));

  CHECK(is_tp(discard(fixtures::experimental_instrument()), 1e-9).tp);

  CHECK(discard(single_outcome_identity(1))
            .matrix()
            .isApprox(Eigen::MatrixXd::Identity(4, 4)));
}

TEST_CASE("compose: QND structure of the ideal instrument") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  const QuantumInstrument twice = compose(ideal, ideal);
  REQUIRE(twice.num_outcomes() == 4);
  CHECK(twice.outcome(0).label == "0,0");
  CHECK(twice.outcome(1).label == "0,1");
  // Mismatched outcomes are impossible: P1 P0 = 0.
  CHECK(twice.outcome(twice.outcome_index("0,1")).ptm.matrix().norm() <
        1e-14);
  CHECK(twice.outcome(twice.outcome_index("1,0")).ptm.matrix().norm() <
        1e-14);
  CHECK(validate(twice, 1e-9).passed);

  const QuantumInstrument three = compose(ideal, twice);
  CHECK(three.num_outcomes() == 8);

  const QuantumInstrument with_identity =
      compose(ideal, single_outcome_identity(1));
  REQUIRE(with_identity.num_outcomes() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(with_identity.outcome(i).ptm.matrix().isApprox(
        ideal.outcome(i).ptm.matrix(), 0.0));
  }

  CHECK_THROWS_AS(compose(ideal, ideal_projective_instrument(2)),
                  std::invalid_argument);
}

TEST_CASE("compose respects label time order and factorizes discard") {
  std::mt19937_64 rng(53);
  const auto first_kraus = oracle::random_instrument_kraus(2, 2, 1, rng);
  const auto second_kraus = oracle::random_instrument_kraus(2, 2, 2, rng);
  const QuantumInstrument first = instrument_from_kraus(1, first_kraus);
  const QuantumInstrument second = instrument_from_kraus(1, second_kraus);
  const QuantumInstrument joint = compose(second, first);
  CHECK(joint.num_outcomes() == 4);
  CHECK(validate(joint, 1e-9).passed);

  const Eigen::MatrixXd lhs = discard(joint).matrix();
  const Eigen::MatrixXd rhs =
      (discard(second).matrix() * discard(first).matrix());
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("confusion matrix") {
  CHECK(confusion_matrix(ideal_projective_instrument(1))
            .isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-12));

  const Eigen::MatrixXd experimental =
      confusion_matrix(fixtures::experimental_instrument());
  Eigen::MatrixXd target(2, 2);
  target << 1, 0.02, 0, 0.98;
  CHECK((experimental - target).cwiseAbs().maxCoeff() < 0.01);

  const QuantumInstrument flipped =
      wrap(ideal_projective_instrument(1), channels::bit_flip_ptm(0.1),
           Ptm::identity(1));
  Eigen::MatrixXd flipped_target(2, 2);
  flipped_target << 0.9, 0.1, 0.1, 0.9;
  CHECK(confusion_matrix(flipped).isApprox(flipped_target, 1e-10));
}

TEST_CASE("assignment fidelity") {
  CHECK(assignment_fidelity(Eigen::MatrixXd::Identity(2, 2)) == 1.0);
  CHECK(assignment_fidelity(
            confusion_matrix(fixtures::experimental_instrument())) ==
        doctest::Approx(0.99).epsilon(0.006));
  CHECK(assignment_fidelity(Eigen::MatrixXd::Constant(2, 2, 0.5)) == 0.5);
}

TEST_CASE("POVM effects") {
  const auto ideal_effects = povm_effects(ideal_projective_instrument(1));
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1;
  Eigen::MatrixXcd p1 = Eigen::MatrixXcd::Zero(2, 2);
  p1(1, 1) = 1;
  CHECK((ideal_effects[0].matrix - p0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((ideal_effects[1].matrix - p1).cwiseAbs().maxCoeff() < 1e-14);

  const auto effects = povm_effects(fixtures::experimental_instrument());
  CHECK(effects[0].pauli_coeffs.isApprox(
      Eigen::Vector4d(0.5117, 0.0018, -0.0026, 0.4940), 1e-12));
  CHECK(effects[1].pauli_coeffs.isApprox(
      Eigen::Vector4d(0.4883, -0.0018, 0.0026, -0.4940), 1e-12));

  // Effects resolve the identity.
  Eigen::MatrixXcd sum = effects[0].matrix + effects[1].matrix;
  CHECK((sum - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-9);
}

TEST_CASE("Born rule consistency between effects and top rows") {
  std::mt19937_64 rng(57);
  const QuantumInstrument experimental = fixtures::experimental_instrument();
  const auto effects = povm_effects(experimental);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXcd rho = oracle::random_density(2, rng);
    const auto probs = outcome_probabilities(experimental, vectorize(rho));
    for (std::size_t i = 0; i < effects.size(); ++i) {
      const double born = (effects[i].matrix * rho).trace().real();
      CHECK(std::abs(born - probs[i]) < 1e-12);
    }
  }
}

TEST_CASE("measurement axis and tilt") {
  const auto ideal_effects = povm_effects(ideal_projective_instrument(1));
  const MeasurementAxis axis0 = measurement_axis(ideal_effects[0]);
  CHECK(axis0.axis.isApprox(Eigen::Vector3d(0, 0, 1), 1e-12));
  CHECK(axis0.tilt_degrees == doctest::Approx(0.0).scale(1).epsilon(1e-12));

  const auto effects = povm_effects(fixtures::experimental_instrument());
  const MeasurementAxis tilted = measurement_axis(effects[0]);
  const double expected =
      std::atan2(std::hypot(0.0018, 0.0026), 0.4940) * 180.0 / M_PI;
  CHECK(tilted.tilt_degrees == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(tilted.tilt_degrees - 0.37) < 0.01);

  PovmEffect x_effect;
  x_effect.label = "+";
  x_effect.pauli_coeffs = Eigen::Vector4d(0.5, 0.5, 0, 0);
  x_effect.matrix = Eigen::MatrixXcd::Zero(2, 2);
  const MeasurementAxis x_axis = measurement_axis(x_effect);
  CHECK(x_axis.axis.isApprox(Eigen::Vector3d(1, 0, 0), 1e-12));
  CHECK(x_axis.tilt_degrees == doctest::Approx(90.0).epsilon(1e-12));

  PovmEffect flat;
  flat.label = "flat";
  flat.pauli_coeffs = Eigen::Vector4d(0.5, 0, 0, 0);
  CHECK_THROWS_AS(measurement_axis(flat), std::domain_error);
}

TEST_CASE("measure-and-prepare detection") {
  CHECK(is_measure_and_prepare(ideal_projective_instrument(1)));
  CHECK(is_measure_and_prepare(ideal_projective_instrument(2)));
  CHECK_FALSE(is_measure_and_prepare(fixtures::experimental_instrument()));
  CHECK_FALSE(is_measure_and_prepare(single_outcome_identity(1)));
}

TEST_CASE("QND repeatability") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const PauliVector v = vectorize(oracle::random_density(2, rng));
    CHECK(std::abs(qnd_repeatability(ideal, v) - 1.0) < 1e-10);
  }

  const QuantumInstrument experimental = fixtures::experimental_instrument();
  const double repeat =
      qnd_repeatability(experimental, PauliVector{1, 0, 0, -1});
  CHECK(repeat < 0.99);  // Z-polarization loss forces repeat errors

  CHECK(qnd_repeatability(fully_depolarizing_instrument(),
                          PauliVector::maximally_mixed(1)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ideal projective instrument") {
  const QuantumInstrument one = ideal_projective_instrument(1);
  REQUIRE(one.num_outcomes() == 2);
  CHECK(one.outcome(0).label == "0");
  CHECK(one.outcome(1).label == "1");
  CHECK(one.outcome(0).ptm.matrix().row(0).transpose().isApprox(
      Eigen::Vector4d(0.5, 0, 0, 0.5), 0.0));
  CHECK(one.outcome(1).ptm.matrix().row(0).transpose().isApprox(
      Eigen::Vector4d(0.5, 0, 0, -0.5), 0.0));

  // Branches equal the single-Kraus construction.
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1;
  CHECK(one.outcome(0).ptm.matrix().isApprox(
      ptm_from_kraus({p0}).matrix(), 1e-14));

  CHECK(validate(one, 1e-12).passed);
  CHECK(confusion_matrix(one).isApprox(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(assignment_fidelity(confusion_matrix(one)) == 1.0);

  const QuantumInstrument two = ideal_projective_instrument(2);
  REQUIRE(two.num_outcomes() == 4);
  CHECK(two.outcome(1).label == "01");
  for (const auto& outcome : two.outcomes()) {
    CHECK(numerical_rank(outcome.ptm) == 1);
  }
  // Cross-check one branch against the Kraus oracle.
  Eigen::MatrixXcd p01 = Eigen::MatrixXcd::Zero(4, 4);
  p01(1, 1) = 1;
  CHECK(two.outcome(1).ptm.matrix().isApprox(
      ptm_from_kraus({p01}).matrix(), 1e-14));

  CHECK_THROWS_AS(ideal_projective_instrument(max_qubits() + 1),
                  std::invalid_argument);
}

TEST_CASE("wrap") {
  const QuantumInstrument ideal = ideal_projective_instrument(1);
  const QuantumInstrument same =
      wrap(ideal, Ptm::identity(1), Ptm::identity(1));
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(same.outcome(i).ptm.matrix().isApprox(
        ideal.outcome(i).ptm.matrix(), 0.0));
  }

  const QuantumInstrument damped =
      wrap(ideal, Ptm::identity(1), channels::amplitude_damping_ptm(0.15));
  CHECK(validate(damped, 1e-9).passed);
  CHECK(damped.outcome(1).ptm(3, 3) < damped.outcome(0).ptm(3, 3));

  CHECK_THROWS_AS(wrap(ideal, ideal.outcome(0).ptm, Ptm::identity(1)),
                  std::invalid_argument);
  const std::map<std::string, Ptm> bad_post{{"not-a-label", Ptm::identity(1)}};
  CHECK_THROWS_AS(wrap(ideal, Ptm::identity(1), bad_post),
                  std::invalid_argument);
}

TEST_CASE("TP constraint ties the two top rows together") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const QuantumInstrument instr = instrument_from_kraus(
        1, oracle::random_instrument_kraus(2, 2, 1 + trial % 3, rng));
    REQUIRE(validate(instr, 1e-9).passed);
    const Eigen::VectorXd row0 = instr.outcome(0).ptm.matrix().row(0);
    const Eigen::VectorXd row1 = instr.outcome(1).ptm.matrix().row(0);
    CHECK(row1(0) == doctest::Approx(1.0 - row0(0)).epsilon(1e-10));
    for (int j = 1; j < 4; ++j) {
      CHECK(row1(j) == doctest::Approx(-row0(j)).scale(1).epsilon(1e-10));
    }
  }
}

TEST_CASE("random instruments match the brute-force density-matrix "
          "pipeline") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial % 4 == 0 ? 2 : 1;
    const Eigen::Index d = Eigen::Index{1} << n;
    const int outcomes = 2 + trial % 2;
    const auto kraus_branches =
        oracle::random_instrument_kraus(d, outcomes, 2, rng);
    const QuantumInstrument instr = instrument_from_kraus(n, kraus_branches);
    CHECK(validate(instr, 1e-9).passed);

    const Eigen::MatrixXcd rho = oracle::random_density(d, rng);
    const PauliVector v = vectorize(rho);
    const auto probs = outcome_probabilities(instr, v);
    for (int i = 0; i < outcomes; ++i) {
      const auto& branch_kraus = kraus_branches[static_cast<std::size_t>(i)];
      const double p_expected = oracle::branch_probability(branch_kraus, rho);
      CHECK(std::abs(probs[static_cast<std::size_t>(i)] - p_expected) <
            1e-10);
      if (p_expected > 1e-6) {
        const Eigen::MatrixXcd post_expected =
            oracle::kraus_apply(branch_kraus, rho) / p_expected;
        const PauliVector post =
            post_measurement_state(instr, std::to_string(i), v);
        CHECK((devectorize(post) - post_expected).cwiseAbs().maxCoeff() <
              1e-10);
      }
    }
  }
}

TEST_CASE("post states from valid instruments are physical") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const QuantumInstrument instr = instrument_from_kraus(
        1, oracle::random_instrument_kraus(2, 2, 2, rng));
    const PauliVector v = vectorize(oracle::random_density(2, rng));
    for (const auto& branch : apply(instr, v)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
          devectorize(branch.state));
      CHECK(solver.eigenvalues().minCoeff() > -1e-8);
    }
  }
}

TEST_CASE("diagnose assembles the full report") {
  const DiagnosticReport report =
      diagnose(fixtures::experimental_instrument(),
               fixtures::kExperimentalTol);
  CHECK(report.passed);
  CHECK(report.num_qubits == 1);
  CHECK(report.tp_residual <= 1e-3);
  REQUIRE(report.branches.size() == 2);
  CHECK(report.branches[0].numerical_rank > 1);
  CHECK(report.branches[0].pauli_fidelities(3) == doctest::Approx(0.49));
  CHECK(report.branches[1].pauli_fidelities(3) == doctest::Approx(0.43));
  CHECK(report.assignment_fidelity == doctest::Approx(0.99).epsilon(0.006));
  CHECK_FALSE(report.measure_and_prepare);
  REQUIRE(report.post_mixed_states.size() == 2);
  CHECK(std::abs((*report.post_mixed_states[1])[3] - (-0.84)) < 0.02);
  CHECK(std::abs(report.axis_tilt_degrees[0] - 0.37) < 0.01);
  REQUIRE(report.qnd_repeatability.size() == 2);
  CHECK(report.qnd_repeatability[1] < 0.99);

  const DiagnosticReport ideal_report =
      diagnose(ideal_projective_instrument(1));
  CHECK(ideal_report.passed);
  CHECK(ideal_report.measure_and_prepare);
  CHECK(ideal_report.qnd_repeatability[0] == doctest::Approx(1.0));
  CHECK(ideal_report.qnd_repeatability[1] == doctest::Approx(1.0));
}

// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qmeas/errors.hpp"
#include "qmeas/measurement.hpp"
#include "test_support.hpp"

using namespace qmeas;
using namespace qmeas_test;

TEST_CASE("projectors must be hermitian and idempotent") {
    auto rng = make_rng(31);
    Vector v = random_pure(rng, 3);
    Projector p = Projector::onto(v);
    CHECK((p.matrix() - v * v.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p.matrix() * p.matrix() - p.matrix()).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(Projector{0.5 * Matrix::Identity(2, 2)}, InvalidArgument);
    CHECK_THROWS_AS(Projector{random_matrix(rng, 2, 2)}, NotHermitian);
}

TEST_CASE("povm effects must be positive") {
    Matrix indefinite(2, 2);
    indefinite << 1.0, 0.0, 0.0, -0.1;
    CHECK_THROWS_AS(PovmEffect{indefinite}, NotPositive);

    auto rng = make_rng(32);
    PovmEffect ok(0.3 * random_psd(rng, 3));
    CHECK(ok.dim() == 3);
}

TEST_CASE("povm construction enforces completeness") {
    Matrix half = 0.5 * Matrix::Identity(2, 2);
    Povm ok({PovmEffect(half), PovmEffect(half)}, {"a", "b"});
    CHECK(ok.labels()[1] == "b");
    CHECK_THROWS_AS(Povm({PovmEffect(half)}, {"a"}), NotComplete);
    CHECK_THROWS_AS(Povm({PovmEffect(half), PovmEffect(half)}, {"a"}), InvalidArgument);
}

TEST_CASE("born probabilities come from the trace rule") {
    auto rng = make_rng(33);
    DensityMatrix rho(random_density(rng, 3));
    Matrix e = 0.4 * random_psd(rng, 3);
    e /= e.cwiseAbs().maxCoeff() * 2.0;
    double expected = (e * rho.matrix()).trace().real();
    CHECK(born_probability(rho, PovmEffect(e)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("projective_update applies the sum-over-branches rule") {
    auto rng = make_rng(34);
    DensityMatrix rho(random_density(rng, 2));
    std::vector<Projector> z = {Projector::onto(ket_plus().amplitudes()),
                                Projector::onto(ket_minus().amplitudes())};
    DensityMatrix updated = projective_update(rho, z);
    CHECK(std::abs(updated.matrix()(0, 1)) < 1e-14);
    CHECK(updated.matrix()(0, 0).real() ==
          doctest::Approx(rho.matrix()(0, 0).real()).epsilon(1e-12));

    // overlapping projectors are rejected
    std::vector<Projector> overlapping = {Projector::onto(ket_plus().amplitudes()),
                                          Projector::onto(ket_plus_x().amplitudes())};
    CHECK_THROWS_AS(projective_update(rho, overlapping), NotOrthogonal);
    // incomplete sets are rejected
    std::vector<Projector> partial = {Projector::onto(ket_plus().amplitudes())};
    CHECK_THROWS_AS(projective_update(rho, partial), NotComplete);
}

TEST_CASE("split_positive squares back to the effect") {
    auto rng = make_rng(35);
    for (int trial = 0; trial < 1000; ++trial) {
        Index dim = 2 + static_cast<Index>(trial % 7);
        Matrix a = random_psd(rng, dim);
        a /= (a.cwiseAbs().maxCoeff() * 1.5);
        Matrix k = split_positive(PovmEffect(a));
        CHECK((k.adjoint() * k - a).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(hermiticity_residual(k) < 1e-10);
    }
}

TEST_CASE("two_detector_povm is complete and positivity-limited") {
    Povm at_half = two_detector_povm(0.5, 0.5);
    REQUIRE(at_half.effects().size() == 3);
    CHECK(at_half.labels() == std::vector<std::string>{"z", "x", "null"});
    Matrix sum = Matrix::Zero(2, 2);
    for (const auto& e : at_half.effects()) {
        sum += e.matrix();
    }
    CHECK((sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(two_detector_povm(0.9, 0.9), NotPositive);
    CHECK_THROWS_AS(two_detector_povm(1.2, 0.0), NotPositive);
    CHECK_THROWS_AS(two_detector_povm(-0.1, 0.0), NotPositive);
}

TEST_CASE("equal detection probability maxes out at 2 - sqrt(2)") {
    double p = max_equal_detection_probability();
    CHECK(std::abs(p - 0.5857864376269049) < 1e-6);
    // the null effect keeps one eigenvalue at zero there: 1 - p (1 + 1/sqrt 2)
    Matrix direction_sum(2, 2);
    direction_sum << 1.5, 0.5, 0.5, 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(Matrix::Identity(2, 2) - p * direction_sum);
    CHECK(std::abs(solver.eigenvalues().minCoeff()) < 1e-6);
}

TEST_CASE("kraus_from_unitary reproduces the partial-trace channel") {
    auto rng = make_rng(36);
    for (auto [ds, de] : {std::pair<Index, Index>{2, 2}, {3, 2}, {2, 3}}) {
        Matrix u = random_unitary(rng, ds * de);
        DensityMatrix env(random_density(rng, de));
        KrausSet kraus = kraus_from_unitary(u, env, ds, de);
        CHECK(kraus.completeness_residual() < 1e-9);

        DensityMatrix rho(random_density(rng, ds));
        Matrix joint = u * tensor_product(rho.matrix(), env.matrix()) * u.adjoint();
        Matrix reduced = partial_trace(joint, ds, de, Subsystem::First);
        DensityMatrix via_kraus = apply_channel(kraus, rho);
        CHECK((via_kraus.matrix() - reduced).cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK_THROWS_AS(
        kraus_from_unitary(2.0 * Matrix::Identity(4, 4), DensityMatrix(random_density(rng, 2)), 2,
                           2),
        NotUnitary);
}

TEST_CASE("projector kraus set fixes the z basis") {
    KrausSet z({Projector::onto(ket_plus().amplitudes()).matrix(),
                Projector::onto(ket_minus().amplitudes()).matrix()});
    DensityMatrix plus_x = density_from_pure(ket_plus_x());
    DensityMatrix dephased = apply_channel(z, plus_x);
    CHECK(std::abs(dephased.matrix()(0, 1)) < 1e-14);
    CHECK(dephased.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("observable decomposition reconstructs exactly") {
    auto rng = make_rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        Index dim = 2 + static_cast<Index>(trial % 5);
        Matrix q = random_hermitian(rng, dim);
        ObservableDecomposition dec = observable_decomposition(q);
        CHECK((dec.reconstruct() - q).cwiseAbs().maxCoeff() < 1e-12);

        DensityMatrix rho(random_density(rng, dim));
        double via_terms = dec.expectation_via_terms(rho);
        CHECK(std::abs(via_terms - expectation(rho, q)) < 1e-12);
    }
}

TEST_CASE("decomposition drops vanishing coefficients") {
    ObservableDecomposition z = observable_decomposition(sigma_z());
    CHECK(z.diagonal.size() == 2);
    CHECK(z.symmetric.empty());
    CHECK(z.antisymmetric.empty());
    CHECK(z.diagonal[0].coeff == 1.0);
    CHECK(z.diagonal[1].coeff == -1.0);

    ObservableDecomposition x = observable_decomposition(sigma_x());
    CHECK(x.diagonal.empty());
    REQUIRE(x.symmetric.size() == 1);
    CHECK(x.symmetric[0].coeff == 1.0);
    CHECK(x.antisymmetric.empty());
    CHECK((x.symmetric[0].op - sigma_x()).cwiseAbs().maxCoeff() == 0.0);

    ObservableDecomposition y = observable_decomposition(sigma_y());
    CHECK(y.diagonal.empty());
    CHECK(y.symmetric.empty());
    REQUIRE(y.antisymmetric.size() == 1);
    CHECK(y.antisymmetric[0].coeff == 1.0);
    CHECK((y.antisymmetric[0].op - sigma_y()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pair operators expose coherences to a pointer coupling") {
    // B_mn and C_mn are rank-two observables with eigenvalues +/-1 on the
    // (m, n) plane; both square to a projector.
    ObservableDecomposition dec = observable_decomposition(sigma_x() + 2.0 * sigma_y());
    for (const auto& term : dec.symmetric) {
        Matrix sq = term.op * term.op;
        CHECK((sq * sq - sq).cwiseAbs().maxCoeff() < 1e-14);
    }
    REQUIRE(dec.symmetric.size() == 1);
    CHECK(dec.symmetric[0].coeff == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(dec.antisymmetric.size() == 1);
    CHECK(dec.antisymmetric[0].coeff == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("cyclic shift and its generator agree") {
    for (Index dim : {2, 3, 5}) {
        Matrix s = cyclic_shift(dim);
        CHECK(unitarity_residual(s) < 1e-14);
        // |p> -> |p+1 mod d|
        for (Index p = 0; p < dim; ++p) {
            CHECK(s((p + 1) % dim, p) == Complex(1.0));
        }
        Matrix gen = shift_generator(dim);
        CHECK(hermiticity_residual(gen) < 1e-12);
        CHECK((expm(Complex(0, -1) * gen) - s).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("pointer unitary advances the meter by the eigenvalue index") {
    Matrix d = von_neumann_pointer_unitary(sigma_z(), 2);
    CHECK(unitarity_residual(d) < 1e-12);
    // ascending eigenvalue order: -1 keeps the pointer, +1 advances it
    Vector minus_ready = tensor_product(ket_minus().amplitudes(), ket_plus().amplitudes());
    Vector plus_ready = tensor_product(ket_plus().amplitudes(), ket_plus().amplitudes());
    Vector plus_moved = tensor_product(ket_plus().amplitudes(), ket_minus().amplitudes());
    CHECK((d * minus_ready - minus_ready).norm() < 1e-12);
    CHECK((d * plus_ready - plus_moved).norm() < 1e-12);

    CHECK_THROWS_AS(von_neumann_pointer_unitary(sigma_z(), 3), DimensionMismatch);
}

TEST_CASE("qnd_check accepts the measured observable and flags conjugates") {
    Matrix d = von_neumann_pointer_unitary(sigma_z(), 2);
    Vector ready = ket_plus().amplitudes();
    Matrix joint_h = tensor_product(sigma_z(), shift_generator(2));

    QndReport good = qnd_check(sigma_z(), d, ready, joint_h);
    CHECK(good.ready_state_ok);
    CHECK(good.commutator_ok);
    REQUIRE(good.hamiltonian_ok.has_value());
    CHECK(*good.hamiltonian_ok);
    CHECK(good.ready_state_residual < 1e-9);
    CHECK(good.commutator_residual < 1e-9);
    CHECK(*good.hamiltonian_residual < 1e-9);

    QndReport bad = qnd_check(sigma_x(), d, ready, joint_h);
    CHECK_FALSE(bad.commutator_ok);
    // |[sx x 1, D]|_F = sqrt(8) for the qubit pointer coupling
    CHECK(bad.commutator_residual == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
    CHECK_FALSE(bad.ready_state_ok);

    QndReport no_h = qnd_check(sigma_z(), d, ready);
    CHECK_FALSE(no_h.hamiltonian_ok.has_value());
}

TEST_CASE("impulsive coupling is the exponential of the product term") {
    double epsilon = 0.7;
    double tau = 0.5;
    Matrix u = impulsive_coupling(sigma_z(), shift_generator(2), epsilon, tau);
    CHECK(unitarity_residual(u) < 1e-12);
    Matrix direct = expm(Complex(0, -1) * epsilon * tau *
                         tensor_product(sigma_z(), shift_generator(2)));
    CHECK((u - direct).cwiseAbs().maxCoeff() < 1e-13);
}

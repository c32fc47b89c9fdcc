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
#include "qmeas/weak.hpp"
#include "test_support.hpp"

using namespace qmeas;
using namespace qmeas_test;

namespace {

PrePostPair random_pair(std::mt19937_64& rng, Index dim) {
    return {PureState(random_pure(rng, dim)), PureState(random_pure(rng, dim))};
}

}  // namespace

TEST_CASE("weak_value is the normalized transition matrix element") {
    auto rng = make_rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        Index dim = 2 + static_cast<Index>(trial % 4);
        PrePostPair pair = random_pair(rng, dim);
        Matrix s = random_hermitian(rng, dim);

        Complex denom = (pair.post.amplitudes().adjoint() * pair.pre.amplitudes()).value();
        Complex numer = (pair.post.amplitudes().adjoint() * s * pair.pre.amplitudes()).value();
        CHECK(std::abs(weak_value(pair, s) - numer / denom) < 1e-12);

        Complex numer2 =
            (pair.post.amplitudes().adjoint() * s * s * pair.pre.amplitudes()).value();
        CHECK(std::abs(weak_value(pair, s, 2) - numer2 / denom) < 1e-12);
        CHECK(weak_value(pair, s, 0) == Complex(1.0));

        CHECK(std::abs(selection_overlap(pair) - denom) < 1e-15);
    }
}

TEST_CASE("orthogonal selections are rejected") {
    PrePostPair orthogonal{ket_plus(), ket_minus()};
    CHECK_THROWS_AS(weak_value(orthogonal, sigma_z()), OrthogonalSelection);
}

TEST_CASE("weak_value_series collects the moments in order") {
    auto rng = make_rng(42);
    PrePostPair pair = random_pair(rng, 3);
    Matrix s = random_hermitian(rng, 3);
    WeakValue series = weak_value_series(pair, s, 3);
    REQUIRE(series.order_n_values.size() == 4);
    CHECK(series.order_n_values[0] == Complex(1.0));
    CHECK(series.value == series.order_n_values[1]);
    for (int k = 0; k <= 3; ++k) {
        CHECK(std::abs(series.order_n_values[k] - weak_value(pair, s, k)) < 1e-13);
    }
}

TEST_CASE("spin table matches the operator route on random spinors") {
    auto rng = make_rng(43);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector pre = random_pure(rng, 2);
        Vector post = random_pure(rng, 2);
        if (std::abs((post.adjoint() * pre).value()) < 1e-3) {
            continue;  // stay away from the orthogonal-selection pole
        }
        SpinWeakTable table = spin_weak_table(pre(0), pre(1), post(0), post(1));
        PrePostPair pair{PureState(pre), PureState(post)};
        CHECK(std::abs(table.x_weak - weak_value(pair, sigma_x())) < 1e-10);
        CHECK(std::abs(table.y_weak - weak_value(pair, sigma_y())) < 1e-10);
        CHECK(std::abs(table.z_weak - weak_value(pair, sigma_z())) < 1e-10);

        DensityMatrix rho_pre = density_from_pure(PureState(pre));
        DensityMatrix rho_post = density_from_pure(PureState(post));
        CHECK(table.x_pre == doctest::Approx(expectation(rho_pre, sigma_x())).epsilon(1e-10));
        CHECK(table.y_pre == doctest::Approx(expectation(rho_pre, sigma_y())).epsilon(1e-10));
        CHECK(table.z_pre == doctest::Approx(expectation(rho_pre, sigma_z())).epsilon(1e-10));
        CHECK(table.x_post == doctest::Approx(expectation(rho_post, sigma_x())).epsilon(1e-10));
        CHECK(table.y_post == doctest::Approx(expectation(rho_post, sigma_y())).epsilon(1e-10));
        CHECK(table.z_post == doctest::Approx(expectation(rho_post, sigma_z())).epsilon(1e-10));
    }
    CHECK_THROWS_AS(spin_weak_table(1.0, 1.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("angled pair pins the anomalous weak values") {
    // pre = ((cos t + sin t)|+> + (cos t - sin t)|->)/sqrt 2, post = |+x>:
    // sigma_x -> 1, sigma_y -> i tan t, sigma_z -> tan t
    for (double theta : {0.1, 0.3, 0.1 * std::numbers::pi, 0.35 * std::numbers::pi,
                         0.45 * std::numbers::pi}) {
        PrePostPair pair = angled_pair(theta);
        double t = std::tan(theta);
        CHECK(std::abs(weak_value(pair, sigma_x()) - Complex(1.0)) < 1e-12);
        CHECK(std::abs(weak_value(pair, sigma_y()) - Complex(0.0, t)) < 1e-12);
        CHECK(std::abs(weak_value(pair, sigma_z()) - Complex(t)) < 1e-12);
    }

    // tan(89.427 deg) = 99.989...; the weak value sits far outside the
    // eigenvalue range [-1, 1]
    PrePostPair extreme = angled_pair(89.427 * std::numbers::pi / 180.0);
    CHECK(weak_value(extreme, sigma_z()).real() ==
          doctest::Approx(99.98930080218624).epsilon(1e-10));
}

TEST_CASE("weak uncertainty for a pauli follows from (S^2)_w = 1") {
    PrePostPair pair = angled_pair(0.3);
    double t = std::tan(0.3);
    double expected = std::sqrt(std::abs(1.0 - t * t));
    CHECK(weak_uncertainty(pair, sigma_z()) == doctest::Approx(expected).epsilon(1e-12));
    // frozen value so a regression in either route shows up directly
    CHECK(weak_uncertainty(pair, sigma_z()) ==
          doctest::Approx(0.9509527247331767).epsilon(1e-12));
}

TEST_CASE("post-selected meter limits: no coupling and strong coupling") {
    MeterGrid grid = MeterGrid::standard();
    MeterWaveFunction phi = MeterWaveFunction::truncated_gaussian(grid, 1.0);
    double theta = 0.35 * std::numbers::pi;
    PrePostPair pair = angled_pair(theta);

    PostSelectedMeter off = post_selected_meter(
        phi, CouplingSpec::momentum_displacement(1.0, 0.0), pair, sigma_z());
    CHECK(off.success_probability ==
          doctest::Approx(std::cos(theta) * std::cos(theta)).epsilon(1e-10));
    CHECK(std::abs(off.centroid) < 1e-10);

    // fully separated branches add incoherently
    PostSelectedMeter strong = post_selected_meter(
        phi, CouplingSpec::momentum_displacement(1.0, 9.0), pair, sigma_z());
    Complex c_plus = (pair.post.amplitudes().adjoint() * ket_plus().amplitudes()).value() *
                     (ket_plus().amplitudes().adjoint() * pair.pre.amplitudes()).value();
    Complex c_minus = (pair.post.amplitudes().adjoint() * ket_minus().amplitudes()).value() *
                      (ket_minus().amplitudes().adjoint() * pair.pre.amplitudes()).value();
    double expected = std::norm(c_plus) + std::norm(c_minus);
    CHECK(strong.success_probability == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("weak coupling centers the conditioned meter on the weak value") {
    MeterGrid grid = MeterGrid::standard();
    MeterWaveFunction phi = MeterWaveFunction::truncated_gaussian(grid, 1.0);
    double theta = 0.35 * std::numbers::pi;
    PrePostPair pair = angled_pair(theta);

    PostSelectedMeter meter = post_selected_meter(
        phi, CouplingSpec::momentum_displacement(1.0, 0.02), pair, sigma_z());
    CHECK(meter.predicted_center == doctest::Approx(0.02 * std::tan(theta)).epsilon(1e-12));
    CHECK(meter.centroid == doctest::Approx(meter.predicted_center)
                                .epsilon(0.1));  // first order in eps tau
    CHECK(meter.centroid > 0.02);  // outside the eigenvalue range
}

TEST_CASE("momentum density picks up an imprinted plane wave") {
    MeterGrid grid = MeterGrid::standard();
    MeterWaveFunction phi = MeterWaveFunction::truncated_gaussian(grid, 1.0);
    Vector boosted = phi.values();
    for (Index i = 0; i < grid.n_points(); ++i) {
        boosted(i) *= std::exp(Complex(0.0, 0.7 * grid.q(i)));
    }
    auto [p, density] = momentum_density(grid, boosted);
    REQUIRE(p.size() == density.size());
    double mean = 0.0;
    double mass = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        mean += p[i] * density[i];
        mass += density[i];
    }
    CHECK(mean / mass == doctest::Approx(0.7).epsilon(1e-3));
}

TEST_CASE("coin model: conditioned value is 1/(1 - delta)") {
    for (auto [delta, strength] :
         {std::pair{0.0, 0.1}, {0.5, 0.1}, {0.9, 0.05}, {0.99, 0.005}}) {
        CoinModelSpec spec;
        spec.delta = delta;
        spec.strength = strength;
        CHECK(std::abs(coin_weak_value_analytic(spec) - 1.0 / (1.0 - delta)) < 1e-12);
    }
}

TEST_CASE("coin model rejects parameter sets with negative probabilities") {
    CoinModelSpec bad;
    bad.delta = 0.9;
    bad.strength = 0.2;  // delta / (1 - strength) > 1
    CHECK_THROWS_AS(coin_weak_value_analytic(bad), InvalidProbability);
    CHECK_THROWS_AS(coin_weak_value_monte_carlo(bad), InvalidProbability);

    CoinModelSpec edge;
    edge.strength = 1.5;
    CHECK_THROWS_AS(coin_weak_value_analytic(edge), InvalidProbability);
}

TEST_CASE("coin monte carlo reproduces the analytic value and is seeded") {
    CoinModelSpec spec;
    spec.delta = 0.5;
    spec.strength = 0.1;
    spec.trials = 200000;
    spec.seed = 7;

    MonteCarloEstimate first = coin_weak_value_monte_carlo(spec);
    MonteCarloEstimate second = coin_weak_value_monte_carlo(spec);
    CHECK(first.estimate == second.estimate);
    CHECK(first.accepted == second.accepted);
    CHECK(first.accepted > 0);
    CHECK(std::abs(first.estimate - 2.0) < 4.0 * first.std_error);

    spec.seed = 8;
    MonteCarloEstimate third = coin_weak_value_monte_carlo(spec);
    CHECK(third.estimate != first.estimate);

    spec.trials = 10;
    CHECK_THROWS_AS(coin_weak_value_monte_carlo(spec), InvalidArgument);
}

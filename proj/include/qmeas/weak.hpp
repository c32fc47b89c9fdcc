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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qmeas/meter.hpp"

// Weak values from pre- and post-selected ensembles: the operator formalism
// on spin-1/2, the exact post-selected meter state, and a classical coin
// model that shows generalized (conditioned) values need no quantum
// machinery at all.

namespace qmeas {

struct PrePostPair {
    PureState pre;
    PureState post;
};

/// <post|pre>; weak-value denominators must stay away from zero.
Complex selection_overlap(const PrePostPair& pair);

/// (S^order)_w = <post|S^order|pre> / <post|pre>. order = 0 gives 1.
/// Throws OrthogonalSelection when |<post|pre>| <= 1e-12.
Complex weak_value(const PrePostPair& pair, const Matrix& obs, int order = 1);

struct WeakValue {
    Complex value;                         // first order
    std::vector<Complex> order_n_values;   // index k holds (S^k)_w, k = 0..max
};

WeakValue weak_value_series(const PrePostPair& pair, const Matrix& obs, int max_order);

/// sqrt(|(S^2)_w - S_w^2|), the weak-regime validity scale.
double weak_uncertainty(const PrePostPair& pair, const Matrix& obs);

/// Closed forms for spin-1/2 with pre state (a_plus, a_minus) and post state
/// (b_plus, b_minus) in the z basis: all three Pauli weak values plus the
/// unconditioned expectations of both states.
struct SpinWeakTable {
    Complex x_weak, y_weak, z_weak;
    double x_pre, y_pre, z_pre;
    double x_post, y_post, z_post;
};

SpinWeakTable spin_weak_table(Complex a_plus, Complex a_minus, Complex b_plus, Complex b_minus);

/// Pre/post pair with pre = ((cos t + sin t)|+> + (cos t - sin t)|->)/sqrt(2)
/// and post = (|+> + |->)/sqrt(2); drives the anomalous sigma_z weak value
/// tan(t).
PrePostPair angled_pair(double theta_rad);

/// Exact meter state conditioned on post-selection (no weak-order expansion):
/// values = sum_k <post|s_k><s_k|pre> phi0(q - eps tau s_k), unnormalized.
struct PostSelectedMeter {
    MeterGrid grid;
    Vector values;                 // unnormalized conditional meter samples
    double success_probability;    // integral of |values|^2
    double centroid;               // of the exact conditional meter
    double predicted_center;       // first-order estimate eps*tau*Re{S_w}
};

PostSelectedMeter post_selected_meter(const MeterWaveFunction& meter0, const CouplingSpec& coupling,
                                      const PrePostPair& pair, const Matrix& obs);

/// |meter(p)|^2 on a uniform momentum grid via a direct discrete Fourier
/// transform of the samples. Diagnostic only (an imaginary weak value shows
/// up as a momentum displacement).
std::pair<std::vector<double>, std::vector<double>> momentum_density(const MeterGrid& grid,
                                                                     const Vector& values,
                                                                     Index n_points = 257,
                                                                     double p_max = 8.0);

/// Classical coin read by an unreliable observer: the report is wrong with
/// probability (1 - strength)/2 and the coin is flipped afterwards with
/// probability 1 - delta/(1 + Q*strength). Conditioning on a flipped coin
/// yields the generalized value 1/(1 - delta).
struct CoinModelSpec {
    double strength = 0.1;    // epsilon * tau, in (0, 1)
    double delta = 0.0;       // in [0, 1)
    std::uint64_t seed = 0;
    long trials = 1000000;
};

/// Generalized value from the model's conditional probabilities; equals
/// 1/(1 - delta). Throws InvalidProbability when any branch probability
/// leaves [0, 1].
double coin_weak_value_analytic(const CoinModelSpec& spec);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long accepted = 0;
};

/// Seeded simulation of the same process (mt19937_64; single stream, so a
/// fixed seed reproduces bit-identical results). Requires trials >= 1000.
MonteCarloEstimate coin_weak_value_monte_carlo(const CoinModelSpec& spec);

}  // namespace qmeas

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

#include "qmeas/weak.hpp"

#include <cmath>
#include <random>

namespace qmeas {

Complex selection_overlap(const PrePostPair& pair) {
    if (pair.pre.dim() != pair.post.dim()) {
        throw DimensionMismatch("pre and post states live in different spaces");
    }
    return pair.post.amplitudes().adjoint() * pair.pre.amplitudes();
}

Complex weak_value(const PrePostPair& pair, const Matrix& obs, int order) {
    if (order < 0) {
        throw InvalidArgument("weak_value needs order >= 0");
    }
    if (obs.rows() != obs.cols() || obs.rows() != pair.pre.dim()) {
        throw DimensionMismatch("weak_value: observable does not match the states");
    }
    Complex denom = selection_overlap(pair);
    if (std::abs(denom) <= 1e-12) {
        throw OrthogonalSelection("weak_value: pre and post selections are orthogonal");
    }
    if (order == 0) {
        return Complex(1.0);
    }
    Vector v = pair.pre.amplitudes();
    for (int k = 0; k < order; ++k) {
        v = obs * v;
    }
    Complex numer = pair.post.amplitudes().adjoint() * v;
    return numer / denom;
}

WeakValue weak_value_series(const PrePostPair& pair, const Matrix& obs, int max_order) {
    if (max_order < 1) {
        throw InvalidArgument("weak_value_series needs max_order >= 1");
    }
    WeakValue out;
    out.order_n_values.reserve(static_cast<size_t>(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) {
        out.order_n_values.push_back(weak_value(pair, obs, k));
    }
    out.value = out.order_n_values[1];
    return out;
}

double weak_uncertainty(const PrePostPair& pair, const Matrix& obs) {
    Complex first = weak_value(pair, obs, 1);
    Complex second = weak_value(pair, obs, 2);
    return std::sqrt(std::abs(second - first * first));
}

SpinWeakTable spin_weak_table(Complex a_plus, Complex a_minus, Complex b_plus, Complex b_minus) {
    double pre_norm = std::norm(a_plus) + std::norm(a_minus);
    double post_norm = std::norm(b_plus) + std::norm(b_minus);
    if (std::abs(pre_norm - 1.0) > 1e-10 || std::abs(post_norm - 1.0) > 1e-10) {
        throw InvalidArgument("spin_weak_table needs normalized spinors");
    }
    Complex denom = a_plus * std::conj(b_plus) + a_minus * std::conj(b_minus);
    if (std::abs(denom) <= 1e-12) {
        throw OrthogonalSelection("spin_weak_table: pre and post selections are orthogonal");
    }
    SpinWeakTable t;
    t.x_weak = (a_minus * std::conj(b_plus) + a_plus * std::conj(b_minus)) / denom;
    t.y_weak = Complex(0.0, 1.0) * (a_plus * std::conj(b_minus) - a_minus * std::conj(b_plus)) / denom;
    t.z_weak = (a_plus * std::conj(b_plus) - a_minus * std::conj(b_minus)) / denom;
    t.x_pre = 2.0 * (a_plus * std::conj(a_minus)).real();
    t.y_pre = -2.0 * (a_plus * std::conj(a_minus)).imag();
    t.z_pre = std::norm(a_plus) - std::norm(a_minus);
    t.x_post = 2.0 * (b_plus * std::conj(b_minus)).real();
    t.y_post = -2.0 * (b_plus * std::conj(b_minus)).imag();
    t.z_post = std::norm(b_plus) - std::norm(b_minus);
    return t;
}

PrePostPair angled_pair(double theta_rad) {
    double c = std::cos(theta_rad);
    double s = std::sin(theta_rad);
    Vector pre(2);
    pre << (c + s) / std::sqrt(2.0), (c - s) / std::sqrt(2.0);
    Vector post(2);
    post << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return {PureState(pre), PureState(post)};
}

PostSelectedMeter post_selected_meter(const MeterWaveFunction& meter0, const CouplingSpec& coupling,
                                      const PrePostPair& pair, const Matrix& obs) {
    if (coupling.mode != CouplingSpec::Mode::MomentumDisplacement) {
        throw InvalidArgument("post_selected_meter works with the momentum-displacement coupling");
    }
    if (obs.rows() != obs.cols() || obs.rows() != pair.pre.dim()) {
        throw DimensionMismatch("post_selected_meter: observable does not match the states");
    }
    if (std::abs(selection_overlap(pair)) <= 1e-12) {
        throw OrthogonalSelection("post_selected_meter: selections are orthogonal");
    }

    HermitianEig eig = hermitian_eig(obs);
    const MeterGrid& grid = meter0.grid();
    Vector values = Vector::Zero(grid.n_points());
    for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
        Vector basis_state = eig.eigenvectors.col(k);
        Complex weight = (pair.post.amplitudes().adjoint() * basis_state).value() *
                         (basis_state.adjoint() * pair.pre.amplitudes()).value();
        if (std::abs(weight) == 0.0) {
            continue;
        }
        double shift = coupling.epsilon * coupling.tau * eig.eigenvalues(k);
        values += weight * shifted_samples(grid, meter0.values(), shift);
    }

    double success = 0.0;
    for (Index i = 0; i < grid.n_points(); ++i) {
        success += grid.weight(i) * std::norm(values(i));
    }
    if (success <= 0.0) {
        throw OrthogonalSelection("post_selected_meter: conditional meter vanished");
    }

    PostSelectedMeter out{grid, std::move(values), success, 0.0, 0.0};
    out.centroid = centroid(grid, out.values);
    out.predicted_center =
        coupling.epsilon * coupling.tau * weak_value(pair, obs, 1).real();
    return out;
}

std::pair<std::vector<double>, std::vector<double>> momentum_density(const MeterGrid& grid,
                                                                     const Vector& values,
                                                                     Index n_points, double p_max) {
    if (values.size() != grid.n_points()) {
        throw DimensionMismatch("momentum_density: samples do not match the grid");
    }
    if (n_points < 2 || p_max <= 0.0) {
        throw InvalidArgument("momentum_density needs n_points >= 2 and p_max > 0");
    }
    std::vector<double> ps(static_cast<size_t>(n_points));
    std::vector<double> density(static_cast<size_t>(n_points));
    double dp = 2.0 * p_max / static_cast<double>(n_points - 1);
    const double norm_const = 1.0 / std::sqrt(2.0 * M_PI);
    for (Index k = 0; k < n_points; ++k) {
        double p = -p_max + dp * static_cast<double>(k);
        Complex acc = 0.0;
        for (Index i = 0; i < grid.n_points(); ++i) {
            acc += grid.weight(i) * values(i) * std::exp(Complex(0.0, -p * grid.q(i)));
        }
        ps[static_cast<size_t>(k)] = p;
        density[static_cast<size_t>(k)] = std::norm(acc * norm_const);
    }
    return {std::move(ps), std::move(density)};
}

namespace {

struct CoinProbabilities {
    double p_report_correct;  // Q agrees with the coin
    double p_flip_correct;    // flip probability after a correct report
    double p_flip_wrong;      // flip probability after a wrong report
};

CoinProbabilities coin_probabilities(const CoinModelSpec& spec) {
    if (spec.strength <= 0.0 || spec.strength >= 1.0) {
        throw InvalidProbability("coin model needs strength in (0, 1)");
    }
    if (spec.delta < 0.0 || spec.delta >= 1.0) {
        throw InvalidProbability("coin model needs delta in [0, 1)");
    }
    CoinProbabilities p{};
    p.p_report_correct = 0.5 * (1.0 + spec.strength);
    p.p_flip_correct = 1.0 - spec.delta / (1.0 + spec.strength);
    p.p_flip_wrong = 1.0 - spec.delta / (1.0 - spec.strength);
    if (p.p_flip_correct < 0.0 || p.p_flip_correct > 1.0 || p.p_flip_wrong < 0.0 ||
        p.p_flip_wrong > 1.0) {
        throw InvalidProbability("coin model: flip probability outside [0, 1]");
    }
    return p;
}

}  // namespace

double coin_weak_value_analytic(const CoinModelSpec& spec) {
    CoinProbabilities p = coin_probabilities(spec);
    // Joint probabilities of (report, coin flipped) starting from heads.
    double p_plus = p.p_report_correct * p.p_flip_correct;
    double p_minus = (1.0 - p.p_report_correct) * p.p_flip_wrong;
    double p_post = p_plus + p_minus;
    return (p_plus - p_minus) / (spec.strength * p_post);
}

MonteCarloEstimate coin_weak_value_monte_carlo(const CoinModelSpec& spec) {
    CoinProbabilities p = coin_probabilities(spec);
    if (spec.trials < 1000) {
        throw InvalidArgument("coin Monte Carlo needs at least 1000 trials");
    }

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    long accepted = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long trial = 0; trial < spec.trials; ++trial) {
        bool correct = uniform(rng) < p.p_report_correct;
        double report = correct ? 1.0 : -1.0;
        double flip_prob = correct ? p.p_flip_correct : p.p_flip_wrong;
        bool flipped = uniform(rng) < flip_prob;
        if (!flipped) {
            continue;  // post-selection on the flipped coin
        }
        double value = report / spec.strength;
        sum += value;
        sum_sq += value * value;
        ++accepted;
    }
    if (accepted == 0) {
        throw NoPostSelectedSamples("coin Monte Carlo: no trial passed post-selection");
    }

    MonteCarloEstimate out;
    out.accepted = accepted;
    out.estimate = sum / static_cast<double>(accepted);
    double n = static_cast<double>(accepted);
    double variance = std::max(0.0, (sum_sq - sum * sum / n) / std::max(1.0, n - 1.0));
    out.std_error = std::sqrt(variance / n);
    return out;
}

}  // namespace qmeas

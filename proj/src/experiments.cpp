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

#include "qmeas/experiments.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <deque>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace qmeas {

namespace {

constexpr double kPi = std::numbers::pi;

// Shortest round-trip decimal form; locale-independent by construction.
std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

std::string format_param(const ParamValue& value) {
    if (const double* d = std::get_if<double>(&value)) {
        return format_double(*d);
    }
    if (const long* i = std::get_if<long>(&value)) {
        return std::to_string(*i);
    }
    return std::get<std::string>(value);
}

struct Series {
    std::vector<std::string> names;
    // deque so references handed out by add() survive later add() calls
    std::deque<std::vector<double>> columns;

    std::vector<double>& add(const std::string& name) {
        names.push_back(name);
        columns.emplace_back();
        return columns.back();
    }
};

struct ExperimentResult {
    Series series;
    std::vector<Check> checks;
};

Check make_check(std::string name, double expected, double actual, double tolerance) {
    Check c;
    c.name = std::move(name);
    c.expected = expected;
    c.actual = actual;
    c.tolerance = tolerance;
    c.pass = std::isfinite(actual) && std::abs(expected - actual) <= tolerance;
    return c;
}

Check bool_check(std::string name, bool ok) {
    return make_check(std::move(name), 1.0, ok ? 1.0 : 0.0, 0.5);
}

using Params = std::map<std::string, ParamValue>;

double real_param(const Params& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) {
        throw InvalidParameter("missing parameter: " + name);
    }
    if (const double* d = std::get_if<double>(&it->second)) {
        return *d;
    }
    if (const long* i = std::get_if<long>(&it->second)) {
        return static_cast<double>(*i);
    }
    throw InvalidParameter("parameter is not numeric: " + name);
}

long int_param(const Params& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) {
        throw InvalidParameter("missing parameter: " + name);
    }
    if (const long* i = std::get_if<long>(&it->second)) {
        return *i;
    }
    if (const double* d = std::get_if<double>(&it->second)) {
        if (*d == std::floor(*d)) {
            return static_cast<long>(*d);
        }
    }
    throw InvalidParameter("parameter must be an integer: " + name);
}

// --- individual experiments -------------------------------------------------

ExperimentResult run_meter(const Params& params) {
    double epsilon = real_param(params, "epsilon");
    double tau = real_param(params, "tau");
    double sigma = real_param(params, "sigma");

    MeterGrid grid = MeterGrid::standard();
    MeterWaveFunction phi0 = MeterWaveFunction::truncated_gaussian(grid, sigma);
    Vector amplitudes(2);
    amplitudes << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    BranchState initial = pre_measurement(amplitudes, {1.0, -1.0}, phi0);
    BranchState half =
        evolve_impulsive(initial, CouplingSpec::momentum_displacement(epsilon, 0.5 * tau));
    BranchState full = evolve_impulsive(initial, CouplingSpec::momentum_displacement(epsilon, tau));

    ExperimentResult out;
    auto& q_col = out.series.add("q");
    auto& initial_col = out.series.add("initial_density");
    auto& up_half = out.series.add("up_half_density");
    auto& down_half = out.series.add("down_half_density");
    auto& up_full = out.series.add("up_full_density");
    auto& down_full = out.series.add("down_full_density");
    for (Index i = 0; i < grid.n_points(); ++i) {
        q_col.push_back(grid.q(i));
        initial_col.push_back(std::norm(phi0.values()(i)));
        up_half.push_back(std::norm(half.branches()[0].meter.values()(i)));
        down_half.push_back(std::norm(half.branches()[1].meter.values()(i)));
        up_full.push_back(std::norm(full.branches()[0].meter.values()(i)));
        down_full.push_back(std::norm(full.branches()[1].meter.values()(i)));
    }

    auto peak_q = [&grid](const std::vector<double>& density) {
        size_t best = 0;
        for (size_t i = 1; i < density.size(); ++i) {
            if (density[i] > density[best]) {
                best = i;
            }
        }
        return grid.q(static_cast<Index>(best));
    };
    out.checks.push_back(
        make_check("pointer_peak_up", epsilon * tau, peak_q(up_full), grid.step()));
    out.checks.push_back(
        make_check("pointer_peak_down", -epsilon * tau, peak_q(down_full), grid.step()));
    out.checks.push_back(make_check("branch_norm", 1.0,
                                    full.branches()[0].meter.norm_squared(), 1e-6));
    if (2.0 * epsilon * tau > 8.0 * sigma + 0.5) {
        double g = std::abs(branch_overlap(full, 0, 1));
        out.checks.push_back(make_check("separated_branch_overlap", 0.0, g, 0.05));
    }
    return out;
}

ExperimentResult run_overlap(const Params& params) {
    double epsilon = real_param(params, "epsilon");
    double delta_s = real_param(params, "delta-s");
    double sigma = real_param(params, "sigma");
    double tau_max = real_param(params, "tau-max");
    double tau_step = real_param(params, "tau-step");
    if (tau_max <= 0.0 || tau_step <= 0.0) {
        throw InvalidParameter("overlap needs tau-max > 0 and tau-step > 0");
    }

    MeterGrid grid = MeterGrid::standard();
    MeterWaveFunction phi0 = MeterWaveFunction::truncated_gaussian(grid, sigma);
    Vector amplitudes(2);
    amplitudes << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    BranchState initial = pre_measurement(amplitudes, {0.5 * delta_s, -0.5 * delta_s}, phi0);

    ExperimentResult out;
    auto& tau_col = out.series.add("tau");
    auto& re_col = out.series.add("overlap_re");
    auto& im_col = out.series.add("overlap_im");
    auto& abs_col = out.series.add("overlap_abs");

    double worst_tail = 0.0;
    bool have_tail = false;
    long n = static_cast<long>(std::floor(tau_max / tau_step + 0.5));
    for (long k = 0; k <= n; ++k) {
        double tau = static_cast<double>(k) * tau_step;
        BranchState state = evolve_impulsive(
            initial, CouplingSpec::phase_imprint(epsilon, tau, [](double m) { return m; }));
        Complex g = branch_overlap(state, 0, 1);
        tau_col.push_back(tau);
        re_col.push_back(g.real());
        im_col.push_back(g.imag());
        abs_col.push_back(std::abs(g));
        if (tau >= 4.5) {
            worst_tail = std::max(worst_tail, std::abs(g));
            have_tail = true;
        }
    }
    if (have_tail) {
        out.checks.push_back(make_check("orthogonal_tail_max", 0.0, worst_tail, 0.05));
    }
    return out;
}

ExperimentResult run_weak(const Params& params) {
    double theta_min = real_param(params, "theta-min");
    double theta_max = real_param(params, "theta-max");
    double theta_step = real_param(params, "theta-step");
    if (theta_step <= 0.0 || theta_max < theta_min) {
        throw InvalidParameter("weak needs theta-step > 0 and theta-max >= theta-min");
    }

    ExperimentResult out;
    auto& deg_col = out.series.add("theta_deg");
    auto& sx_re = out.series.add("sigma_x_w_re");
    auto& sx_im = out.series.add("sigma_x_w_im");
    auto& sy_re = out.series.add("sigma_y_w_re");
    auto& sy_im = out.series.add("sigma_y_w_im");
    auto& sz_re = out.series.add("sigma_z_w_re");
    auto& sz_im = out.series.add("sigma_z_w_im");

    long n = static_cast<long>(std::floor((theta_max - theta_min) / theta_step + 0.5));
    for (long k = 0; k <= n; ++k) {
        double deg = theta_min + static_cast<double>(k) * theta_step;
        PrePostPair pair = angled_pair(deg * kPi / 180.0);
        Complex wx = weak_value(pair, sigma_x());
        Complex wy = weak_value(pair, sigma_y());
        Complex wz = weak_value(pair, sigma_z());
        deg_col.push_back(deg);
        sx_re.push_back(wx.real());
        sx_im.push_back(wx.imag());
        sy_re.push_back(wy.real());
        sy_im.push_back(wy.imag());
        sz_re.push_back(wz.real());
        sz_im.push_back(wz.imag());
    }

    for (double deg : {18.0, 63.0, 81.0}) {
        double theta = deg * kPi / 180.0;
        PrePostPair pair = angled_pair(theta);
        std::string suffix = "_theta" + format_double(deg);
        out.checks.push_back(make_check(
            "sigma_x_w_dev" + suffix, 0.0, std::abs(weak_value(pair, sigma_x()) - Complex(1.0)),
            1e-12));
        out.checks.push_back(make_check(
            "sigma_y_w_dev" + suffix, 0.0,
            std::abs(weak_value(pair, sigma_y()) - Complex(0.0, std::tan(theta))), 1e-12));
        out.checks.push_back(make_check(
            "sigma_z_w_dev" + suffix, 0.0,
            std::abs(weak_value(pair, sigma_z()) - Complex(std::tan(theta))), 1e-12));
    }
    PrePostPair anomalous = angled_pair(89.427 * kPi / 180.0);
    out.checks.push_back(make_check("anomalous_sigma_z_w", 100.0,
                                    weak_value(anomalous, sigma_z()).real(), 0.5));
    return out;
}

ExperimentResult run_weak_meter(const Params& params) {
    double epsilon = real_param(params, "epsilon");
    double tau = real_param(params, "tau");
    double strong_tau = real_param(params, "strong-tau");
    double theta_deg = real_param(params, "theta-deg");
    double sigma = real_param(params, "sigma");

    MeterGrid grid = MeterGrid::standard();
    MeterWaveFunction phi0 = MeterWaveFunction::truncated_gaussian(grid, sigma);
    PrePostPair pair = angled_pair(theta_deg * kPi / 180.0);

    PostSelectedMeter weak = post_selected_meter(
        phi0, CouplingSpec::momentum_displacement(epsilon, tau), pair, sigma_z());
    PostSelectedMeter strong = post_selected_meter(
        phi0, CouplingSpec::momentum_displacement(epsilon, strong_tau), pair, sigma_z());

    ExperimentResult out;
    auto& q_col = out.series.add("q");
    auto& weak_col = out.series.add("weak_density");
    auto& strong_col = out.series.add("strong_density");
    for (Index i = 0; i < grid.n_points(); ++i) {
        q_col.push_back(grid.q(i));
        weak_col.push_back(std::norm(weak.values(i)) / weak.success_probability);
        strong_col.push_back(std::norm(strong.values(i)) / strong.success_probability);
    }

    double target = weak.predicted_center;
    out.checks.push_back(
        make_check("weak_centroid_vs_first_order", target, weak.centroid, 0.1 * std::abs(target)));
    out.checks.push_back(bool_check("weak_centroid_beyond_eigenvalue_range",
                                    weak.centroid > epsilon * tau));
    out.checks.push_back(bool_check("success_probability_in_unit_interval",
                                    weak.success_probability >= 0.0 &&
                                        weak.success_probability <= 1.0));
    return out;
}

ExperimentResult run_coin(const Params& params, std::optional<long> seed) {
    CoinModelSpec spec;
    spec.delta = real_param(params, "delta");
    spec.strength = real_param(params, "strength");
    spec.trials = int_param(params, "trials");
    spec.seed = static_cast<std::uint64_t>(seed.value_or(1));

    double analytic = coin_weak_value_analytic(spec);
    MonteCarloEstimate mc = coin_weak_value_monte_carlo(spec);

    ExperimentResult out;
    out.series.add("delta").push_back(spec.delta);
    out.series.add("strength").push_back(spec.strength);
    out.series.add("analytic").push_back(analytic);
    out.series.add("estimate").push_back(mc.estimate);
    out.series.add("std_error").push_back(mc.std_error);
    out.series.add("accepted").push_back(static_cast<double>(mc.accepted));

    out.checks.push_back(
        make_check("analytic_value", 1.0 / (1.0 - spec.delta), analytic, 1e-12));
    out.checks.push_back(
        make_check("monte_carlo_within_4se", analytic, mc.estimate, 4.0 * mc.std_error));
    return out;
}

ExperimentResult run_povm_detectors(const Params& params) {
    double step = real_param(params, "grid-step");
    if (step <= 0.0 || step > 0.1) {
        throw InvalidParameter("povm-detectors needs grid-step in (0, 0.1]");
    }

    Matrix direction_sum(2, 2);
    direction_sum << 1.5, 0.5, 0.5, 0.5;  // |+><+| + |+x><+x|

    ExperimentResult out;
    auto& p_col = out.series.add("p");
    auto& eig_col = out.series.add("a3_min_eigenvalue");

    double grid_max = 0.0;
    long n = static_cast<long>(std::floor(1.0 / step + 0.5));
    for (long k = 0; k <= n; ++k) {
        double p = static_cast<double>(k) * step;
        Matrix a3 = Matrix::Identity(2, 2) - p * direction_sum;
        Eigen::SelfAdjointEigenSolver<Matrix> solver(a3);
        double min_eig = solver.eigenvalues().minCoeff();
        p_col.push_back(p);
        eig_col.push_back(min_eig);
        if (min_eig >= -1e-9) {
            grid_max = std::max(grid_max, p);
        }
    }

    double bisected = max_equal_detection_probability();
    out.checks.push_back(make_check("max_p", 2.0 - std::sqrt(2.0), bisected, 1e-6));
    out.checks.push_back(make_check("grid_cross_check", bisected, grid_max, step));
    return out;
}

ExperimentResult run_zeno_projective(const Params& params) {
    double omega0 = real_param(params, "omega0");
    double t_total = real_param(params, "t-total");

    Matrix h = omega0 * sigma_x();
    PureState psi0 = ket_plus();

    ExperimentResult out;
    auto& n_col = out.series.add("n");
    auto& survival_col = out.series.add("survival");
    auto& closed_col = out.series.add("closed_form");

    const std::array<long, 13> counts{1,   2,   5,    10,   20,   50,  100,
                                      200, 500, 1000, 2000, 5000, 10000};
    double worst = 0.0;
    double survival_1000 = 0.0;
    for (long n : counts) {
        double survival = zeno_projective(h, psi0, t_total, n);
        double c = std::cos(omega0 * t_total / static_cast<double>(n));
        double closed = std::pow(c * c, static_cast<double>(n));
        n_col.push_back(static_cast<double>(n));
        survival_col.push_back(survival);
        closed_col.push_back(closed);
        worst = std::max(worst, std::abs(survival - closed));
        if (n == 1000) {
            survival_1000 = survival;
        }
    }
    out.checks.push_back(make_check("closed_form_agreement", 0.0, worst, 1e-10));

    bool canonical = std::abs(omega0 * t_total - 0.5 * kPi) < 1e-12;
    if (canonical) {
        out.checks.push_back(make_check("survival_n1000", 1.0, survival_1000, 0.003));
        bool monotone = true;
        double prev = -1.0;
        for (long n : {10L, 100L, 1000L, 10000L}) {
            double s = zeno_projective(h, psi0, t_total, n);
            monotone = monotone && s > prev;
            prev = s;
        }
        out.checks.push_back(bool_check("monotone_in_checks", monotone));
    }
    return out;
}

ExperimentResult run_zeno_continuous(const Params& params) {
    double omega0 = real_param(params, "omega0");
    double lambda = real_param(params, "lambda");
    double t1 = real_param(params, "t1");
    double dt = real_param(params, "dt");
    if (lambda < 0.0) {
        throw InvalidParameter("zeno-continuous needs lambda >= 0");
    }

    TimeGrid grid(0.0, t1, dt);
    Trajectory exact = zeno_continuous(omega0, lambda, grid,
                                       IntegrationMethod::SuperoperatorExponential);
    Trajectory rk4 = zeno_continuous(omega0, lambda, grid, IntegrationMethod::Rk4);

    ExperimentResult out;
    auto& t_col = out.series.add("t");
    auto& survival_col = out.series.add("survival");
    auto& rk4_col = out.series.add("survival_rk4");
    for (size_t i = 0; i < exact.times.size(); ++i) {
        t_col.push_back(exact.times[i]);
        survival_col.push_back(exact.observables.at("survival")[i]);
        rk4_col.push_back(rk4.observables.at("survival")[i]);
    }

    double method_gap = 0.0;
    double trace_drift = 0.0;
    double herm = 0.0;
    double psd_dip = 0.0;
    for (size_t i = 0; i < exact.states.size(); ++i) {
        const Matrix& a = exact.states[i].matrix();
        const Matrix& b = rk4.states[i].matrix();
        method_gap = std::max(method_gap, (a - b).cwiseAbs().maxCoeff());
        for (const Matrix& m : {a, b}) {
            trace_drift = std::max(trace_drift, std::abs(m.trace() - Complex(1.0)));
            herm = std::max(herm, hermiticity_residual(m));
            Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
            psd_dip = std::max(psd_dip, std::max(0.0, -solver.eigenvalues().minCoeff()));
        }
    }
    out.checks.push_back(make_check("integration_methods_agree", 0.0, method_gap, 1e-7));
    out.checks.push_back(make_check("trace_preserved", 0.0, trace_drift, 1e-6));
    out.checks.push_back(make_check("states_hermitian", 0.0, herm, 1e-9));
    out.checks.push_back(make_check("states_positive", 0.0, psd_dip, 1e-6));
    if (lambda == 0.0) {
        double worst = 0.0;
        for (size_t i = 0; i < exact.times.size(); ++i) {
            double c = std::cos(omega0 * exact.times[i]);
            worst = std::max(worst,
                             std::abs(exact.observables.at("survival")[i] - c * c));
        }
        out.checks.push_back(make_check("unmonitored_survival_is_rabi", 0.0, worst, 1e-6));
    }
    return out;
}

ExperimentResult run_decoherence(const Params& params) {
    double epsilon = real_param(params, "epsilon");
    double tau_max = real_param(params, "tau-max");
    double tau_step = real_param(params, "tau-step");
    double sigma = real_param(params, "sigma");
    if (tau_max <= 0.0 || tau_step <= 0.0) {
        throw InvalidParameter("decoherence needs tau-max > 0 and tau-step > 0");
    }

    MeterGrid grid = MeterGrid::standard();
    MeterWaveFunction phi0 = MeterWaveFunction::truncated_gaussian(grid, sigma);
    BranchState initial =
        pre_measurement(wigner_friend().amplitudes(), {1.0, -1.0}, phi0);

    ExperimentResult out;
    auto& etau_col = out.series.add("epsilon_tau");
    auto& coh_col = out.series.add("coherence_abs");
    auto& purity_col = out.series.add("purity");
    auto& up_col = out.series.add("population_up");
    auto& down_col = out.series.add("population_down");

    DensityMatrix last = reduced_system_density(initial);
    long n = static_cast<long>(std::floor(tau_max / tau_step + 0.5));
    for (long k = 0; k <= n; ++k) {
        double tau = static_cast<double>(k) * tau_step;
        BranchState state =
            evolve_impulsive(initial, CouplingSpec::momentum_displacement(epsilon, tau));
        last = reduced_system_density(state);
        etau_col.push_back(epsilon * tau);
        coh_col.push_back(std::abs(last.matrix()(0, 1)));
        purity_col.push_back(purity(last));
        up_col.push_back(last.matrix()(0, 0).real());
        down_col.push_back(last.matrix()(1, 1).real());
    }

    out.checks.push_back(
        make_check("population_up", 0.25, last.matrix()(0, 0).real(), 1e-9));
    out.checks.push_back(
        make_check("population_down", 0.75, last.matrix()(1, 1).real(), 1e-9));
    if (2.0 * epsilon * tau_max > 8.0 * sigma) {
        out.checks.push_back(
            make_check("coherence_erased", 0.0, std::abs(last.matrix()(0, 1)), 1e-9));
        out.checks.push_back(make_check("purity_mixed", 0.625, purity(last), 1e-9));
    }
    return out;
}

// --- registry and output ----------------------------------------------------

using Runner = std::function<ExperimentResult(const Params&, std::optional<long>)>;

struct Entry {
    ExperimentInfo info;
    Runner runner;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = [] {
        std::vector<Entry> r;
        r.push_back({{"meter",
                      "pointer densities before, half-way through, and after an impulsive coupling",
                      {{"epsilon", "coupling strength", 1.0},
                       {"tau", "coupling duration", 5.0},
                       {"sigma", "pointer width", 1.0}}},
                     [](const Params& p, std::optional<long>) { return run_meter(p); }});
        r.push_back({{"overlap",
                      "phase-imprint branch overlap against interaction time",
                      {{"epsilon", "coupling strength", 1.0},
                       {"delta-s", "eigenvalue separation", 1.0},
                       {"sigma", "pointer width", 1.0},
                       {"tau-max", "sweep end", 8.0},
                       {"tau-step", "sweep step", 0.1}}},
                     [](const Params& p, std::optional<long>) { return run_overlap(p); }});
        r.push_back({{"weak",
                      "spin-1/2 weak values against the pre-selection angle",
                      {{"theta-min", "sweep start (degrees)", 1.0},
                       {"theta-max", "sweep end (degrees)", 85.0},
                       {"theta-step", "sweep step (degrees)", 1.0}}},
                     [](const Params& p, std::optional<long>) { return run_weak(p); }});
        r.push_back({{"weak-meter",
                      "post-selected pointer density for weak and strong coupling",
                      {{"epsilon", "coupling strength", 1.0},
                       {"tau", "weak coupling duration", 0.02},
                       {"strong-tau", "strong coupling duration", 6.0},
                       {"theta-deg", "pre-selection angle (degrees)", 63.0},
                       {"sigma", "pointer width", 1.0}}},
                     [](const Params& p, std::optional<long>) { return run_weak_meter(p); }});
        r.push_back({{"coin",
                      "classical-coin conditioned value: analytic against Monte Carlo",
                      {{"delta", "flip-suppression parameter", 0.5},
                       {"strength", "observer reliability bias", 0.1},
                       {"trials", "Monte Carlo trials", 1000000L}}},
                     [](const Params& p, std::optional<long> seed) { return run_coin(p, seed); }});
        r.push_back({{"povm-detectors",
                      "two-detector null-effect eigenvalue against detection probability",
                      {{"grid-step", "probability sweep step", 1e-4}}},
                     [](const Params& p, std::optional<long>) { return run_povm_detectors(p); }});
        r.push_back({{"zeno-projective",
                      "survival after n evenly spaced projective checks",
                      {{"omega0", "Rabi frequency", 1.0},
                       {"t-total", "total evolution time", 0.5 * kPi}}},
                     [](const Params& p, std::optional<long>) { return run_zeno_projective(p); }});
        r.push_back({{"zeno-continuous",
                      "survival under continuous monitoring at rate lambda",
                      {{"omega0", "Rabi frequency", 1.0},
                       {"lambda", "measurement rate", 4.0},
                       {"t1", "end time", 2.0 * kPi},
                       {"dt", "integrator step", 1e-3}}},
                     [](const Params& p, std::optional<long>) { return run_zeno_continuous(p); }});
        r.push_back({{"decoherence",
                      "reduced-state coherence and purity while the pointer branches separate",
                      {{"epsilon", "coupling strength", 1.0},
                       {"tau-max", "sweep end", 5.0},
                       {"tau-step", "sweep step", 0.1},
                       {"sigma", "pointer width", 1.0}}},
                     [](const Params& p, std::optional<long>) { return run_decoherence(p); }});
        return r;
    }();
    return entries;
}

const Entry& find_entry(const std::string& name) {
    for (const auto& entry : registry()) {
        if (entry.info.name == name) {
            return entry;
        }
    }
    throw UnknownExperiment("unknown experiment: " + name);
}

Params resolve_params(const ExperimentInfo& info, const Params& given) {
    Params resolved;
    for (const auto& spec : info.params) {
        resolved.emplace(spec.name, spec.default_value);
    }
    for (const auto& [name, value] : given) {
        auto it = resolved.find(name);
        if (it == resolved.end()) {
            throw InvalidParameter("experiment " + info.name + " has no parameter " + name);
        }
        // Coerce across the numeric kinds so CLI doubles can feed integer
        // parameters and vice versa.
        if (std::holds_alternative<long>(it->second) && std::holds_alternative<double>(value)) {
            double d = std::get<double>(value);
            if (d != std::floor(d)) {
                throw InvalidParameter("parameter must be an integer: " + name);
            }
            it->second = static_cast<long>(d);
        } else if (std::holds_alternative<double>(it->second) &&
                   std::holds_alternative<long>(value)) {
            it->second = static_cast<double>(std::get<long>(value));
        } else if (it->second.index() != value.index()) {
            throw InvalidParameter("parameter has the wrong type: " + name);
        } else {
            it->second = value;
        }
    }
    return resolved;
}

void validate_series(const Series& series) {
    if (series.columns.empty()) {
        throw Error("experiment produced no data");
    }
    size_t rows = series.columns.front().size();
    for (const auto& column : series.columns) {
        if (column.size() != rows) {
            throw Error("experiment produced ragged series");
        }
    }
}

void write_csv(const std::string& path, const Series& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open output file: " + path);
    }
    for (size_t c = 0; c < series.names.size(); ++c) {
        if (c) {
            out << ',';
        }
        out << series.names[c];
    }
    out << '\n';
    size_t rows = series.columns.front().size();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < series.columns.size(); ++c) {
            if (c) {
                out << ',';
            }
            out << format_double(series.columns[c][r]);
        }
        out << '\n';
    }
    if (!out) {
        throw IoFailure("failed while writing: " + path);
    }
}

void write_json(const std::string& path, const ExperimentConfig& config, const Params& params,
                const Series& series) {
    nlohmann::json metadata;
    metadata["experiment"] = config.experiment;
    metadata["version"] = kVersion;
    for (const auto& [name, value] : params) {
        std::visit([&](const auto& v) { metadata["parameters"][name] = v; }, value);
    }
    if (config.seed) {
        metadata["seed"] = *config.seed;
    }

    nlohmann::json doc;
    doc["metadata"] = metadata;
    for (size_t c = 0; c < series.names.size(); ++c) {
        doc["series"][series.names[c]] = series.columns[c];
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open output file: " + path);
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw IoFailure("failed while writing: " + path);
    }
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> out;
        for (const auto& entry : registry()) {
            out.push_back(entry.info);
        }
        return out;
    }();
    return infos;
}

std::string list_experiments() {
    std::ostringstream out;
    for (const auto& info : experiment_catalog()) {
        out << info.name << ": " << info.description << "; params:";
        bool first = true;
        for (const auto& param : info.params) {
            out << (first ? " " : ", ") << param.name << "=" << format_param(param.default_value);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

bool RunReport::all_passed() const {
    for (const auto& check : checks) {
        if (!check.pass) {
            return false;
        }
    }
    return true;
}

RunReport run(const ExperimentConfig& config) {
    const Entry& entry = find_entry(config.experiment);
    Params params = resolve_params(entry.info, config.parameters);
    if (config.output_path.empty()) {
        throw InvalidParameter("missing output path");
    }

    auto start = std::chrono::steady_clock::now();
    ExperimentResult result = entry.runner(params, config.seed);
    auto stop = std::chrono::steady_clock::now();

    validate_series(result.series);
    if (config.format == OutputFormat::Csv) {
        write_csv(config.output_path, result.series);
    } else {
        write_json(config.output_path, config, params, result.series);
    }

    RunReport report;
    report.experiment = config.experiment;
    report.checks = std::move(result.checks);
    report.artifacts.push_back(config.output_path);
    report.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
    return report;
}

}  // namespace qmeas

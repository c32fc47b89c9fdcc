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

#include "qmeas/meter.hpp"

#include <cmath>

namespace qmeas {

MeterGrid::MeterGrid(double q_min, double q_max, Index n_points)
    : q_min_(q_min), q_max_(q_max), n_points_(n_points) {
    if (!(q_max > q_min)) {
        throw InvalidArgument("meter grid needs q_max > q_min");
    }
    if (n_points < 16) {
        throw InvalidArgument("meter grid needs at least 16 points");
    }
}

MeterGrid MeterGrid::standard() {
    return MeterGrid(-20.0, 20.0, 2048);
}

namespace {

double trapezoid_norm_squared(const MeterGrid& grid, const Vector& values) {
    double acc = 0.0;
    for (Index i = 0; i < grid.n_points(); ++i) {
        acc += grid.weight(i) * std::norm(values(i));
    }
    return acc;
}

}  // namespace

MeterWaveFunction MeterWaveFunction::from_samples(const MeterGrid& grid, Vector values,
                                                  double norm_tol) {
    if (values.size() != grid.n_points()) {
        throw DimensionMismatch("meter samples do not match the grid");
    }
    if (!entries_finite(values)) {
        throw InvalidArgument("meter samples must be finite");
    }
    double n2 = trapezoid_norm_squared(grid, values);
    if (std::abs(n2 - 1.0) > norm_tol) {
        throw InvalidArgument("meter wave function is not normalized");
    }
    values /= std::sqrt(n2);
    return MeterWaveFunction(grid, std::move(values));
}

MeterWaveFunction MeterWaveFunction::truncated_gaussian(const MeterGrid& grid, double sigma,
                                                        double support_radius, double center) {
    if (sigma <= 0.0) {
        throw InvalidArgument("truncated_gaussian needs sigma > 0");
    }
    double b = support_radius > 0.0 ? support_radius : 4.0 * sigma;
    Vector values = Vector::Zero(grid.n_points());
    for (Index i = 0; i < grid.n_points(); ++i) {
        double x = grid.q(i) - center;
        if (std::abs(x) <= b) {
            values(i) = std::exp(-x * x / (4.0 * sigma * sigma));
        }
    }
    double n2 = trapezoid_norm_squared(grid, values);
    if (n2 <= 0.0) {
        throw InvalidArgument("truncated_gaussian has no support on the grid");
    }
    values /= std::sqrt(n2);
    return MeterWaveFunction(grid, std::move(values));
}

double MeterWaveFunction::norm_squared() const {
    return trapezoid_norm_squared(grid_, values_);
}

Complex overlap(const MeterWaveFunction& a, const MeterWaveFunction& b) {
    if (!(a.grid() == b.grid())) {
        throw DimensionMismatch("overlap needs wave functions on the same grid");
    }
    Complex acc = 0.0;
    for (Index i = 0; i < a.grid().n_points(); ++i) {
        acc += a.grid().weight(i) * a.values()(i) * std::conj(b.values()(i));
    }
    return acc;
}

double centroid(const MeterGrid& grid, const Vector& values) {
    if (values.size() != grid.n_points()) {
        throw DimensionMismatch("centroid: samples do not match the grid");
    }
    double num = 0.0;
    double den = 0.0;
    for (Index i = 0; i < grid.n_points(); ++i) {
        double w = grid.weight(i) * std::norm(values(i));
        num += w * grid.q(i);
        den += w;
    }
    if (den <= 0.0) {
        throw InvalidArgument("centroid of an identically zero function");
    }
    return num / den;
}

Vector shifted_samples(const MeterGrid& grid, const Vector& values, double shift) {
    if (values.size() != grid.n_points()) {
        throw DimensionMismatch("shifted_samples: samples do not match the grid");
    }
    // Support via a relative threshold so that renormalized full-grid tails
    // (present only in hand-built inputs) do not block every shift.
    double vmax = values.cwiseAbs().maxCoeff();
    double threshold = 1e-12 * vmax;
    Index lo = -1;
    Index hi = -1;
    for (Index i = 0; i < values.size(); ++i) {
        if (std::abs(values(i)) > threshold) {
            if (lo < 0) {
                lo = i;
            }
            hi = i;
        }
    }
    if (lo < 0) {
        throw InvalidArgument("shifted_samples: input is identically zero");
    }
    double slack = 1e-9 * grid.step();
    if (grid.q(lo) + shift < grid.q_min() - slack || grid.q(hi) + shift > grid.q_max() + slack) {
        throw ShiftOutOfGrid("displacement pushes the meter support off the grid");
    }

    Vector out = Vector::Zero(grid.n_points());
    double dq = grid.step();
    for (Index i = 0; i < grid.n_points(); ++i) {
        double x = grid.q(i) - shift;
        if (x < grid.q_min() || x > grid.q_max()) {
            continue;
        }
        double t = (x - grid.q_min()) / dq;
        Index j = static_cast<Index>(std::floor(t));
        if (j >= grid.n_points() - 1) {
            out(i) = values(grid.n_points() - 1);
            continue;
        }
        double alpha = t - static_cast<double>(j);
        out(i) = (1.0 - alpha) * values(j) + alpha * values(j + 1);
    }
    // Interpolation sheds a little norm; put it back so downstream overlap
    // bounds (|g| <= 1) and reduced-state positivity stay exact.
    double n2 = trapezoid_norm_squared(grid, out);
    if (n2 <= 0.0) {
        throw ShiftOutOfGrid("displacement left no support on the grid");
    }
    out /= std::sqrt(n2);
    return out;
}

BranchState::BranchState(std::vector<Branch> branches, double norm_tol)
    : branches_(std::move(branches)) {
    if (branches_.empty()) {
        throw InvalidArgument("branch state needs at least one branch");
    }
    const MeterGrid& grid = branches_.front().meter.grid();
    double total = 0.0;
    for (const auto& branch : branches_) {
        if (!(branch.meter.grid() == grid)) {
            throw DimensionMismatch("branches live on different meter grids");
        }
        total += std::norm(branch.amplitude);
    }
    if (std::abs(total - 1.0) > norm_tol) {
        throw InvalidArgument("branch amplitudes are not normalized");
    }
}

CouplingSpec CouplingSpec::momentum_displacement(double epsilon, double tau) {
    if (tau < 0.0) {
        throw InvalidArgument("coupling needs tau >= 0");
    }
    CouplingSpec spec;
    spec.epsilon = epsilon;
    spec.tau = tau;
    spec.mode = Mode::MomentumDisplacement;
    return spec;
}

CouplingSpec CouplingSpec::phase_imprint(double epsilon, double tau,
                                         std::function<double(double)> f) {
    if (tau < 0.0) {
        throw InvalidArgument("coupling needs tau >= 0");
    }
    if (!f) {
        throw InvalidArgument("phase imprint needs a meter function f");
    }
    CouplingSpec spec;
    spec.epsilon = epsilon;
    spec.tau = tau;
    spec.mode = Mode::PhaseImprint;
    spec.f = std::move(f);
    return spec;
}

BranchState pre_measurement(const Vector& amplitudes, const std::vector<double>& eigenvalues,
                            const MeterWaveFunction& meter0) {
    if (amplitudes.size() != static_cast<Index>(eigenvalues.size())) {
        throw DimensionMismatch("pre_measurement: one eigenvalue per amplitude");
    }
    std::vector<Branch> branches;
    branches.reserve(eigenvalues.size());
    for (Index n = 0; n < amplitudes.size(); ++n) {
        branches.push_back({amplitudes(n), eigenvalues[static_cast<size_t>(n)], meter0});
    }
    return BranchState(std::move(branches));
}

BranchState evolve_impulsive(const BranchState& state, const CouplingSpec& coupling) {
    if (coupling.tau < 0.0) {
        throw InvalidArgument("coupling needs tau >= 0");
    }
    std::vector<Branch> branches;
    branches.reserve(state.branches().size());
    for (const auto& branch : state.branches()) {
        const MeterGrid& grid = branch.meter.grid();
        Vector values;
        if (coupling.mode == CouplingSpec::Mode::MomentumDisplacement) {
            double shift = coupling.epsilon * coupling.tau * branch.eigenvalue;
            values = shifted_samples(grid, branch.meter.values(), shift);
        } else {
            if (!coupling.f) {
                throw InvalidArgument("phase imprint needs a meter function f");
            }
            values = branch.meter.values();
            for (Index i = 0; i < values.size(); ++i) {
                double phase = -coupling.epsilon * coupling.tau * branch.eigenvalue *
                               coupling.f(grid.q(i));
                values(i) *= std::exp(Complex(0.0, phase));
            }
        }
        branches.push_back(
            {branch.amplitude, branch.eigenvalue, MeterWaveFunction::from_samples(grid, values)});
    }
    return BranchState(std::move(branches));
}

Complex branch_overlap(const BranchState& state, Index n, Index n_prime) {
    if (n < 0 || n >= state.size() || n_prime < 0 || n_prime >= state.size()) {
        throw IndexOutOfRange("branch_overlap: branch index out of range");
    }
    if (n == n_prime) {
        return 1.0;  // meters are normalized at construction
    }
    return overlap(state.branches()[static_cast<size_t>(n)].meter,
                   state.branches()[static_cast<size_t>(n_prime)].meter);
}

DensityMatrix reduced_system_density(const BranchState& state) {
    Index d = state.size();
    Matrix rho = Matrix::Zero(d, d);
    for (Index n = 0; n < d; ++n) {
        rho(n, n) = std::norm(state.branches()[static_cast<size_t>(n)].amplitude);
        for (Index m = n + 1; m < d; ++m) {
            // Tracing over the meter leaves c_n conj(c_m) <m_m|m_n>, and the
            // grid inner product <m_m|m_n> is exactly branch_overlap(n, m).
            Complex value = state.branches()[static_cast<size_t>(n)].amplitude *
                            std::conj(state.branches()[static_cast<size_t>(m)].amplitude) *
                            branch_overlap(state, n, m);
            rho(n, m) = value;
            rho(m, n) = std::conj(value);
        }
    }
    return DensityMatrix(std::move(rho));
}

}  // namespace qmeas

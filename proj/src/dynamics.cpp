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

#include "qmeas/dynamics.hpp"

#include <cmath>

namespace qmeas {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

void require_square_match(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw DimensionMismatch(what);
    }
}

Vector vec_row_major(const Matrix& m) {
    Index d = m.rows();
    Vector out(d * d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            out(i * d + j) = m(i, j);
        }
    }
    return out;
}

Matrix unvec_row_major(const Vector& v, Index d) {
    Matrix out(d, d);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            out(i, j) = v(i * d + j);
        }
    }
    return out;
}

}  // namespace

Matrix liouville_rhs(const Matrix& h, const Matrix& rho) {
    require_square_match(h, rho, "liouville_rhs: operator sizes disagree");
    if (hermiticity_residual(h) > 1e-10) {
        throw NotHermitian("liouville_rhs needs a Hermitian Hamiltonian");
    }
    return kMinusI * commutator(h, rho);
}

DensityMatrix unitary_evolve(const Matrix& h, const DensityMatrix& rho, double t) {
    require_square_match(h, rho.matrix(), "unitary_evolve: operator sizes disagree");
    if (hermiticity_residual(h) > 1e-10) {
        throw NotHermitian("unitary_evolve needs a Hermitian Hamiltonian");
    }
    Matrix u = expm(kMinusI * t * h);
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

LindbladSpec::LindbladSpec(Matrix hamiltonian_in, std::vector<Matrix> jump_ops_in, double rate_in)
    : hamiltonian(std::move(hamiltonian_in)), jump_ops(std::move(jump_ops_in)), rate(rate_in) {
    if (hamiltonian.rows() != hamiltonian.cols()) {
        throw NonSquare("Lindblad Hamiltonian must be square");
    }
    if (hermiticity_residual(hamiltonian) > 1e-10) {
        throw NotHermitian("Lindblad Hamiltonian must be Hermitian");
    }
    if (rate < 0.0) {
        throw InvalidArgument("Lindblad rate must be non-negative");
    }
    for (const auto& op : jump_ops) {
        if (op.rows() != hamiltonian.rows() || op.cols() != hamiltonian.cols()) {
            throw DimensionMismatch("Lindblad jump operator size disagrees with the Hamiltonian");
        }
    }
}

Matrix lindblad_rhs(const LindbladSpec& spec, const Matrix& rho) {
    require_square_match(spec.hamiltonian, rho, "lindblad_rhs: state size disagrees");
    Matrix out = kMinusI * commutator(spec.hamiltonian, rho);
    for (const auto& op : spec.jump_ops) {
        out += spec.rate * (op * rho * op.adjoint() - 0.5 * anticommutator(op.adjoint() * op, rho));
    }
    return out;
}

Matrix measurement_rhs(const Matrix& h, const KrausSet& kraus, double lambda, const Matrix& rho) {
    require_square_match(h, rho, "measurement_rhs: state size disagrees");
    if (kraus.dim() != h.rows()) {
        throw DimensionMismatch("measurement_rhs: Kraus set size disagrees");
    }
    if (lambda < 0.0) {
        throw InvalidArgument("measurement_rhs needs lambda >= 0");
    }
    if (kraus.completeness_residual() > 1e-9) {
        throw IncompleteKrausSet("measurement_rhs needs a complete Kraus set");
    }
    Matrix out = kMinusI * commutator(h, rho);
    Matrix channel = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& op : kraus.operators()) {
        channel += op * rho * op.adjoint();
    }
    out += lambda * (channel - rho);
    return out;
}

TimeGrid::TimeGrid(double t0_in, double t1_in, double dt_in) : t0(t0_in), t1(t1_in), dt(dt_in) {
    if (!(t1 > t0)) {
        throw InvalidArgument("time grid needs t1 > t0");
    }
    if (!(dt > 0.0)) {
        throw InvalidArgument("time grid needs dt > 0");
    }
    if ((t1 - t0) / dt > 1e7) {
        throw InvalidArgument("time grid would exceed 1e7 steps");
    }
}

long TimeGrid::n_steps() const {
    // Last step may be shorter so the grid always ends exactly at t1.
    return static_cast<long>(std::ceil((t1 - t0) / dt - 1e-9));
}

Matrix superoperator_matrix(const MatrixRhs& rhs, Index dim) {
    if (dim < 1) {
        throw DimensionMismatch("superoperator_matrix needs a positive dimension");
    }
    Matrix gen(dim * dim, dim * dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            Matrix unit = Matrix::Zero(dim, dim);
            unit(i, j) = 1.0;
            gen.col(i * dim + j) = vec_row_major(rhs(unit));
        }
    }
    return gen;
}

Trajectory integrate(const MatrixRhs& rhs, const DensityMatrix& rho0, const TimeGrid& grid,
                     IntegrationMethod method) {
    Index d = rho0.dim();
    long steps = grid.n_steps();

    DensityMatrix::Tolerances relaxed{1e-9, 1e-6, 1e-6};

    Trajectory traj;
    traj.times.reserve(static_cast<size_t>(steps) + 1);
    traj.states.reserve(static_cast<size_t>(steps) + 1);
    traj.times.push_back(grid.t0);
    traj.states.push_back(rho0);

    Matrix propagator;           // SuperoperatorExponential only
    double propagator_dt = 0.0;  // step the cached propagator was built for
    Matrix gen;
    if (method == IntegrationMethod::SuperoperatorExponential) {
        gen = superoperator_matrix(rhs, d);
    }

    Matrix rho = rho0.matrix();
    double t = grid.t0;
    for (long step = 0; step < steps; ++step) {
        double h = std::min(grid.dt, grid.t1 - t);
        if (method == IntegrationMethod::Rk4) {
            Matrix k1 = rhs(rho);
            Matrix k2 = rhs(rho + 0.5 * h * k1);
            Matrix k3 = rhs(rho + 0.5 * h * k2);
            Matrix k4 = rhs(rho + h * k3);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } else {
            if (propagator.size() == 0 || propagator_dt != h) {
                propagator = expm(gen * h);
                propagator_dt = h;
            }
            rho = unvec_row_major(propagator * vec_row_major(rho), d);
        }
        t = (step + 1 == steps) ? grid.t1 : grid.t0 + grid.dt * static_cast<double>(step + 1);
        if (std::abs(rho.trace() - Complex(1.0)) > 1e-6) {
            throw StepTooLarge("integration lost trace normalization; reduce dt");
        }
        traj.times.push_back(t);
        traj.states.emplace_back(rho, relaxed);
    }
    return traj;
}

double zeno_projective(const Matrix& h, const PureState& psi0, double total_time, long n) {
    if (n < 1) {
        throw InvalidArgument("zeno_projective needs n >= 1");
    }
    if (total_time < 0.0) {
        throw InvalidArgument("zeno_projective needs total_time >= 0");
    }
    if (h.rows() != h.cols() || h.rows() != psi0.dim()) {
        throw DimensionMismatch("zeno_projective: Hamiltonian does not match the state");
    }
    Matrix projector = psi0.amplitudes() * psi0.amplitudes().adjoint();
    Matrix u = expm(kMinusI * (total_time / static_cast<double>(n)) * h);
    Matrix evolved = u * projector * u.adjoint();
    double p_single = (projector * evolved).trace().real();
    p_single = std::clamp(p_single, 0.0, 1.0);
    return std::pow(p_single, static_cast<double>(n));
}

Trajectory zeno_continuous(double omega0, double lambda, const TimeGrid& grid,
                           IntegrationMethod method) {
    Matrix h = omega0 * sigma_x();
    Matrix k_up = Matrix::Zero(2, 2);
    k_up(0, 0) = 1.0;
    Matrix k_down = Matrix::Zero(2, 2);
    k_down(1, 1) = 1.0;
    KrausSet kraus({k_up, k_down});

    MatrixRhs rhs = [h, kraus, lambda](const Matrix& rho) {
        return measurement_rhs(h, kraus, lambda, rho);
    };
    Trajectory traj = integrate(rhs, density_from_pure(ket_plus()), grid, method);

    std::vector<double> survival;
    survival.reserve(traj.states.size());
    for (const auto& state : traj.states) {
        survival.push_back(state.matrix()(0, 0).real());
    }
    traj.observables.emplace("survival", std::move(survival));
    return traj;
}

}  // namespace qmeas

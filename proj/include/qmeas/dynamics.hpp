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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qmeas/measurement.hpp"

// Closed and open evolution of density matrices: the von Neumann equation,
// Lindblad dissipators, a measurement master equation driven by a Kraus set
// at rate lambda, fixed-step integrators, and the Zeno experiments built on
// top of them. hbar = 1 throughout.

namespace qmeas {

/// -i [h, rho].
Matrix liouville_rhs(const Matrix& h, const Matrix& rho);

/// rho -> U rho U^dag with U = expm(-i h t).
DensityMatrix unitary_evolve(const Matrix& h, const DensityMatrix& rho, double t);

struct LindbladSpec {
    LindbladSpec(Matrix hamiltonian, std::vector<Matrix> jump_ops, double rate);

    Matrix hamiltonian;
    std::vector<Matrix> jump_ops;
    double rate = 0.0;
};

/// -i[h, rho] + rate * sum_j (L rho L^dag - {L^dag L, rho}/2).
Matrix lindblad_rhs(const LindbladSpec& spec, const Matrix& rho);

/// -i[h, rho] + lambda (sum_k K rho K^dag - rho). The Kraus completeness is
/// re-checked here (IncompleteKrausSet) because the rate term relies on it.
Matrix measurement_rhs(const Matrix& h, const KrausSet& kraus, double lambda, const Matrix& rho);

struct TimeGrid {
    TimeGrid(double t0, double t1, double dt);

    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;

    long n_steps() const;
};

enum class IntegrationMethod { Rk4, SuperoperatorExponential };

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::map<std::string, std::vector<double>> observables;
};

using MatrixRhs = std::function<Matrix(const Matrix&)>;

/// Matrix of a linear map rho -> rhs(rho) in the row-major basis
/// vec(rho)[i*d + j] = rho_ij (so a qubit state stacks as
/// (rho_++, rho_+-, rho_-+, rho_--)).
Matrix superoperator_matrix(const MatrixRhs& rhs, Index dim);

/// Fixed-step propagation of d(rho)/dt = rhs(rho). Rk4 is classical
/// Runge-Kutta; SuperoperatorExponential applies expm(G dt) per step (exact
/// for a time-independent generator). Throws StepTooLarge when the trace
/// drifts by more than 1e-6.
Trajectory integrate(const MatrixRhs& rhs, const DensityMatrix& rho0, const TimeGrid& grid,
                     IntegrationMethod method);

/// Survival probability of n evenly spaced projective checks onto the initial
/// state during evolution under h for total_time: [Tr{P U rho U^dag}]^n with
/// U = expm(-i h total_time/n).
double zeno_projective(const Matrix& h, const PureState& psi0, double total_time, long n);

/// Continuously monitored qubit: h = omega0 sigma_x, Kraus projectors onto
/// the z basis at rate lambda, rho0 = |+><+|. The trajectory carries the
/// observable series "survival" = <+|rho|+>.
Trajectory zeno_continuous(double omega0, double lambda, const TimeGrid& grid,
                           IntegrationMethod method = IntegrationMethod::SuperoperatorExponential);

}  // namespace qmeas

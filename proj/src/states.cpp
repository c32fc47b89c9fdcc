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

#include "qmeas/states.hpp"

#include <cmath>

namespace qmeas {

PureState::PureState(Vector amplitudes, double norm_tol) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw DimensionMismatch("pure state needs at least one amplitude");
    }
    if (!entries_finite(amplitudes_)) {
        throw InvalidArgument("pure state amplitudes must be finite");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > norm_tol) {
        throw InvalidArgument("pure state is not normalized");
    }
}

DensityMatrix::DensityMatrix(Matrix matrix) : DensityMatrix(std::move(matrix), Tolerances{}) {}

DensityMatrix::DensityMatrix(Matrix matrix, Tolerances tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw NonSquare("density matrix must be square and non-empty");
    }
    if (!entries_finite(matrix_)) {
        throw InvalidArgument("density matrix entries must be finite");
    }
    if (hermiticity_residual(matrix_) > tol.hermitian) {
        throw NotHermitian("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > tol.trace) {
        throw InvalidArgument("density matrix trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (matrix_ + matrix_.adjoint()));
    if (solver.eigenvalues().minCoeff() < -tol.psd) {
        throw NotPositive("density matrix has a negative eigenvalue");
    }
}

DensityMatrix density_from_pure(const PureState& psi) {
    const Vector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix density_from_mixture(const MixtureSpec& mixture) {
    if (mixture.components.empty()) {
        throw ProbabilityNotNormalized("mixture has no components");
    }
    double total = 0.0;
    Index dim = mixture.components.front().state.dim();
    for (const auto& component : mixture.components) {
        if (component.probability < 0.0 || component.probability > 1.0) {
            throw ProbabilityNotNormalized("mixture probability outside [0, 1]");
        }
        if (component.state.dim() != dim) {
            throw DimensionMismatch("mixture components live in different spaces");
        }
        total += component.probability;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw ProbabilityNotNormalized("mixture probabilities do not sum to one");
    }
    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto& component : mixture.components) {
        const Vector& v = component.state.amplitudes();
        rho += component.probability * (v * v.adjoint());
    }
    return DensityMatrix(std::move(rho));
}

double expectation(const DensityMatrix& rho, const Matrix& observable) {
    if (observable.rows() != observable.cols() || observable.rows() != rho.dim()) {
        throw DimensionMismatch("expectation: observable does not match the state dimension");
    }
    if (hermiticity_residual(observable) > 1e-10) {
        throw NotHermitian("expectation needs a Hermitian observable");
    }
    return (rho.matrix() * observable).trace().real();
}

double purity(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

PureState ket_plus() {
    Vector v(2);
    v << 1, 0;
    return PureState(v);
}

PureState ket_minus() {
    Vector v(2);
    v << 0, 1;
    return PureState(v);
}

PureState ket_plus_x() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return PureState(v);
}

PureState ket_minus_x() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return PureState(v);
}

PureState singlet() {
    Vector v = Vector::Zero(4);
    v(1) = 1.0 / std::sqrt(2.0);
    v(2) = -1.0 / std::sqrt(2.0);
    return PureState(v);
}

PureState wigner_friend() {
    Vector v(2);
    v << 0.5, std::sqrt(3.0) / 2.0;
    return PureState(v);
}

}  // namespace qmeas

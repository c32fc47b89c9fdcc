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

#include "qmeas/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qmeas {

double hermiticity_residual(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw NonSquare("hermiticity residual needs a square matrix");
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const Matrix& u) {
    if (u.rows() != u.cols()) {
        throw NonSquare("unitarity residual needs a square matrix");
    }
    Matrix delta = u * u.adjoint() - Matrix::Identity(u.rows(), u.cols());
    return delta.cwiseAbs().maxCoeff();
}

bool entries_finite(const Matrix& a) {
    return a.allFinite();
}

bool entries_finite(const Vector& a) {
    return a.allFinite();
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw DimensionMismatch("commutator arguments must be square and equal-sized");
    }
    return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw DimensionMismatch("anticommutator arguments must be square and equal-sized");
    }
    return a * b + b * a;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

Vector tensor_product(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

HermitianEig hermitian_eig(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) {
        throw NonSquare("hermitian_eig needs a square matrix");
    }
    if (hermiticity_residual(a) > tol) {
        throw NotHermitian("hermitian_eig: residual above tolerance");
    }
    // Symmetrize first so the solver sees an exactly Hermitian matrix; the
    // perturbation is bounded by the residual we just checked.
    Matrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eig: eigensolver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw NonSquare("expm needs a square matrix");
    }
    if (hermiticity_residual(a) <= kHermitianTol) {
        HermitianEig eig = hermitian_eig(a);
        Vector phases(eig.eigenvalues.size());
        for (Index k = 0; k < phases.size(); ++k) {
            phases(k) = std::exp(eig.eigenvalues(k));
        }
        return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    }
    // a = -i b with b Hermitian: unitary exponential through the spectrum of b.
    Matrix b = Complex(0.0, 1.0) * a;
    if (hermiticity_residual(b) <= kHermitianTol) {
        HermitianEig eig = hermitian_eig(b);
        Vector phases(eig.eigenvalues.size());
        for (Index k = 0; k < phases.size(); ++k) {
            phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k)));
        }
        return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    }
    return a.exp();
}

Matrix partial_trace(const Matrix& rho, Index dim_first, Index dim_second, Subsystem keep) {
    if (dim_first < 1 || dim_second < 1) {
        throw DimensionMismatch("partial_trace: factor dimensions must be positive");
    }
    if (rho.rows() != rho.cols() || rho.rows() != dim_first * dim_second) {
        throw DimensionMismatch("partial_trace: operator size does not match the factor dimensions");
    }
    if (keep == Subsystem::First) {
        Matrix out = Matrix::Zero(dim_first, dim_first);
        for (Index i = 0; i < dim_first; ++i) {
            for (Index j = 0; j < dim_first; ++j) {
                Complex acc = 0.0;
                for (Index k = 0; k < dim_second; ++k) {
                    acc += rho(i * dim_second + k, j * dim_second + k);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }
    Matrix out = Matrix::Zero(dim_second, dim_second);
    for (Index i = 0; i < dim_second; ++i) {
        for (Index j = 0; j < dim_second; ++j) {
            Complex acc = 0.0;
            for (Index k = 0; k < dim_first; ++k) {
                acc += rho(k * dim_second + i, k * dim_second + j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace qmeas

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

#include <complex>

#include <Eigen/Dense>

#include "qmeas/errors.hpp"

// Dense complex linear algebra shared by every module. Everything works in
// natural units (hbar = 1) and targets small Hilbert spaces (dim <= 64), so
// plain dense storage is used throughout.

namespace qmeas {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tolerance below which a Hermiticity residual is treated as zero.
inline constexpr double kHermitianTol = 1e-10;

inline Matrix dagger(const Matrix& a) { return a.adjoint(); }

/// max_ij |a - a^dagger|_ij; zero for exactly Hermitian input.
double hermiticity_residual(const Matrix& a);

/// max_ij |u u^dagger - 1|_ij.
double unitarity_residual(const Matrix& u);

bool entries_finite(const Matrix& a);
bool entries_finite(const Vector& a);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// Kronecker product; the joint index is i_first * dim_second + i_second.
Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product(const Vector& a, const Vector& b);

struct HermitianEig {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // column k pairs with eigenvalues[k]
};

/// Spectral decomposition of a Hermitian matrix. Throws NotHermitian when the
/// residual exceeds tol. No phase convention is imposed on eigenvectors, and
/// no ordering is imposed inside degenerate subspaces.
HermitianEig hermitian_eig(const Matrix& a, double tol = kHermitianTol);

/// Matrix exponential. (Skew-)Hermitian inputs go through the spectral
/// decomposition; everything else falls back to scaling-and-squaring Pade.
Matrix expm(const Matrix& a);

enum class Subsystem { First, Second };

/// Trace out one factor of a bipartite operator on dim_first * dim_second.
Matrix partial_trace(const Matrix& rho, Index dim_first, Index dim_second, Subsystem keep);

}  // namespace qmeas

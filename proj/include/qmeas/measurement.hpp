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

#include <optional>
#include <string>
#include <vector>

#include "qmeas/states.hpp"

// Generalized measurements: projectors, POVM effects, Kraus channels, the
// quantum-non-demolition checks, and the decomposition of an observable into
// rank-one building blocks.

namespace qmeas {

/// Hermitian idempotent (P^2 = P within 1e-9). Any rank is allowed.
class Projector {
  public:
    explicit Projector(Matrix matrix, double idempotent_tol = 1e-9);

    /// Rank-one projector |v><v| onto a normalized vector.
    static Projector onto(const Vector& state);

    const Matrix& matrix() const { return matrix_; }
    Index dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
};

/// POVM element: Hermitian, eigenvalues >= -1e-9.
class PovmEffect {
  public:
    explicit PovmEffect(Matrix matrix, double psd_tol = 1e-9);

    const Matrix& matrix() const { return matrix_; }
    Index dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
};

/// Complete effect set: sum of effects equals the identity within tolerance.
class Povm {
  public:
    Povm(std::vector<PovmEffect> effects, std::vector<std::string> labels,
         double completeness_tol = 1e-9);

    const std::vector<PovmEffect>& effects() const { return effects_; }
    const std::vector<std::string>& labels() const { return labels_; }
    Index dim() const { return effects_.front().dim(); }

  private:
    std::vector<PovmEffect> effects_;
    std::vector<std::string> labels_;
};

/// Kraus operators with sum_k K^dag K = 1 within tolerance.
class KrausSet {
  public:
    explicit KrausSet(std::vector<Matrix> operators, double completeness_tol = 1e-9);

    const std::vector<Matrix>& operators() const { return operators_; }
    Index dim() const { return operators_.front().rows(); }

    /// max-entry residual of sum K^dag K - 1.
    double completeness_residual() const;

  private:
    std::vector<Matrix> operators_;
};

/// Tr{A rho}, clamped to [0, 1].
double born_probability(const DensityMatrix& rho, const PovmEffect& effect);

/// Non-selective update rho -> sum_n P_n rho P_n. The projectors must be
/// mutually orthogonal and complete (checked within tol).
DensityMatrix projective_update(const DensityMatrix& rho, const std::vector<Projector>& projectors,
                                double tol = 1e-9);

/// Positive square root K = sqrt(A), the canonical measurement operator of an
/// effect (all phases zero). Throws NotPositive below -1e-9.
Matrix split_positive(const PovmEffect& effect);

/// Two detectors on a qubit: effects {p_z |+><+|, p_x |+x><+x|, rest}.
/// Throws NotPositive when the remainder effect fails positivity.
Povm two_detector_povm(double p_z, double p_x);

/// Largest p with two_detector_povm(p, p) still valid, found by bisection on
/// the positivity boundary. The analytic value is 2 - sqrt(2).
double max_equal_detection_probability();

struct QndReport {
    // Frobenius residuals of the three commutator conditions:
    //  ready_state: [S x 1, D] restricted to system states paired with the
    //               ready meter (necessary and sufficient),
    //  commutator:  [S x 1, D] in full (sufficient),
    //  hamiltonian: [S x 1, H] when a generator is supplied (sufficient).
    double ready_state_residual = 0.0;
    double commutator_residual = 0.0;
    std::optional<double> hamiltonian_residual;
    bool ready_state_ok = false;
    bool commutator_ok = false;
    std::optional<bool> hamiltonian_ok;
};

/// Check whether measuring `obs` through the joint evolution `evolution`
/// (meter prepared in `meter_ready`) disturbs the measured observable.
QndReport qnd_check(const Matrix& obs, const Matrix& evolution, const Vector& meter_ready,
                    const std::optional<Matrix>& joint_hamiltonian = std::nullopt,
                    double tol = 1e-9);

/// Kraus operators of the reduced dynamics of a system coupled to an
/// environment (initial state rho_env) through the joint unitary u. Produces
/// dim_env^2 operators indexed (k, m); operators with Frobenius norm below
/// 1e-12 are dropped.
KrausSet kraus_from_unitary(const Matrix& u, const DensityMatrix& rho_env, Index dim_system,
                            Index dim_env);

/// rho -> sum_k K rho K^dag.
DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho);

/// Decomposition of a Hermitian observable into projectors A_m = |m><m|,
/// symmetric pair operators B_mn = |m><n| + |n><m| and antisymmetric pair
/// operators C_mn = i|m><n| - i|n><m| (m > n), each of which admits a
/// von Neumann meter coupling. Terms with exactly vanishing coefficients are
/// omitted.
struct ObservableDecomposition {
    struct DiagonalTerm {
        Index m = 0;
        double coeff = 0.0;
        Matrix op;
    };
    struct PairTerm {
        Index m = 0;  // m > n
        Index n = 0;
        double coeff = 0.0;
        Matrix op;
    };

    Index dim = 0;
    std::vector<DiagonalTerm> diagonal;
    std::vector<PairTerm> symmetric;
    std::vector<PairTerm> antisymmetric;

    Matrix reconstruct() const;
    /// sum of coeff * Tr{rho op} over all terms.
    double expectation_via_terms(const DensityMatrix& rho) const;
};

ObservableDecomposition observable_decomposition(const Matrix& q, double hermitian_tol = 1e-10);

/// Cyclic shift on a d-dimensional register: |p> -> |p+1 mod d>.
Matrix cyclic_shift(Index dim);

/// Hermitian generator P with expm(-i P) equal to cyclic_shift(dim).
Matrix shift_generator(Index dim);

/// Discrete pointer coupling for `obs` with a meter of equal dimension:
/// the n-th eigenstate of obs (ascending order) advances the pointer by n
/// steps, D = sum_n |s_n><s_n| x shift^n. Requires meter dim == system dim.
Matrix von_neumann_pointer_unitary(const Matrix& obs, Index dim_meter);

/// Impulsive coupling unitary expm(-i epsilon tau obs x meter_op).
Matrix impulsive_coupling(const Matrix& obs, const Matrix& meter_op, double epsilon, double tau);

}  // namespace qmeas

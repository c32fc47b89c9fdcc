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

#include <vector>

#include "qmeas/linalg.hpp"

// State containers with validation at construction. Operations downstream
// assume the invariants enforced here and do not re-check them.

namespace qmeas {

/// Normalized state vector (norm enforced within 1e-10 at construction).
class PureState {
  public:
    explicit PureState(Vector amplitudes, double norm_tol = 1e-10);

    const Vector& amplitudes() const { return amplitudes_; }
    Index dim() const { return amplitudes_.size(); }

  private:
    Vector amplitudes_;
};

/// Density operator: Hermitian (1e-10), unit trace (1e-10), eigenvalues
/// >= -psd tolerance. Trajectory integrators pass a relaxed PSD tolerance.
class DensityMatrix {
  public:
    struct Tolerances {
        double hermitian = 1e-10;
        double trace = 1e-10;
        double psd = 1e-9;
    };

    explicit DensityMatrix(Matrix matrix);
    DensityMatrix(Matrix matrix, Tolerances tol);

    const Matrix& matrix() const { return matrix_; }
    Index dim() const { return matrix_.rows(); }

  private:
    Matrix matrix_;
};

struct MixtureComponent {
    double probability = 0.0;
    PureState state;
};

/// Classical ensemble of pure states. Probabilities must lie in [0, 1] and
/// sum to one within 1e-10; density_from_mixture enforces this.
struct MixtureSpec {
    std::vector<MixtureComponent> components;
};

DensityMatrix density_from_pure(const PureState& psi);
DensityMatrix density_from_mixture(const MixtureSpec& mixture);

/// Tr{rho S} for Hermitian S; the (tiny) imaginary part is discarded.
double expectation(const DensityMatrix& rho, const Matrix& observable);

/// Tr{rho^2}; 1 for pure states, 1/d for the maximally mixed state.
double purity(const DensityMatrix& rho);

// Pauli operators in the computational (z) basis.
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

// Named qubit fixtures.
PureState ket_plus();     // (1, 0)
PureState ket_minus();    // (0, 1)
PureState ket_plus_x();   // (|+> + |->)/sqrt(2)
PureState ket_minus_x();  // (|+> - |->)/sqrt(2)

/// Two-qubit singlet (|+-> - |-+>)/sqrt(2).
PureState singlet();

/// Unbalanced superposition (|s1> + sqrt(3)|s2>)/2 used by the decoherence
/// fixtures; populations 1/4 and 3/4.
PureState wigner_friend();

}  // namespace qmeas

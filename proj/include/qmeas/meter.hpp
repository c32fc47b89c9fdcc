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
#include <vector>

#include "qmeas/states.hpp"

// One-dimensional pointer meter on a uniform grid. An impulsive system-meter
// coupling either displaces each branch's wave function by epsilon*tau*s_n
// (momentum mode) or imprints the phase exp(-i epsilon tau s_n f(m))
// (phase mode). All integrals are trapezoid sums on the grid.

namespace qmeas {

struct MeterGrid {
    MeterGrid(double q_min, double q_max, Index n_points);

    /// 2048 points on [-20, 20]; keeps resampling error well below the
    /// tolerances of the bundled experiments.
    static MeterGrid standard();

    double q_min() const { return q_min_; }
    double q_max() const { return q_max_; }
    Index n_points() const { return n_points_; }
    double step() const { return (q_max_ - q_min_) / static_cast<double>(n_points_ - 1); }
    double q(Index i) const { return q_min_ + step() * static_cast<double>(i); }
    /// Trapezoid quadrature weight of point i.
    double weight(Index i) const {
        return (i == 0 || i == n_points_ - 1) ? 0.5 * step() : step();
    }

    bool operator==(const MeterGrid& other) const = default;

  private:
    double q_min_;
    double q_max_;
    Index n_points_;
};

/// Meter wave function sampled on a grid, trapezoid-normalized exactly at
/// construction (inputs must already be within 1e-6 of unit norm).
class MeterWaveFunction {
  public:
    static MeterWaveFunction from_samples(const MeterGrid& grid, Vector values,
                                          double norm_tol = 1e-6);

    /// Gaussian with |phi|^2 of standard deviation sigma, hard-truncated at
    /// center +/- support_radius (default 4 sigma) and renormalized.
    static MeterWaveFunction truncated_gaussian(const MeterGrid& grid, double sigma,
                                                double support_radius = -1.0, double center = 0.0);

    const MeterGrid& grid() const { return grid_; }
    const Vector& values() const { return values_; }
    double norm_squared() const;

  private:
    MeterWaveFunction(MeterGrid grid, Vector values) : grid_(grid), values_(std::move(values)) {}

    MeterGrid grid_;
    Vector values_;
};

/// Trapezoid integral of a * conj(b); equals <b|a> on the grid.
Complex overlap(const MeterWaveFunction& a, const MeterWaveFunction& b);

/// Position centroid of |values|^2 (not assuming unit norm).
double centroid(const MeterGrid& grid, const Vector& values);

/// values resampled to represent q -> values(q - shift), by linear
/// interpolation, then renormalized. Throws ShiftOutOfGrid when the support
/// (relative threshold 1e-12) would leave the grid.
Vector shifted_samples(const MeterGrid& grid, const Vector& values, double shift);

struct Branch {
    Complex amplitude;
    double eigenvalue = 0.0;
    MeterWaveFunction meter;
};

/// Entangled system-meter state sum_n c_n |s_n>|m_n> expressed in the
/// eigenbasis of the measured observable; sum |c_n|^2 = 1 within 1e-9.
class BranchState {
  public:
    explicit BranchState(std::vector<Branch> branches, double norm_tol = 1e-9);

    const std::vector<Branch>& branches() const { return branches_; }
    Index size() const { return static_cast<Index>(branches_.size()); }

  private:
    std::vector<Branch> branches_;
};

struct CouplingSpec {
    enum class Mode { MomentumDisplacement, PhaseImprint };

    static CouplingSpec momentum_displacement(double epsilon, double tau);
    static CouplingSpec phase_imprint(double epsilon, double tau,
                                      std::function<double(double)> f);

    double epsilon = 0.0;
    double tau = 0.0;
    Mode mode = Mode::MomentumDisplacement;
    std::function<double(double)> f;  // phase mode only
};

/// Attach the shared ready meter to every eigenbranch of the system state.
/// `amplitudes` are the components of the system state in the eigenbasis that
/// pairs with `eigenvalues`.
BranchState pre_measurement(const Vector& amplitudes, const std::vector<double>& eigenvalues,
                            const MeterWaveFunction& meter0);

/// Apply the impulsive coupling branch by branch.
BranchState evolve_impulsive(const BranchState& state, const CouplingSpec& coupling);

/// Integral of phi_n * conj(phi_n') over the grid.
Complex branch_overlap(const BranchState& state, Index n, Index n_prime);

/// Reduced system state: rho_{n,n'} = c_n conj(c_{n'}) <m_{n'}|m_n>, with the
/// diagonal set to |c_n|^2 exactly.
DensityMatrix reduced_system_density(const BranchState& state);

}  // namespace qmeas

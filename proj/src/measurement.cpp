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

#include "qmeas/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmeas {

Projector::Projector(Matrix matrix, double idempotent_tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw NonSquare("projector must be square");
    }
    if (hermiticity_residual(matrix_) > 1e-10) {
        throw NotHermitian("projector is not Hermitian");
    }
    double residual = (matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff();
    if (residual > idempotent_tol) {
        throw InvalidArgument("projector is not idempotent");
    }
}

Projector Projector::onto(const Vector& state) {
    double n = state.norm();
    if (n == 0.0) {
        throw InvalidArgument("cannot project onto the zero vector");
    }
    Vector unit = state / n;
    return Projector(unit * unit.adjoint());
}

PovmEffect::PovmEffect(Matrix matrix, double psd_tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw NonSquare("effect must be square");
    }
    if (hermiticity_residual(matrix_) > 1e-10) {
        throw NotHermitian("effect is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (matrix_ + matrix_.adjoint()));
    if (solver.eigenvalues().minCoeff() < -psd_tol) {
        throw NotPositive("effect has a negative eigenvalue");
    }
}

Povm::Povm(std::vector<PovmEffect> effects, std::vector<std::string> labels, double completeness_tol)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
    if (effects_.empty()) {
        throw InvalidArgument("POVM needs at least one effect");
    }
    if (labels_.size() != effects_.size()) {
        throw InvalidArgument("POVM needs one label per effect");
    }
    Index dim = effects_.front().dim();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& effect : effects_) {
        if (effect.dim() != dim) {
            throw DimensionMismatch("POVM effects live in different spaces");
        }
        sum += effect.matrix();
    }
    double residual = (sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
    if (residual > completeness_tol) {
        throw NotComplete("POVM effects do not sum to the identity");
    }
}

KrausSet::KrausSet(std::vector<Matrix> operators, double completeness_tol)
    : operators_(std::move(operators)) {
    if (operators_.empty()) {
        throw InvalidArgument("Kraus set needs at least one operator");
    }
    Index dim = operators_.front().rows();
    for (const auto& op : operators_) {
        if (op.rows() != dim || op.cols() != dim) {
            throw DimensionMismatch("Kraus operators must be square and equal-sized");
        }
    }
    if (completeness_residual() > completeness_tol) {
        throw IncompleteKrausSet("Kraus operators do not resolve the identity");
    }
}

double KrausSet::completeness_residual() const {
    Index d = dim();
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& op : operators_) {
        sum += op.adjoint() * op;
    }
    return (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

double born_probability(const DensityMatrix& rho, const PovmEffect& effect) {
    if (effect.dim() != rho.dim()) {
        throw DimensionMismatch("born_probability: effect does not match the state dimension");
    }
    double p = (effect.matrix() * rho.matrix()).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

DensityMatrix projective_update(const DensityMatrix& rho, const std::vector<Projector>& projectors,
                                double tol) {
    if (projectors.empty()) {
        throw NotComplete("projective_update needs at least one projector");
    }
    Index dim = rho.dim();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& p : projectors) {
        if (p.dim() != dim) {
            throw DimensionMismatch("projector does not match the state dimension");
        }
        sum += p.matrix();
    }
    for (size_t i = 0; i < projectors.size(); ++i) {
        for (size_t j = i + 1; j < projectors.size(); ++j) {
            double cross = (projectors[i].matrix() * projectors[j].matrix()).cwiseAbs().maxCoeff();
            if (cross > tol) {
                throw NotOrthogonal("projective_update: projectors overlap");
            }
        }
    }
    if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) {
        throw NotComplete("projective_update: projectors do not resolve the identity");
    }
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& p : projectors) {
        out += p.matrix() * rho.matrix() * p.matrix();
    }
    return DensityMatrix(std::move(out));
}

Matrix split_positive(const PovmEffect& effect) {
    HermitianEig eig = hermitian_eig(effect.matrix());
    if (eig.eigenvalues.minCoeff() < -1e-9) {
        throw NotPositive("split_positive needs a positive effect");
    }
    Vector roots(eig.eigenvalues.size());
    for (Index k = 0; k < roots.size(); ++k) {
        roots(k) = std::sqrt(std::max(eig.eigenvalues(k), 0.0));
    }
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

Povm two_detector_povm(double p_z, double p_x) {
    Matrix pz = Matrix::Zero(2, 2);
    pz(0, 0) = 1.0;
    Matrix px(2, 2);
    px << 0.5, 0.5, 0.5, 0.5;

    Matrix a1 = p_z * pz;
    Matrix a2 = p_x * px;
    Matrix a3 = Matrix::Identity(2, 2) - a1 - a2;

    std::vector<PovmEffect> effects;
    effects.emplace_back(std::move(a1));
    effects.emplace_back(std::move(a2));
    effects.emplace_back(std::move(a3));
    return Povm(std::move(effects), {"z", "x", "null"});
}

double max_equal_detection_probability() {
    auto valid = [](double p) {
        try {
            two_detector_povm(p, p);
            return true;
        } catch (const NotPositive&) {
            return false;
        }
    };
    double lo = 0.0;  // valid: all probability in the null outcome
    double hi = 1.0;  // invalid: remainder effect has a negative eigenvalue
    for (int iter = 0; iter < 60 && (hi - lo) > 1e-9; ++iter) {
        double mid = 0.5 * (lo + hi);
        (valid(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

QndReport qnd_check(const Matrix& obs, const Matrix& evolution, const Vector& meter_ready,
                    const std::optional<Matrix>& joint_hamiltonian, double tol) {
    if (obs.rows() != obs.cols() || evolution.rows() != evolution.cols()) {
        throw DimensionMismatch("qnd_check needs square operators");
    }
    Index dim_s = obs.rows();
    if (dim_s == 0 || evolution.rows() % dim_s != 0) {
        throw DimensionMismatch("qnd_check: evolution is not a multiple of the system dimension");
    }
    Index dim_m = evolution.rows() / dim_s;
    if (meter_ready.size() != dim_m) {
        throw DimensionMismatch("qnd_check: ready state does not match the meter dimension");
    }

    Matrix s_joint = tensor_product(obs, Matrix::Identity(dim_m, dim_m));
    Matrix comm = commutator(s_joint, evolution);

    // Column action on system states paired with the ready meter: the columns
    // of (1 x |m0>) span exactly those joint states.
    Matrix embed = tensor_product(Matrix::Identity(dim_s, dim_s), Matrix(meter_ready));
    Matrix restricted = comm * embed;

    QndReport report;
    report.ready_state_residual = restricted.norm();
    report.commutator_residual = comm.norm();
    report.ready_state_ok = report.ready_state_residual < tol;
    report.commutator_ok = report.commutator_residual < tol;
    if (joint_hamiltonian) {
        if (joint_hamiltonian->rows() != evolution.rows() ||
            joint_hamiltonian->cols() != evolution.cols()) {
            throw DimensionMismatch("qnd_check: Hamiltonian does not match the joint space");
        }
        double r = commutator(s_joint, *joint_hamiltonian).norm();
        report.hamiltonian_residual = r;
        report.hamiltonian_ok = r < tol;
    }
    return report;
}

KrausSet kraus_from_unitary(const Matrix& u, const DensityMatrix& rho_env, Index dim_system,
                            Index dim_env) {
    if (dim_system < 1 || dim_env < 1 || u.rows() != u.cols() ||
        u.rows() != dim_system * dim_env || rho_env.dim() != dim_env) {
        throw DimensionMismatch("kraus_from_unitary: inconsistent dimensions");
    }
    if (unitarity_residual(u) > 1e-9) {
        throw NotUnitary("kraus_from_unitary needs a unitary joint evolution");
    }

    HermitianEig env = hermitian_eig(rho_env.matrix());
    Vector roots(env.eigenvalues.size());
    for (Index k = 0; k < roots.size(); ++k) {
        roots(k) = std::sqrt(std::max(env.eigenvalues(k), 0.0));
    }
    Matrix sqrt_env = env.eigenvectors * roots.asDiagonal() * env.eigenvectors.adjoint();

    std::vector<Matrix> ops;
    ops.reserve(static_cast<size_t>(dim_env * dim_env));
    for (Index k = 0; k < dim_env; ++k) {
        for (Index m = 0; m < dim_env; ++m) {
            Matrix op = Matrix::Zero(dim_system, dim_system);
            for (Index j = 0; j < dim_system; ++j) {
                for (Index r = 0; r < dim_system; ++r) {
                    Complex acc = 0.0;
                    for (Index s = 0; s < dim_env; ++s) {
                        acc += u(j * dim_env + k, r * dim_env + s) * sqrt_env(s, m);
                    }
                    op(j, r) = acc;
                }
            }
            if (op.norm() >= 1e-12) {
                ops.push_back(std::move(op));
            }
        }
    }
    return KrausSet(std::move(ops));
}

DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho) {
    if (kraus.dim() != rho.dim()) {
        throw DimensionMismatch("apply_channel: channel does not match the state dimension");
    }
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    for (const auto& op : kraus.operators()) {
        out += op * rho.matrix() * op.adjoint();
    }
    return DensityMatrix(std::move(out), DensityMatrix::Tolerances{1e-10, 1e-9, 1e-9});
}

Matrix ObservableDecomposition::reconstruct() const {
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto& term : diagonal) {
        out += term.coeff * term.op;
    }
    for (const auto& term : symmetric) {
        out += term.coeff * term.op;
    }
    for (const auto& term : antisymmetric) {
        out += term.coeff * term.op;
    }
    return out;
}

double ObservableDecomposition::expectation_via_terms(const DensityMatrix& rho) const {
    if (rho.dim() != dim) {
        throw DimensionMismatch("expectation_via_terms: state does not match the observable");
    }
    double acc = 0.0;
    for (const auto& term : diagonal) {
        acc += term.coeff * (rho.matrix() * term.op).trace().real();
    }
    for (const auto& term : symmetric) {
        acc += term.coeff * (rho.matrix() * term.op).trace().real();
    }
    for (const auto& term : antisymmetric) {
        acc += term.coeff * (rho.matrix() * term.op).trace().real();
    }
    return acc;
}

ObservableDecomposition observable_decomposition(const Matrix& q, double hermitian_tol) {
    if (q.rows() != q.cols() || q.rows() == 0) {
        throw NonSquare("observable_decomposition needs a square matrix");
    }
    if (hermiticity_residual(q) > hermitian_tol) {
        throw NotHermitian("observable_decomposition needs a Hermitian matrix");
    }
    Index d = q.rows();
    ObservableDecomposition out;
    out.dim = d;
    for (Index m = 0; m < d; ++m) {
        double coeff = q(m, m).real();
        if (coeff == 0.0) {
            continue;
        }
        Matrix op = Matrix::Zero(d, d);
        op(m, m) = 1.0;
        out.diagonal.push_back({m, coeff, std::move(op)});
    }
    for (Index m = 1; m < d; ++m) {
        for (Index n = 0; n < m; ++n) {
            double sym = q(m, n).real();
            double antisym = q(m, n).imag();
            if (sym != 0.0) {
                Matrix op = Matrix::Zero(d, d);
                op(m, n) = 1.0;
                op(n, m) = 1.0;
                out.symmetric.push_back({m, n, sym, std::move(op)});
            }
            if (antisym != 0.0) {
                Matrix op = Matrix::Zero(d, d);
                op(m, n) = Complex(0.0, 1.0);
                op(n, m) = Complex(0.0, -1.0);
                out.antisymmetric.push_back({m, n, antisym, std::move(op)});
            }
        }
    }
    return out;
}

Matrix cyclic_shift(Index dim) {
    if (dim < 1) {
        throw DimensionMismatch("cyclic_shift needs a positive dimension");
    }
    Matrix s = Matrix::Zero(dim, dim);
    for (Index p = 0; p < dim; ++p) {
        s((p + 1) % dim, p) = 1.0;
    }
    return s;
}

Matrix shift_generator(Index dim) {
    if (dim < 1) {
        throw DimensionMismatch("shift_generator needs a positive dimension");
    }
    // Fourier eigenbasis of the shift: f_k(p) = exp(2 pi i k p / dim)/sqrt(dim)
    // carries eigenvalue exp(-2 pi i k / dim), so P = sum_k (2 pi k/dim) f_k f_k+.
    Matrix p = Matrix::Zero(dim, dim);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(dim);
    for (Index k = 0; k < dim; ++k) {
        Vector f(dim);
        for (Index j = 0; j < dim; ++j) {
            double phase = step * static_cast<double>(k) * static_cast<double>(j);
            f(j) = std::exp(Complex(0.0, phase)) / std::sqrt(static_cast<double>(dim));
        }
        p += (step * static_cast<double>(k)) * (f * f.adjoint());
    }
    return p;
}

Matrix von_neumann_pointer_unitary(const Matrix& obs, Index dim_meter) {
    if (obs.rows() != obs.cols()) {
        throw NonSquare("von_neumann_pointer_unitary needs a square observable");
    }
    if (dim_meter != obs.rows()) {
        throw DimensionMismatch(
            "von_neumann_pointer_unitary requires meter and system dimensions to match");
    }
    HermitianEig eig = hermitian_eig(obs);
    Index d = obs.rows();
    Matrix shift = cyclic_shift(d);
    Matrix power = Matrix::Identity(d, d);
    Matrix delta = Matrix::Zero(d * d, d * d);
    for (Index n = 0; n < d; ++n) {
        Vector v = eig.eigenvectors.col(n);
        delta += tensor_product(Matrix(v * v.adjoint()), power);
        power = shift * power;
    }
    return delta;
}

Matrix impulsive_coupling(const Matrix& obs, const Matrix& meter_op, double epsilon, double tau) {
    if (obs.rows() != obs.cols() || meter_op.rows() != meter_op.cols()) {
        throw NonSquare("impulsive_coupling needs square operators");
    }
    Matrix h = tensor_product(obs, meter_op);
    return expm(Complex(0.0, -1.0) * epsilon * tau * h);
}

}  // namespace qmeas

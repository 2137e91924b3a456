// Copyright 2026 The spinmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinmod/qsys.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "spinmod/errors.hpp"

namespace spinmod {

namespace {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace

double max_abs(const CMatrix &m) { return m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const CMatrix &m) { return max_abs(m - m.adjoint()); }

CVector vectorize(const CMatrix &rho) {
    const Eigen::Index n = rho.rows();
    CVector v(n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        v.segment(j * n, n) = rho.col(j);
    }
    return v;
}

CMatrix unvectorize(const CVector &v) {
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    CMatrix rho(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        rho.col(j) = v.segment(j * n, n);
    }
    return rho;
}

DensityMatrix::DensityMatrix(CMatrix m, const QsysTolerances &tol) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw numeric_error("DensityMatrix: matrix must be square and nonempty");
    }
    const double tr_err = std::abs(m.trace() - complex(1.0, 0.0));
    if (tr_err > tol.trace) {
        throw numeric_error("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
    }
    const double herm = hermiticity_defect(m);
    if (herm > tol.hermiticity) {
        throw numeric_error("DensityMatrix: Hermiticity defect " + std::to_string(herm));
    }
    m_ = std::move(m);
}

DensityMatrix DensityMatrix::unchecked(CMatrix m) {
    DensityMatrix rho;
    rho.m_ = std::move(m);
    return rho;
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
    CMatrix m = CMatrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return unchecked(std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m_ + m_.adjoint()));
    return es.eigenvalues().minCoeff();
}

Superoperator::Superoperator(int dim, CMatrix action) : dim_(dim), action_(std::move(action)) {
    if (action_.rows() != dim_ * dim_ || action_.cols() != dim_ * dim_) {
        throw numeric_error("Superoperator: action must be dim^2 x dim^2");
    }
    const double norm_inf = action_.cwiseAbs().rowwise().sum().maxCoeff();
    step_ = 0.01 / std::max(norm_inf, 1e-30);
}

CMatrix Superoperator::apply(const CMatrix &rho) const { return unvectorize(action_ * vectorize(rho)); }

Superoperator liouvillian(const CMatrix &hamiltonian, const std::vector<CMatrix> &collapse_ops,
                          const QsysTolerances &tol) {
    const Eigen::Index n = hamiltonian.rows();
    if (hamiltonian.cols() != n) {
        throw numeric_error("liouvillian: Hamiltonian must be square");
    }
    const double herm = hermiticity_defect(hamiltonian);
    if (herm > tol.hermiticity) {
        throw numeric_error("liouvillian: Hamiltonian Hermiticity defect " + std::to_string(herm));
    }
    for (const auto &c : collapse_ops) {
        if (c.rows() != n || c.cols() != n) {
            throw numeric_error("liouvillian: collapse operator dimension mismatch");
        }
    }

    const CMatrix id = CMatrix::Identity(n, n);
    const complex i_unit(0.0, 1.0);
    // -i [H, rho]  ->  -i (I kron H - H^T kron I)
    CMatrix action = -i_unit * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
    for (const auto &c : collapse_ops) {
        const CMatrix cdc = c.adjoint() * c;
        action += kron(c.conjugate(), c);
        action -= 0.5 * kron(id, cdc);
        action -= 0.5 * kron(cdc.transpose(), id);
    }
    return Superoperator(static_cast<int>(n), std::move(action));
}

CMatrix rk4_step_matrix(const Superoperator &liouv, double h) {
    const Eigen::Index n2 = liouv.action().rows();
    const CMatrix hl = h * liouv.action();
    CMatrix step = CMatrix::Identity(n2, n2);
    CMatrix term = CMatrix::Identity(n2, n2);
    for (int k = 1; k <= 4; ++k) {
        term = (term * hl) / static_cast<double>(k);
        step += term;
    }
    return step;
}

DensityMatrix propagate(const Superoperator &liouv, const DensityMatrix &rho0, double t,
                        double step_override) {
    if (t < 0.0) {
        throw numeric_error("propagate: negative time");
    }
    if (rho0.dim() != liouv.dim()) {
        throw numeric_error("propagate: dimension mismatch");
    }
    if (t == 0.0) {
        return rho0;
    }
    const double h_max = step_override > 0.0 ? step_override : liouv.default_step();
    const auto n_steps = static_cast<long long>(std::ceil(t / h_max));
    const double h = t / static_cast<double>(n_steps);
    const CMatrix step = rk4_step_matrix(liouv, h);
    CVector y = vectorize(rho0.matrix());
    for (long long k = 0; k < n_steps; ++k) {
        y = step * y;
    }
    return DensityMatrix::unchecked(unvectorize(y));
}

DensityMatrix steady_state(const Superoperator &liouv, const QsysTolerances &tol) {
    Eigen::JacobiSVD<CMatrix> svd(liouv.action(), Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double s_max = sv(0);
    const double cutoff = std::max(s_max, 1.0) * tol.null_space_rel;
    int multiplicity = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) <= cutoff) {
            ++multiplicity;
        }
    }
    if (multiplicity != 1) {
        throw numeric_error("steady_state: null space multiplicity " + std::to_string(multiplicity) +
                            (multiplicity > 1 ? " (decoupled sectors)" : " (no stationary state found)"));
    }
    CMatrix rho = unvectorize(svd.matrixV().col(sv.size() - 1));
    rho = 0.5 * (rho + rho.adjoint().eval());
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-14) {
        throw numeric_error("steady_state: traceless null vector");
    }
    rho /= tr;
    const double residual = max_abs(liouv.apply(rho));
    if (residual > tol.steady_residual) {
        throw numeric_error("steady_state: residual " + std::to_string(residual));
    }
    return DensityMatrix::unchecked(std::move(rho));
}

} // namespace spinmod

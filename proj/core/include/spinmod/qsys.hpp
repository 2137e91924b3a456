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

#ifndef SPINMOD_QSYS_HPP
#define SPINMOD_QSYS_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace spinmod {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using complex = std::complex<double>;

// Numerical tolerances used across the module. Overridable per call where a
// signature takes them; these are the documented defaults.
struct QsysTolerances {
    double hermiticity = 1e-9;     // max|M - M^dag| accepted as Hermitian
    double trace = 1e-9;           // |Tr(rho) - 1|
    double positivity = -1e-9;     // smallest admissible eigenvalue
    double steady_residual = 1e-10; // ||L rho_ss||_max
    double null_space_rel = 1e-9;  // singular values below rel*s_max count as null
};

inline const QsysTolerances &default_tolerances() {
    static const QsysTolerances tols{};
    return tols;
}

double max_abs(const CMatrix &m);

// max|M - M^dag|; zero (to round-off) for Hermitian inputs.
double hermiticity_defect(const CMatrix &m);

// Column-major vectorization: vec(rho)[i + dim*j] = rho(i, j).
// Under this convention A rho B^dag maps to (conj(B) kron A) vec(rho).
CVector vectorize(const CMatrix &rho);
CMatrix unvectorize(const CVector &v);

// A density matrix: trace one, Hermitian, positive semidefinite (to tolerance).
class DensityMatrix {
  public:
    // Validates trace and Hermiticity; throws spinmod::Error(numeric) on violation.
    explicit DensityMatrix(CMatrix m, const QsysTolerances &tol = default_tolerances());

    // Bypasses validation; for internal use where invariants hold by construction.
    static DensityMatrix unchecked(CMatrix m);

    // |k><k| in a dim-dimensional space.
    static DensityMatrix basis_state(int dim, int k);

    const CMatrix &matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    double trace_real() const { return m_.trace().real(); }
    double hermiticity() const { return hermiticity_defect(m_); }
    // Smallest eigenvalue (real, by Hermitian part).
    double min_eigenvalue() const;

  private:
    DensityMatrix() = default;
    CMatrix m_;
};

// Lindblad generator in column-stacked form: a dim^2 x dim^2 matrix acting on
// vec(rho).
class Superoperator {
  public:
    Superoperator(int dim, CMatrix action);

    int dim() const { return dim_; }
    const CMatrix &action() const { return action_; }

    // Conservative step bound for fixed-step integration: 0.01 / ||L||_inf.
    double default_step() const { return step_; }

    CVector apply(const CVector &v) const { return action_ * v; }
    CMatrix apply(const CMatrix &rho) const;

  private:
    int dim_;
    CMatrix action_;
    double step_;
};

// L[rho] = -i[H, rho] + sum_k (C_k rho C_k^dag - 1/2 {C_k^dag C_k, rho}).
// Throws on dimension mismatch or if H fails the Hermiticity tolerance.
Superoperator liouvillian(const CMatrix &hamiltonian, const std::vector<CMatrix> &collapse_ops,
                          const QsysTolerances &tol = default_tolerances());

// Fixed-step RK4 propagation of rho under L for time t >= 0. For a constant
// generator the classical RK4 step equals the degree-4 Taylor polynomial of
// exp(h L); it is built once as a dim^2 x dim^2 step matrix and applied
// ceil(t / default_step) times. step_override > 0 replaces the default bound.
DensityMatrix propagate(const Superoperator &liouv, const DensityMatrix &rho0, double t,
                        double step_override = 0.0);

// The RK4 one-step matrix I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24.
CMatrix rk4_step_matrix(const Superoperator &liouv, double h);

// Steady state as the null vector of the generator, via SVD with trace
// normalization and Hermitization. Throws if the numerical null space has
// dimension != 1 (multiplicity reported in the message; > 1 signals decoupled
// sectors) or if the residual ||L rho||_max exceeds tolerance.
DensityMatrix steady_state(const Superoperator &liouv,
                           const QsysTolerances &tol = default_tolerances());

} // namespace spinmod

#endif

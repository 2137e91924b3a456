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

#include <gtest/gtest.h>

#include <random>

#include "spinmod/errors.hpp"
#include "spinmod/trion.hpp"

using namespace spinmod;

namespace {

// Independent first-order Euler oracle on the vectorized equation. Kept free
// of the RK4 step-matrix path on purpose.
CMatrix euler_oracle(const Superoperator &liouv, const CMatrix &rho0, double t, double dt) {
    const auto n = static_cast<long long>(std::llround(t / dt));
    CVector y = vectorize(rho0);
    const CMatrix &l = liouv.action();
    for (long long k = 0; k < n; ++k) {
        y += dt * (l * y);
    }
    return unvectorize(y);
}

// Richardson-extrapolated Euler (h, h/2): second-order accurate, still
// independent of the RK4 path.
CMatrix euler_richardson(const Superoperator &liouv, const CMatrix &rho0, double t, double h) {
    const CMatrix coarse = euler_oracle(liouv, rho0, t, h);
    const CMatrix fine = euler_oracle(liouv, rho0, t, h / 2);
    return 2.0 * fine - coarse;
}

TrionParams qd1_markovian() {
    TrionParams p;
    p.gamma = 1.0 / 0.46;
    p.omega_b = 0.5 * 2.0 * M_PI * 0.59;
    p.omega_rabi = 0.1 * p.gamma;
    p.gamma_opt_deph = 0.1 * p.gamma;
    p.spin_dephasing = MarkovianSpinDephasing{2.0 / 2.7};
    return p;
}

CMatrix random_hermitian(std::mt19937 &rng, int dim, double scale) {
    std::normal_distribution<double> dist(0.0, scale);
    CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = complex(dist(rng), dist(rng));
        }
    }
    return 0.5 * (m + m.adjoint().eval());
}

CMatrix random_matrix(std::mt19937 &rng, int dim, double scale) {
    std::normal_distribution<double> dist(0.0, scale);
    CMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = complex(dist(rng), dist(rng));
        }
    }
    return m;
}

DensityMatrix random_density(std::mt19937 &rng, int dim) {
    CMatrix a = random_matrix(rng, dim, 1.0);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

} // namespace

TEST(Vectorize, ColumnMajorConvention) {
    CMatrix m(2, 2);
    m << complex(1, 0), complex(3, 0), complex(2, 0), complex(4, 0);
    const CVector v = vectorize(m);
    // columns stacked: (1, 2, 3, 4)
    EXPECT_EQ(v(0), complex(1, 0));
    EXPECT_EQ(v(1), complex(2, 0));
    EXPECT_EQ(v(2), complex(3, 0));
    EXPECT_EQ(v(3), complex(4, 0));
    EXPECT_NEAR(max_abs(unvectorize(v) - m), 0.0, 0.0);
}

TEST(Liouvillian, ZeroGeneratorForTrivialInput) {
    const CMatrix h = CMatrix::Zero(2, 2);
    const Superoperator l = liouvillian(h, {});
    EXPECT_NEAR(max_abs(l.action()), 0.0, 1e-15);
}

TEST(Liouvillian, PureExponentialDecay) {
    const double gamma = 2.0;
    CMatrix c = CMatrix::Zero(2, 2);
    c(0, 1) = std::sqrt(gamma); // |g><e|
    const Superoperator l = liouvillian(CMatrix::Zero(2, 2), {c});
    const DensityMatrix excited = DensityMatrix::basis_state(2, 1);
    for (double t : {0.1, 0.5, 1.0 / gamma, 2.0}) {
        const DensityMatrix rho = propagate(l, excited, t);
        EXPECT_NEAR(rho.matrix()(1, 1).real(), std::exp(-gamma * t), 1e-8) << "t=" << t;
    }
}

TEST(Liouvillian, RejectsNonHermitianHamiltonian) {
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 1) = complex(1.0, 0.0);
    h(1, 0) = complex(0.5, 0.0);
    EXPECT_THROW(liouvillian(h, {}), Error);
}

TEST(Liouvillian, RejectsDimensionMismatch) {
    const CMatrix h = CMatrix::Zero(2, 2);
    const CMatrix c = CMatrix::Zero(3, 3);
    EXPECT_THROW(liouvillian(h, {c}), Error);
}

TEST(Liouvillian, TracePreservationOnRandomInput) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        std::vector<CMatrix> ops;
        for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
            ops.push_back(random_matrix(rng, dim, 0.7));
        }
        const Superoperator l = liouvillian(random_hermitian(rng, dim, 1.0), ops);
        const DensityMatrix rho = random_density(rng, dim);
        const CMatrix drho = l.apply(rho.matrix());
        EXPECT_NEAR(std::abs(drho.trace()), 0.0, 1e-12);
        // L[rho] stays Hermitian for Hermitian rho
        EXPECT_NEAR(hermiticity_defect(drho), 0.0, 1e-12);
    }
}

TEST(Liouvillian, TrionGeneratorMatchesEulerOracle) {
    const TrionParams p = qd1_markovian();
    const Superoperator l = trion_liouvillian(p);
    const DensityMatrix rho0 = DensityMatrix::basis_state(4, basis::trion_up);
    const double t = 1.0 / p.gamma;

    // dt = 1e-6/gamma keeps the first-order Euler error below the 1e-6 gate;
    // at the coarser 1e-4/gamma the oracle itself is only ~4e-5 accurate.
    const CMatrix oracle = euler_oracle(l, rho0.matrix(), t, 1e-6 / p.gamma);
    const DensityMatrix rk4 = propagate(l, rho0, t);
    EXPECT_LT(max_abs(rk4.matrix() - oracle), 1e-6);
}

TEST(Propagate, ZeroTimeIsIdentity) {
    const TrionParams p = qd1_markovian();
    const Superoperator l = trion_liouvillian(p);
    const DensityMatrix rho0 = DensityMatrix::basis_state(4, basis::up);
    const DensityMatrix rho = propagate(l, rho0, 0.0);
    EXPECT_EQ(max_abs(rho.matrix() - rho0.matrix()), 0.0);
}

TEST(Propagate, RejectsNegativeTime) {
    const Superoperator l = liouvillian(CMatrix::Zero(2, 2), {});
    EXPECT_THROW(propagate(l, DensityMatrix::basis_state(2, 0), -1.0), Error);
}

TEST(Propagate, LongHorizonMatchesRichardsonEuler) {
    const TrionParams p = qd1_markovian();
    const Superoperator l = trion_liouvillian(p);
    const DensityMatrix rho0 = DensityMatrix::basis_state(4, basis::trion_up);
    const double t = 10.0 / p.gamma;
    const CMatrix oracle = euler_richardson(l, rho0.matrix(), t, 1e-4 / p.gamma);
    const DensityMatrix rk4 = propagate(l, rho0, t);
    EXPECT_LT(max_abs(rk4.matrix() - oracle), 1e-6);
}

TEST(Propagate, InvariantsOnRandomGenerators) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        std::vector<CMatrix> ops;
        for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
            ops.push_back(random_matrix(rng, dim, 0.6));
        }
        const Superoperator l = liouvillian(random_hermitian(rng, dim, 1.0), ops);
        const DensityMatrix rho0 = random_density(rng, dim);
        const DensityMatrix rho = propagate(l, rho0, 1.5);
        EXPECT_NEAR(rho.trace_real(), 1.0, 1e-9);
        EXPECT_LT(rho.hermiticity(), 1e-9);
        EXPECT_GT(rho.min_eigenvalue(), -1e-9);
    }
}

TEST(Propagate, SemigroupProperty) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 3);
        std::vector<CMatrix> ops = {random_matrix(rng, dim, 0.5)};
        const Superoperator l = liouvillian(random_hermitian(rng, dim, 0.8), ops);
        const DensityMatrix rho0 = random_density(rng, dim);
        const double t1 = 0.3 + 0.2 * trial;
        const double t2 = 0.7;
        const DensityMatrix direct = propagate(l, rho0, t1 + t2);
        const DensityMatrix stepped = propagate(l, propagate(l, rho0, t1), t2);
        EXPECT_LT(max_abs(direct.matrix() - stepped.matrix()), 1e-8);
    }
}

TEST(SteadyState, DecayOnlyReachesDarkState) {
    const double gamma = 1.3;
    CMatrix c = CMatrix::Zero(2, 2);
    c(0, 1) = std::sqrt(gamma);
    const Superoperator l = liouvillian(CMatrix::Zero(2, 2), {c});
    const DensityMatrix rho = steady_state(l);
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(rho.matrix()(1, 1)), 0.0, 1e-10);
}

TEST(SteadyState, WeakDriveTwoLevelPopulation) {
    const double gamma = 1.0 / 0.46;
    const double omega = 0.01 * gamma;
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 1) = omega / 2;
    h(1, 0) = omega / 2;
    CMatrix c = CMatrix::Zero(2, 2);
    c(0, 1) = std::sqrt(gamma);
    const Superoperator l = liouvillian(h, {c});
    const DensityMatrix rho = steady_state(l);
    // exact two-level result Omega^2 / (Gamma^2 + 2 Omega^2 + 4 Delta^2)
    const double expected = omega * omega / (gamma * gamma + 2 * omega * omega);
    EXPECT_NEAR(rho.matrix()(1, 1).real() / expected, 1.0, 0.05);
}

TEST(SteadyState, MatchesLongTimePropagation) {
    const TrionParams p = qd1_markovian();
    const Superoperator l = trion_liouvillian(p);
    const DensityMatrix rho_ss = steady_state(l);
    EXPECT_LT(max_abs(l.apply(rho_ss.matrix())), 1e-10);
    EXPECT_NEAR(rho_ss.trace_real(), 1.0, 1e-12);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 3; ++trial) {
        const DensityMatrix rho0 = random_density(rng, 4);
        const DensityMatrix rho_long = propagate(l, rho0, 200.0 * 2.7);
        EXPECT_LT(max_abs(rho_long.matrix() - rho_ss.matrix()), 1e-6) << "trial " << trial;
    }
}

TEST(SteadyState, FixedPointUnderFurtherPropagation) {
    const TrionParams p = qd1_markovian();
    const Superoperator l = trion_liouvillian(p);
    const DensityMatrix rho_ss = steady_state(l);
    const DensityMatrix later = propagate(l, rho_ss, 7.7);
    EXPECT_LT(max_abs(later.matrix() - rho_ss.matrix()), 1e-8);
}

TEST(SteadyState, ReportsDegenerateNullSpace) {
    // two decoupled driven branches: omega_b = 0 leaves the spin sectors
    // disconnected and the stationary state non-unique
    TrionParams p = qd1_markovian();
    p.omega_b = 0.0;
    p.spin_dephasing = MarkovianSpinDephasing{0.0};
    const Superoperator l = trion_liouvillian(p);
    try {
        steady_state(l);
        FAIL() << "expected multiplicity error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("multiplicity 2"), std::string::npos) << e.what();
    }
}

TEST(DensityMatrix, ValidatesTraceAndHermiticity) {
    CMatrix bad_trace = 2.0 * CMatrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix{bad_trace}, Error);
    CMatrix bad_herm = CMatrix::Identity(2, 2) * 0.5;
    bad_herm(0, 1) = complex(0.1, 0.0);
    EXPECT_THROW(DensityMatrix{bad_herm}, Error);
}

TEST(Superoperator, HermiticityDefectDetectsHermitian) {
    std::mt19937 rng(5);
    const CMatrix h = random_hermitian(rng, 4, 2.0);
    EXPECT_LT(hermiticity_defect(h), 1e-12);
    CMatrix m = h;
    m(0, 1) += complex(0.0, 1e-6);
    EXPECT_GT(hermiticity_defect(m), 1e-7);
}

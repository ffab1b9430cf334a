#include "qcd/errors.hpp"
#include "qcd/measures.hpp"
#include "qcd/optimize.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace qcd;

namespace {

DensityMatrix ghz() {
    Vector v = Vector::Zero(8);
    v(0) = v(7) = 1.0 / std::sqrt(2.0);
    return DensityMatrix::from_pure(PureState(v));
}

// Svetlichny operator built from dense Pauli products:
//   ABC + ABC' + AB'C - AB'C' + A'BC - A'BC' - A'B'C - A'B'C'
ref::Mat svetlichny_operator(const SvetlichnySettings& s) {
    const ref::Mat A = ref::dot_sigma(s.a), Ap = ref::dot_sigma(s.a_prime);
    const ref::Mat C = ref::dot_sigma(s.c), Cp = ref::dot_sigma(s.c_prime);
    const ref::Mat B = ref::dot_sigma(std::cos(s.t) * s.d + std::sin(s.t) * s.d_prime);
    const ref::Mat Bp = ref::dot_sigma(std::cos(s.t) * s.d - std::sin(s.t) * s.d_prime);
    auto k3 = [](const ref::Mat& x, const ref::Mat& y, const ref::Mat& z) { return ref::kron(ref::kron(x, y), z); };
    return k3(A, B, C) + k3(A, B, Cp) + k3(A, Bp, C) - k3(A, Bp, Cp) + k3(Ap, B, C) - k3(Ap, B, Cp) -
           k3(Ap, Bp, C) - k3(Ap, Bp, Cp);
}

}  // namespace

TEST(CorrelationTensor, MatchesDirectTraces) {
    SeedStream rng(3);
    ref::Vec v(8);
    for (auto& x : v) x = ref::cplx(rng.normal(), rng.normal());
    v.normalize();
    const ref::Mat rho = ref::projector(v);
    const CorrelationTensor T = correlation_tensor_3(DensityMatrix(rho));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double direct =
                    (rho * ref::kron(ref::kron(ref::pauli(i), ref::pauli(j)), ref::pauli(k))).trace().real();
                EXPECT_NEAR(T(i, j, k), direct, 1e-12);
                EXPECT_LE(std::abs(T(i, j, k)), 1.0 + 1e-10);
            }
    const ref::Mat rho2 = ref::ptrace(rho, 3, {0, 2});
    const CorrelationTensor T2 = correlation_tensor_2(DensityMatrix(rho2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_NEAR(T2(i, j), (rho2 * ref::kron(ref::pauli(i), ref::pauli(j))).trace().real(), 1e-12);
}

TEST(CorrelationTensor, GhzEntries) {
    const CorrelationTensor T = correlation_tensor_3(ghz());
    EXPECT_NEAR(T(0, 0, 0), 1.0, 1e-12);
    EXPECT_NEAR(T(0, 1, 1), -1.0, 1e-12);
    EXPECT_NEAR(T(1, 0, 1), -1.0, 1e-12);
    EXPECT_NEAR(T(1, 1, 0), -1.0, 1e-12);
    double rest = 0.0;
    for (int e = 0; e < 27; ++e) rest += std::abs(T.entries[static_cast<std::size_t>(e)]);
    EXPECT_NEAR(rest, 4.0, 1e-12);
}

TEST(CorrelationTensor, ProductZeroState) {
    Vector v = Vector::Zero(8);
    v(0) = 1.0;
    const CorrelationTensor T = correlation_tensor_3(DensityMatrix::from_pure(PureState(v)));
    for (int e = 0; e < 27; ++e) EXPECT_NEAR(T.entries[static_cast<std::size_t>(e)], e == 26 ? 1.0 : 0.0, 1e-15);
    EXPECT_THROW(correlation_tensor_3(DensityMatrix::maximally_mixed(4)), ShapeError);
}

TEST(CorrelationTensor, LargeDatabaseHasTwoEntries) {
    // As N grows rho3 tends to sin^2 |000><000| + cos^2 |+++><+++|, giving
    // T_xxx = cos^2 alpha_r and T_zzz = sin^2 alpha_r.
    const GroverConfig cfg = GroverConfig::make(24, 1);
    const std::int64_t ro = optimal_iterations(cfg).value;
    for (std::int64_t r : {ro / 4, ro / 2, 3 * ro / 4}) {
        const SymmetricGAState s = state_at(cfg, r);
        const CorrelationTensor T = correlation_tensor_3(reduced_density(cfg, s, 3));
        const double c2 = std::cos(s.alpha_r) * std::cos(s.alpha_r);
        EXPECT_NEAR(T(0, 0, 0), c2, 1e-3);
        EXPECT_NEAR(T(2, 2, 2), 1.0 - c2, 1e-3);
        for (int e = 1; e < 26; ++e) EXPECT_LE(std::abs(T.entries[static_cast<std::size_t>(e)]), 1e-3) << e;
    }
}

TEST(ChshM, BellAndProduct) {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(chsh_M(DensityMatrix::from_pure(PureState(bell))), 2.0, 1e-12);
    const DensityMatrix plus = reduced_density(GroverConfig::make(5, 1), 0, 2);
    EXPECT_NEAR(chsh_M(plus), 1.0, 1e-12);
    EXPECT_NEAR(chsh_M_ga(GroverConfig::make(5, 1), 0), 1.0, 1e-12);
    const ChshClosedForm cf = chsh_closed_form(two_qubit_omegas(GroverConfig::make(5, 1), 0));
    EXPECT_NEAR(cf.lambda2, 0.0, 1e-12);
    EXPECT_NEAR(cf.lambda3, 1.0, 1e-12);
}

TEST(ChshM, ClosedFormMatchesGeneric) {
    for (int n = 2; n <= 24; ++n) {
        const GroverConfig cfg = GroverConfig::make(n, 1);
        const std::int64_t ro = optimal_iterations(cfg).value;
        for (std::int64_t r = 0; r <= ro; r += 1 + ro / 11) {
            const ref::Mat rho2 = (n == 2) ? ref::projector(ref::grover_dense(2, {0}, static_cast<int>(r)))
                                           : reduced_density(cfg, r, 2).matrix();
            // independent eigenvalue route on T^T T from direct traces
            Eigen::Matrix3d T;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) T(i, j) = (rho2 * ref::kron(ref::pauli(i), ref::pauli(j))).trace().real();
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(T.transpose() * T);
            const double generic = es.eigenvalues()(1) + es.eigenvalues()(2);
            EXPECT_NEAR(chsh_M(DensityMatrix(rho2)), generic, 1e-10);
            EXPECT_NEAR(chsh_M_ga(cfg, r), generic, 1e-10) << n << " " << r;
        }
    }
}

TEST(ChshM, LargeDatabaseLimitAndBound) {
    const GroverConfig cfg = GroverConfig::make(24, 1);
    for (std::int64_t r = 0; r <= optimal_iterations(cfg).value; r += 97) {
        const SymmetricGAState s = state_at(cfg, r);
        const double sc = std::sin(s.alpha_r) * std::cos(s.alpha_r);
        const double M = chsh_M_ga(cfg, s);
        EXPECT_NEAR(M, 1.0 - 2.0 * sc * sc, 1e-3);
        EXPECT_LE(M, 1.0 + 1e-9);
    }
}

TEST(Svetlichny, ExpectationMatchesDenseOperator) {
    SeedStream rng(12);
    ref::Vec v(8);
    for (auto& x : v) x = ref::cplx(rng.normal(), rng.normal());
    v.normalize();
    const ref::Mat rho = ref::projector(v);
    const CorrelationTensor T = correlation_tensor_3(DensityMatrix(rho));
    for (int t = 0; t < 10; ++t) {
        std::vector<double> x(12);
        for (double& a : x) a = rng.uniform(0.0, 2 * std::numbers::pi);
        const SvetlichnySettings s = svetlichny_settings(x);
        EXPECT_NEAR(s.d.dot(s.d_prime), 0.0, 1e-14);
        EXPECT_NEAR(s.d_prime.norm(), 1.0, 1e-14);
        const double direct = std::abs((rho * svetlichny_operator(s)).trace().real());
        EXPECT_NEAR(svetlichny_expectation(T, s), direct, 1e-12);
    }
}

TEST(Svetlichny, GhzReachesQuantumMaximum) {
    const SvetlichnyResult res = svetlichny_max(ghz());
    EXPECT_NEAR(res.value, 4.0 * std::sqrt(2.0), 1e-3);
    EXPECT_LE(res.value, 4.0 * std::sqrt(2.0) + 1e-6);
    EXPECT_EQ(res.restarts, 64);
}

TEST(Svetlichny, MonotoneInRestarts) {
    const CorrelationTensor T = correlation_tensor_3(reduced_density(GroverConfig::make(9, 1), 6, 3));
    double prev = 0.0;
    for (int k : {1, 2, 4, 8, 16}) {
        SvetlichnyOptions o;
        o.restarts = k;
        const double v = svetlichny_max(T, o).value;
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Svetlichny, ProductStateWithinLocalBound) {
    SeedStream rng(44);
    ref::Mat rho = ref::Mat::Identity(1, 1);
    for (int q = 0; q < 3; ++q) {
        ref::Vec v(2);
        v << ref::cplx(rng.normal(), rng.normal()), ref::cplx(rng.normal(), rng.normal());
        rho = ref::kron(rho, ref::projector(v.normalized()));
    }
    SvetlichnyOptions o;
    o.restarts = 16;
    EXPECT_LE(svetlichny_max(DensityMatrix(rho), o).value, 4.0 + 1e-6);
}

TEST(Svetlichny, Deterministic) {
    SvetlichnyOptions o;
    o.restarts = 8;
    const DensityMatrix rho3 = reduced_density(GroverConfig::make(11, 1), 20, 3);
    EXPECT_EQ(svetlichny_max(rho3, o).value, svetlichny_max(rho3, o).value);
    o.restarts = 0;
    EXPECT_THROW(svetlichny_max(rho3, o), DomainError);
}

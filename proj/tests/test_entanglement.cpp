#include "qcd/errors.hpp"
#include "qcd/measures.hpp"
#include "qcd/optimize.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace qcd;

namespace {

ref::Vec random_pure(int dim, SeedStream& rng) {
    ref::Vec v(dim);
    for (auto& x : v) x = ref::cplx(rng.normal(), rng.normal());
    return v.normalized();
}

// (2/sqrt N) sqrt((N - 2) - sum over proper nonempty qubit subsets of Tr rho_S^2)
double multiqubit_reference(const ref::Vec& psi, int n) {
    const ref::Mat rho = ref::projector(psi);
    const double N = std::ldexp(1.0, n);
    double purity_sum = 0.0;
    for (unsigned mask = 1; mask + 1 < (1U << n); ++mask) {
        std::vector<int> keep;
        for (int q = 0; q < n; ++q)
            if (mask & (1U << q)) keep.push_back(q);
        const ref::Mat red = ref::ptrace(rho, n, keep);
        purity_sum += (red * red).trace().real();
    }
    return 2.0 / std::sqrt(N) * std::sqrt(std::max(0.0, (N - 2.0) - purity_sum));
}

}  // namespace

TEST(Wootters, BellAndProduct) {
    Vector bell = Vector::Zero(4);
    bell(1) = 1.0 / std::sqrt(2.0);
    bell(2) = -1.0 / std::sqrt(2.0);
    EXPECT_NEAR(concurrence_two_qubit(DensityMatrix::from_pure(PureState(bell))), 1.0, 1e-12);

    SeedStream rng(2);
    for (int t = 0; t < 10; ++t) {
        const ref::Vec a = random_pure(2, rng), b = random_pure(2, rng);
        const ref::Vec ab = ref::kron(a, b);
        EXPECT_NEAR(concurrence_two_qubit(DensityMatrix::from_pure(PureState(ab))), 0.0, 1e-7);
    }
}

TEST(Wootters, MatchesTextbookRoute) {
    SeedStream rng(19);
    for (int t = 0; t < 20; ++t) {
        // rank-2 mixtures so the spectrum is not degenerate
        const ref::Vec u = random_pure(4, rng), v = random_pure(4, rng);
        const double w = rng.uniform();
        const ref::Mat rho = w * ref::projector(u) + (1 - w) * ref::projector(v);
        EXPECT_NEAR(concurrence_two_qubit(DensityMatrix(rho)), ref::wootters(rho), 1e-8);
    }
}

TEST(Wootters, WernerThreshold) {
    // p |Bell><Bell| + (1-p) I/4 has C = max(0, (3p - 1)/2)
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.6, 0.9}) {
        const Matrix rho = p * bell * bell.adjoint() + (1 - p) * Matrix::Identity(4, 4) / 4.0;
        EXPECT_NEAR(concurrence_two_qubit(DensityMatrix(rho)), std::max(0.0, (3 * p - 1) / 2), 1e-8);
    }
}

TEST(Wootters, RejectsWrongShape) {
    EXPECT_THROW(concurrence_two_qubit(DensityMatrix::maximally_mixed(8)), ShapeError);
}

TEST(PairConcurrenceGA, InitialAndTwoQubitFinal) {
    EXPECT_NEAR(concurrence_two_qubit_ga(GroverConfig::make(7, 1), 0), 0.0, 1e-15);
    EXPECT_NEAR(concurrence_two_qubit_ga(GroverConfig::make(2, 1), 1), 0.0, 1e-15);
    const ref::Mat rho = ref::projector(ref::grover_dense(2, {0}, 1));
    EXPECT_NEAR(ref::wootters(rho), 0.0, 1e-7);
}

TEST(PairConcurrenceGA, FiveQubitsOmegaForm) {
    const GroverConfig cfg = GroverConfig::make(5, 1);
    const TwoQubitOmega o = two_qubit_omegas(cfg, 1);
    const ref::Mat rho2 = ref::ptrace(ref::projector(ref::grover_dense(5, {0}, 1)), 5, {0, 1});
    EXPECT_NEAR(ref::wootters(rho2), 2 * std::abs(o.omega1 - o.omega2), 1e-8);
    EXPECT_NEAR(concurrence_two_qubit_ga(cfg, 1), 2 * std::abs(o.omega1 - o.omega2), 1e-12);
}

TEST(PairConcurrenceGA, MatchesWoottersOnDenseStates) {
    for (int n = 2; n <= 8; ++n) {
        const GroverConfig cfg = GroverConfig::make(n, 1);
        for (std::int64_t r = 0; r <= optimal_iterations(cfg).value; ++r) {
            const ref::Mat rho2 =
                ref::ptrace(ref::projector(ref::grover_dense(n, {0}, static_cast<int>(r))), n, {n - 2, n - 1});
            EXPECT_NEAR(concurrence_two_qubit_ga(cfg, r), ref::wootters(rho2), 1e-8) << n << " " << r;
        }
    }
}

TEST(PairConcurrenceGA, ElevenQubitShape) {
    const GroverConfig cfg = GroverConfig::make(11, 1);
    const std::int64_t ro = optimal_iterations(cfg).value;
    std::vector<double> c;
    for (std::int64_t r = 0; r <= ro; ++r) c.push_back(concurrence_two_qubit_ga(cfg, r));
    const auto peak = std::max_element(c.begin(), c.end()) - c.begin();
    EXPECT_GT(peak, 0);
    EXPECT_LT(peak, ro);
    EXPECT_LT(c.back(), 0.2 * c[static_cast<std::size_t>(peak)]);
    EXPECT_THROW(concurrence_two_qubit_ga(GroverConfig::make(5, 2), 1), UnsupportedStructureError);
}

TEST(MultiqubitGA, ZeroAtStart) {
    for (int n = 2; n <= 24; n += 2) EXPECT_NEAR(concurrence_multiqubit_ga(GroverConfig::make(n, 1), 0), 0.0, 1e-6);
}

TEST(MultiqubitGA, SumFormEqualsExpandedForm) {
    for (int n = 2; n <= 24; ++n) {
        const GroverConfig cfg = GroverConfig::make(n, 1);
        const std::int64_t ro = optimal_iterations(cfg).value;
        for (std::int64_t r = 0; r <= ro; r += 1 + ro / 9) {
            const SymmetricGAState s = state_at(cfg, r);
            EXPECT_NEAR(concurrence_multiqubit_ga(cfg, s), concurrence_multiqubit_expanded(cfg, s), 1e-9)
                << n << " " << r;
        }
    }
}

TEST(MultiqubitGA, MatchesSubsetPurityOracle) {
    for (int n = 2; n <= 6; ++n) {
        const GroverConfig cfg = GroverConfig::make(n, 1);
        for (std::int64_t r = 0; r <= optimal_iterations(cfg).value; ++r)
            EXPECT_NEAR(concurrence_multiqubit_ga(cfg, r),
                        multiqubit_reference(ref::grover_dense(n, {0}, static_cast<int>(r)), n), 1e-7)
                << n << " " << r;
    }
}

TEST(MultiqubitGA, ReducedPurityAgainstDense) {
    const GroverConfig cfg = GroverConfig::make(6, 1);
    const SymmetricGAState s = state_at(cfg, 2);
    const ref::Mat rho = ref::projector(ref::grover_dense(6, {0}, 2));
    for (int k = 1; k < 6; ++k) {
        std::vector<int> keep;
        for (int q = 0; q < k; ++q) keep.push_back(q);
        const ref::Mat red = ref::ptrace(rho, 6, keep);
        EXPECT_NEAR(reduced_purity_ga(cfg, s, k), (red * red).trace().real(), 1e-12);
        EXPECT_NEAR(reduced_entropy_ga(cfg, s, k), ref::entropy(red), 1e-10);
    }
}

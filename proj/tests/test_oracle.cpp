#include "qcd/errors.hpp"
#include "qcd/gga.hpp"
#include "qcd/oracle.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace qcd;

TEST(GroverStep, TwoQubitsOneStep) {
    const std::vector<std::uint64_t> sol{2};
    const StateVector sv = grover_step(StateVector::uniform(2), sol);
    EXPECT_NEAR(std::abs(sv.amplitudes()[2]), 1.0, 1e-15);
    for (std::size_t i : {0U, 1U, 3U}) EXPECT_NEAR(std::abs(sv.amplitudes()[i]), 0.0, 1e-15);
}

TEST(GroverStep, AllIndicesMarkedOnlyChangesPhase) {
    const std::vector<std::uint64_t> all{0, 1, 2, 3, 4, 5, 6, 7};
    const StateVector u = StateVector::uniform(3);
    const StateVector sv = grover_step(u, all);
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < 8; ++i) overlap += std::conj(u.amplitudes()[i]) * sv.amplitudes()[i];
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-15);
}

TEST(GroverStep, ThreeQubitsTwoSteps) {
    const std::vector<std::uint64_t> sol{0};
    const StateVector sv = grover_step(grover_step(StateVector::uniform(3), sol), sol);
    EXPECT_NEAR(sv.probability_of(sol), 121.0 / 128.0, 1e-12);
}

TEST(GroverStep, ErrorsAndCapacity) {
    EXPECT_THROW(grover_step(StateVector::uniform(3), std::vector<std::uint64_t>{}), DomainError);
    EXPECT_THROW(StateVector::uniform(13), CapacityError);
    EXPECT_NO_THROW(StateVector::uniform(13, 13));
    EXPECT_THROW(StateVector(1, {cplx(1, 0), cplx(1, 0)}), InvalidStateError);
}

TEST(GroverStep, NormAndProbabilityAgainstClosedForm) {
    for (int n = 1; n <= 10; ++n)
        for (std::uint64_t j = 1; j <= 4 && j < (std::uint64_t{1} << n); ++j) {
            const GroverConfig cfg = GroverConfig::make(n, j);
            StateVector sv = StateVector::uniform(n);
            for (std::int64_t r = 0; r <= optimal_iterations(cfg).value; ++r) {
                EXPECT_NEAR(sv.norm2(), 1.0, 1e-12);
                EXPECT_NEAR(sv.probability_of(cfg.solutions), success_probability(cfg, r), 1e-12);
                sv = grover_step(sv, cfg.solutions);
            }
        }
}

TEST(GroverStep, MatchesDenseOperators) {
    const GroverConfig cfg = GroverConfig::with_solutions(6, {9, 33, 60});
    const StateVector sv = evolve(cfg, 3);
    const ref::Vec psi = ref::grover_dense(6, {9, 33, 60}, 3);
    for (std::size_t i = 0; i < sv.dim(); ++i)
        EXPECT_NEAR(std::abs(sv.amplitudes()[i] - psi(static_cast<Eigen::Index>(i))), 0.0, 1e-12);
}

TEST(GroverStep, UniformGGAEquivalence) {
    for (int n = 2; n <= 8; ++n)
        for (std::size_t j = 1; j <= 4 && j < (std::size_t{1} << n); ++j) {
            const GroverConfig cfg = GroverConfig::make(n, j);
            const std::size_t N = std::size_t{1} << n;
            for (std::int64_t r = 0; r <= optimal_iterations(cfg).value; ++r) {
                const std::vector<cplx> g =
                    gga_iterate(AmplitudeDistribution::uniform(N, j), r).to_amplitudes(cfg.solutions);
                const StateVector sv = evolve(cfg, r);
                for (std::size_t i = 0; i < N; ++i) EXPECT_NEAR(std::abs(g[i] - sv.amplitudes()[i]), 0.0, 1e-12);
            }
        }
}

TEST(OraclePeak, ScanFindsOptimum) {
    EXPECT_EQ(oracle_peak_iteration(GroverConfig::make(2, 1), 2), 1);
    EXPECT_EQ(oracle_peak_iteration(GroverConfig::make(3, 1), 3), 2);
    EXPECT_EQ(oracle_peak_iteration(GroverConfig::make(11, 1), 60), 35);
}

TEST(RunAndMeasure, ThreeQubitProbability) {
    const std::vector<Measure> m{Measure::P};
    const MeasureReport rep = run_and_measure(GroverConfig::make(3, 1), 2, m);
    EXPECT_NEAR(*rep.get(Measure::P), 0.9453, 1e-4);
    EXPECT_FALSE(rep.get(Measure::Cr).has_value());
}

TEST(RunAndMeasure, InitialProductState) {
    const std::vector<Measure> m{Measure::Cr, Measure::Cl1, Measure::E2, Measure::D2};
    const MeasureReport rep = run_and_measure(GroverConfig::make(5, 1), 0, m);
    EXPECT_NEAR(*rep.get(Measure::Cr), 5.0, 1e-10);
    EXPECT_NEAR(*rep.get(Measure::Cl1), 31.0, 1e-10);
    EXPECT_NEAR(*rep.get(Measure::E2), 0.0, 1e-7);
    EXPECT_NEAR(*rep.get(Measure::D2), 0.0, 1e-7);
}

TEST(RunAndMeasure, CoherenceMatchesClosedFormWithThreeSolutions) {
    const GroverConfig cfg = GroverConfig::with_solutions(8, {4, 100, 201});
    const std::vector<Measure> m{Measure::Cr};
    EXPECT_NEAR(*run_and_measure(cfg, 1, m).get(Measure::Cr), coherence_r_ga(cfg, 1), 1e-10);
}

TEST(RunAndMeasure, GenericMultipartiteAgainstReference) {
    const GroverConfig cfg = GroverConfig::make(5, 1);
    const std::vector<Measure> m{Measure::En, Measure::Dn};
    const MeasureReport rep = run_and_measure(cfg, 2, m);
    const ref::Mat rho = ref::projector(ref::grover_dense(5, {0}, 2));
    double purity = 0.0;
    double best = 1e300;
    for (unsigned mask = 1; mask + 1 < 32U; ++mask) {
        std::vector<int> keep;
        for (int q = 0; q < 5; ++q)
            if (mask & (1U << q)) keep.push_back(q);
        const ref::Mat red = ref::ptrace(rho, 5, keep);
        purity += (red * red).trace().real();
        best = std::min(best, ref::entropy(red));
    }
    EXPECT_NEAR(*rep.get(Measure::En), 2.0 / std::sqrt(32.0) * std::sqrt(30.0 - purity), 1e-8);
    // merging blocks never raises the total (subadditivity), and for a pure
    // state both halves of a bipartition have equal entropy
    EXPECT_NEAR(*rep.get(Measure::Dn), best, 1e-8);
}

TEST(RunAndMeasure, UndefinedMeasuresAreEmpty) {
    const std::vector<Measure> m{Measure::E2, Measure::Svetlichny};
    const MeasureReport rep = run_and_measure(GroverConfig::make(1, 1), 0, m);
    EXPECT_FALSE(rep.get(Measure::E2).has_value());
    EXPECT_FALSE(rep.get(Measure::Svetlichny).has_value());
    EXPECT_THROW(run_and_measure(GroverConfig::make(13, 1), 0, m), CapacityError);
}

TEST(MeasureNames, ParseRoundTrip) {
    for (Measure m : kAllMeasures) EXPECT_EQ(parse_measure(measure_name(m)), m);
    EXPECT_EQ(parse_measure("cr"), Measure::Cr);
    EXPECT_EQ(parse_measure("SV"), Measure::Svetlichny);
    EXPECT_EQ(parse_measure("l1"), Measure::Cl1);
    EXPECT_THROW(parse_measure("negativity"), ParseError);
}

TEST(CrossValidate, SmallestSizePasses) {
    CrossValidateOptions o;
    o.max_n = 2;
    const ValidationSummary v = cross_validate(o);
    EXPECT_TRUE(v.passed);
    EXPECT_GE(v.configurations, 1U);
    for (const IdentityCheck& c : v.checks) EXPECT_TRUE(c.passed) << c.name;
}

TEST(CrossValidate, ModerateSizeAllBelowTolerance) {
    CrossValidateOptions o;
    o.max_n = 6;
    const ValidationSummary v = cross_validate(o);
    EXPECT_TRUE(v.passed);
    for (const IdentityCheck& c : v.checks) {
        EXPECT_GT(c.cases, 0U) << c.name;
        EXPECT_LE(c.max_deviation, c.tolerance) << c.name << " worst " << c.worst_case;
    }
}

TEST(CrossValidate, InjectedFaultIsReported) {
    CrossValidateOptions o;
    o.max_n = 4;
    o.inject_fault = true;
    const ValidationSummary v = cross_validate(o);
    EXPECT_FALSE(v.passed);
    const auto broken = std::count_if(v.checks.begin(), v.checks.end(), [](const IdentityCheck& c) { return !c.passed; });
    EXPECT_GE(broken, 3);
    for (const IdentityCheck& c : v.checks)
        if (!c.passed) EXPECT_FALSE(c.worst_case.empty()) << c.name;
}

TEST(CrossValidate, RejectsLargeSizes) {
    CrossValidateOptions o;
    o.max_n = 11;
    EXPECT_THROW(cross_validate(o), DomainError);
}

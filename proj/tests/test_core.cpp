#include "qcd/core.hpp"
#include "qcd/errors.hpp"
#include "qcd/optimize.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace qcd;

namespace {

Matrix random_density(int dim, SeedStream& rng, int rank) {
    Matrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < rank; ++k) g(i, k) = cplx(rng.normal(), rng.normal());
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace

TEST(Entropy, DiagonalQuarter) {
    const std::vector<double> p{0.25, 0.75};
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal(p)), 0.811278124459, 1e-9);
    EXPECT_NEAR(shannon_entropy(p), 0.811278124459, 1e-12);
}

TEST(Entropy, BinaryValues) {
    EXPECT_NEAR(binary_entropy(0.468766), 0.99718, 1e-5);
    EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
    EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_THROW(binary_entropy(-1e-3), DomainError);
    EXPECT_THROW(binary_entropy(1.001), DomainError);
}

TEST(Entropy, PureAndMixedBounds) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::from_pure(PureState::uniform(8))), 0.0, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(16)), 4.0, 1e-12);
}

TEST(Entropy, AdditiveOnProducts) {
    SeedStream rng(7);
    const DensityMatrix a(random_density(2, rng, 2));
    const DensityMatrix b(random_density(4, rng, 3));
    EXPECT_NEAR(von_neumann_entropy(tensor(a, b)), von_neumann_entropy(a) + von_neumann_entropy(b), 1e-10);
}

TEST(RelativeEntropy, KnownValue) {
    const std::vector<double> p{0.7, 0.3}, q{0.5, 0.5};
    EXPECT_NEAR(relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q)), 0.118709, 1e-6);
}

TEST(RelativeEntropy, SupportViolationIsInfinite) {
    const std::vector<double> p{0.5, 0.5}, q{1.0, 0.0};
    const double d = relative_entropy(DensityMatrix::diagonal(p), DensityMatrix::diagonal(q));
    EXPECT_TRUE(std::isinf(d));
    EXPECT_GT(d, 0.0);
}

TEST(RelativeEntropy, SelfIsZeroAndShapeMismatchThrows) {
    SeedStream rng(3);
    const DensityMatrix rho(random_density(4, rng, 4));
    EXPECT_NEAR(relative_entropy(rho, rho), 0.0, 1e-10);
    EXPECT_THROW(relative_entropy(rho, DensityMatrix::maximally_mixed(2)), ShapeError);
}

TEST(DensityMatrix, RejectsInvalidMatrices) {
    Matrix m = Matrix::Identity(2, 2);
    EXPECT_THROW(DensityMatrix{m}, InvalidStateError);  // trace 2
    m = Matrix::Identity(2, 2) * 0.5;
    m(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{m}, InvalidStateError);  // not Hermitian
    EXPECT_THROW(DensityMatrix{Matrix::Zero(2, 3)}, InvalidStateError);
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(PureState{v}, InvalidStateError);
}

TEST(DensityMatrix, NegativeEigenvalueRejectedAtSpectrum) {
    const std::vector<double> p{1.1, -0.1};
    EXPECT_THROW(density_spectrum(DensityMatrix::diagonal(p)), InvalidStateError);
    const std::vector<double> tiny{1.0 + 1e-13, -1e-13};
    const RealVector s = density_spectrum(DensityMatrix::diagonal(tiny));
    EXPECT_GE(s.minCoeff(), 0.0);
}

TEST(PartialTrace, ProductState) {
    SeedStream rng(11);
    const DensityMatrix a(random_density(2, rng, 2));
    const DensityMatrix b(random_density(2, rng, 2));
    const DensityMatrix ab = tensor(a, b);
    const std::vector<int> k0{0}, k1{1};
    EXPECT_LT((partial_trace(ab, k0).matrix() - a.matrix()).norm(), 1e-13);
    EXPECT_LT((partial_trace(ab, k1).matrix() - b.matrix()).norm(), 1e-13);
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = DensityMatrix::from_pure(PureState(bell));
    const std::vector<int> k0{0};
    EXPECT_LT((partial_trace(rho, k0).matrix() - Matrix::Identity(2, 2) * 0.5).norm(), 1e-13);
}

TEST(PartialTrace, MatchesReferenceAndComposes) {
    SeedStream rng(5);
    const int n = 4;
    const DensityMatrix rho(random_density(16, rng, 3));
    for (const std::vector<int>& keep : std::vector<std::vector<int>>{{0}, {2}, {0, 3}, {1, 2, 3}}) {
        const Matrix expect = ref::ptrace(rho.matrix(), n, keep);
        EXPECT_LT((partial_trace(rho, keep).matrix() - expect).norm(), 1e-12);
    }
    // one qubit at a time versus all at once
    const std::vector<int> drop3{0, 1, 2}, then_drop1{0, 2}, joint{0, 2};
    const DensityMatrix step = partial_trace(partial_trace(rho, drop3), then_drop1);
    EXPECT_LT((step.matrix() - partial_trace(rho, joint).matrix()).norm(), 1e-12);
}

TEST(PartialTrace, ReducedFromPureMatchesDensityRoute) {
    SeedStream rng(9);
    Vector v(32);
    for (auto& x : v) x = cplx(rng.normal(), rng.normal());
    v.normalize();
    const PureState psi(v);
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    const std::vector<int> keep{1, 4};
    EXPECT_LT((reduced_from_pure(psi, keep).matrix() - partial_trace(rho, keep).matrix()).norm(), 1e-12);
}

TEST(PartialTrace, InvalidIndexSets) {
    const DensityMatrix rho = DensityMatrix::maximally_mixed(8);
    const std::vector<int> empty{}, out_of_range{3}, unsorted{2, 1}, dup{1, 1}, negative{-1};
    EXPECT_THROW(partial_trace(rho, empty), IndexError);
    EXPECT_THROW(partial_trace(rho, out_of_range), IndexError);
    EXPECT_THROW(partial_trace(rho, unsorted), IndexError);
    EXPECT_THROW(partial_trace(rho, dup), IndexError);
    EXPECT_THROW(partial_trace(rho, negative), IndexError);
    EXPECT_THROW(partial_trace(DensityMatrix::maximally_mixed(3), std::vector<int>{0}), ShapeError);
}

TEST(Eigh, ReconstructsUpTo256) {
    SeedStream rng(13);
    for (int dim : {2, 7, 64, 256}) {
        const Matrix h = random_density(dim, rng, dim);
        const HermitianSpectrum s = eigh(h);
        const Matrix back = s.vectors * s.values.cast<cplx>().asDiagonal() * s.vectors.adjoint();
        EXPECT_LT((back - h).norm(), 1e-12 * dim) << "dim=" << dim;
        for (Eigen::Index i = 1; i < s.values.size(); ++i) EXPECT_LE(s.values(i - 1), s.values(i));
    }
}

TEST(Entropy, MatchesReferenceOnRandomStates) {
    SeedStream rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho(random_density(8, rng, 1 + trial % 8));
        EXPECT_NEAR(von_neumann_entropy(rho), ref::entropy(rho.matrix()), 1e-10);
        const double s = von_neumann_entropy(rho);
        EXPECT_GE(s, -1e-12);
        EXPECT_LE(s, 3.0 + 1e-12);
    }
}

TEST(Pauli, Algebra) {
    const Matrix i2 = Matrix::Identity(2, 2);
    for (int a = 0; a < 3; ++a) EXPECT_LT((pauli(a) * pauli(a) - i2).norm(), 1e-15);
    EXPECT_LT((pauli(0) * pauli(1) - cplx(0, 1) * pauli(2)).norm(), 1e-15);
    EXPECT_THROW(pauli(3), IndexError);
}

TEST(QubitCount, PowersOfTwoOnly) {
    EXPECT_EQ(qubit_count(8), 3);
    EXPECT_THROW(qubit_count(6), ShapeError);
    EXPECT_THROW(qubit_count(0), ShapeError);
}

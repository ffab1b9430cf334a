#include "qcd/errors.hpp"
#include "qcd/measures.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace qcd {

namespace {

// Eigenvalues of rho below this are dropped before forming the Wootters
// matrix; they are at the level of eigensolver rounding for a 4x4 state.
constexpr double kRankCutoff = 1e-14;
constexpr double kRadicandTolerance = 1e-10;

void require_two_qubit(const DensityMatrix& rho, const char* what) {
    if (rho.dim() != 4) throw ShapeError(std::string(what) + ": expects a 4x4 two-qubit state");
}

void require_single_solution(const GroverConfig& cfg, const char* what) {
    if (cfg.j != 1) throw UnsupportedStructureError(std::string(what) + ": closed form requires j = 1");
}

// Determinant of the rank-2 block that carries the k-qubit reduced state:
// (2^k - 1)(2^(n-k) - 1) b^2 (a - b)^2. Equal to lambda_+ lambda_- with
// lambda_+ + lambda_- = 1.
double reduced_block_determinant(const GroverConfig& cfg, const SymmetricGAState& s, int k) {
    const double kept = std::ldexp(1.0, k) - 1.0;
    const double traced = std::ldexp(1.0, cfg.n - k) - 1.0;
    const double diff = s.a - s.b;
    return kept * traced * s.b * s.b * diff * diff;
}

}  // namespace

double concurrence_two_qubit(const DensityMatrix& rho2) {
    require_two_qubit(rho2, "concurrence_two_qubit");
    // lambda_i are the singular values of tau = W^T (s_y x s_y) W for any
    // decomposition rho = W W^dagger; this avoids square roots of eigenvalues
    // that are zero up to rounding.
    const HermitianSpectrum eig = eigh(rho2.matrix());
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (eig.values(i) < -tol::kNegativeEigenvalue)
            throw InvalidStateError("concurrence_two_qubit: state is not positive semidefinite");
        if (eig.values(i) > kRankCutoff) support.push_back(i);
    }
    Matrix W(4, static_cast<Eigen::Index>(support.size()));
    for (std::size_t c = 0; c < support.size(); ++c)
        W.col(static_cast<Eigen::Index>(c)) =
            std::sqrt(eig.values(support[c])) * eig.vectors.col(support[c]);

    Matrix flip = Matrix::Zero(4, 4);
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Matrix tau = W.transpose() * flip * W;
    Eigen::JacobiSVD<Matrix> svd(tau);
    std::vector<double> lambda(4, 0.0);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        lambda[static_cast<std::size_t>(i)] = svd.singularValues()(i);
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

double concurrence_two_qubit_ga(const GroverConfig& cfg, const SymmetricGAState& s) {
    require_single_solution(cfg, "concurrence_two_qubit_ga");
    return 2.0 * std::abs(s.a * s.b - s.b * s.b);
}

double concurrence_two_qubit_ga(const GroverConfig& cfg, std::int64_t r) {
    return concurrence_two_qubit_ga(cfg, state_at(cfg, r));
}

double reduced_purity_ga(const GroverConfig& cfg, const SymmetricGAState& s, int k) {
    require_single_solution(cfg, "reduced_purity_ga");
    if (k < 1 || k >= cfg.n) throw IndexError("reduced_purity_ga: need 1 <= k < n");
    return 1.0 - 2.0 * reduced_block_determinant(cfg, s, k);
}

double reduced_entropy_ga(const GroverConfig& cfg, const SymmetricGAState& s, int k) {
    // Diagonalizes the 2x2 compression of the reduced state onto
    // span{|0>, uniform over |m != 0>}.
    const ReducedBlock blk = reduced_block(cfg, s, k);
    const double rest = blk.dim - 1.0;
    Eigen::Matrix2d c;
    c << blk.corner, std::sqrt(rest) * blk.edge, std::sqrt(rest) * blk.edge, rest * blk.bulk;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(c, Eigen::EigenvaluesOnly);
    const Eigen::Vector2d ev = solver.eigenvalues();
    for (int i = 0; i < 2; ++i)
        if (ev(i) < -tol::kNegativeEigenvalue)
            throw NumericalConsistencyError("reduced_entropy_ga: negative eigenvalue in reduced block");
    const double p[2] = {std::max(ev(0), 0.0), std::max(ev(1), 0.0)};
    return shannon_entropy(p);
}

double concurrence_multiqubit_ga(const GroverConfig& cfg, const SymmetricGAState& s) {
    require_single_solution(cfg, "concurrence_multiqubit_ga");
    if (cfg.n < 2) throw ShapeError("concurrence_multiqubit_ga: requires n >= 2");
    // (N - 2) = sum_{k=1}^{n-1} C(n,k), so the radicand is
    // sum_k C(n,k) (1 - Tr rho_k^2).
    double radicand = 0.0;
    for (int k = 1; k < cfg.n; ++k) radicand += binomial(cfg.n, k) * (1.0 - reduced_purity_ga(cfg, s, k));
    if (radicand < -kRadicandTolerance)
        throw NumericalConsistencyError("concurrence_multiqubit_ga: negative radicand " + std::to_string(radicand));
    return 2.0 / std::sqrt(cfg.N) * std::sqrt(std::max(radicand, 0.0));
}

double concurrence_multiqubit_ga(const GroverConfig& cfg, std::int64_t r) {
    return concurrence_multiqubit_ga(cfg, state_at(cfg, r));
}

double concurrence_multiqubit_expanded(const GroverConfig& cfg, const SymmetricGAState& s) {
    require_single_solution(cfg, "concurrence_multiqubit_expanded");
    // Terms of size ~N cancel, and the polynomial is only valid on
    // a^2 + (N-1) b^2 = 1. A normalization residue of one double ulp already
    // moves E_n by ~1e-8 at n = 24, so a and b are rebuilt from alpha_r in
    // extended precision.
    using ld = long double;
    const ld n = cfg.n;
    const ld p2 = std::pow(2.0L, n), p3 = std::pow(3.0L, n), p4 = std::pow(4.0L, n), p8 = std::pow(8.0L, n);
    const ld angle = s.alpha_r;
    const ld a = std::sin(angle), b = std::cos(angle) / std::sqrt(p2 - 1);
    const ld a2 = a * a, b2 = b * b;
    const ld radicand = p2 - 2 - (4 * p3 - 8 * p2 + 4) * a2 * b2 - (p8 + 4 * p3 - 6 * p4 + 3 * p2 - 2) * b2 * b2 -
                        (p2 - 2) * a2 * a2 - 4 * (p4 - 2 * p3 + p2) * a * b2 * b;
    if (radicand < -kRadicandTolerance * std::max(1.0L, p2))
        throw NumericalConsistencyError("concurrence_multiqubit_expanded: negative radicand");
    return static_cast<double>(2 / std::sqrt(p2) * std::sqrt(std::max(radicand, 0.0L)));
}

}  // namespace qcd

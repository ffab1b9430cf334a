#include "qcd/errors.hpp"
#include "qcd/measures.hpp"
#include "qcd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcd {

namespace {

constexpr int kSvetlichnyParams = 12;

Vec3 unit_vector(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double contract(const CorrelationTensor& T, const Vec3& x, const Vec3& y, const Vec3& z) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += T(i, j, k) * x(i) * y(j) * z(k);
    return s;
}

}  // namespace

Eigen::Matrix3d CorrelationTensor::matrix() const {
    if (order != 2) throw ShapeError("CorrelationTensor::matrix: order-2 tensor expected");
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
    return m;
}

CorrelationTensor correlation_tensor_2(const DensityMatrix& rho2) {
    if (rho2.dim() != 4) throw ShapeError("correlation_tensor_2: expects a 4x4 state");
    CorrelationTensor T;
    T.order = 2;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            T.entries[static_cast<std::size_t>(3 * i + j)] =
                (rho2.matrix() * kron(pauli(i), pauli(j))).trace().real();
    return T;
}

CorrelationTensor correlation_tensor_3(const DensityMatrix& rho3) {
    if (rho3.dim() != 8) throw ShapeError("correlation_tensor_3: expects an 8x8 state");
    CorrelationTensor T;
    T.order = 3;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Matrix ij = kron(pauli(i), pauli(j));
            for (int k = 0; k < 3; ++k)
                T.entries[static_cast<std::size_t>(9 * i + 3 * j + k)] =
                    (rho3.matrix() * kron(ij, pauli(k))).trace().real();
        }
    return T;
}

double chsh_M(const DensityMatrix& rho2) {
    const Eigen::Matrix3d T = correlation_tensor_2(rho2).matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(T.transpose() * T, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d u = solver.eigenvalues();  // ascending
    return std::max(u(1) + u(2), 0.0);
}

ChshClosedForm chsh_closed_form(const TwoQubitOmega& w) {
    const double o0 = w.omega0, o1 = w.omega1, o2 = w.omega2;
    const double disc = o0 * o0 + 20.0 * o1 * o1 + 25.0 * o2 * o2 - 4.0 * o0 * o1 - 6.0 * o0 * o2 - 20.0 * o1 * o2;
    const double root = std::sqrt(std::max(disc, 0.0));
    ChshClosedForm out;
    out.lambda1 = 2.0 * o2 - 2.0 * o1;
    out.lambda2 = 0.5 * (o0 + 2.0 * o1 + o2 - root);
    out.lambda3 = 0.5 * (o0 + 2.0 * o1 + o2 + root);
    out.M = out.lambda1 <= out.lambda2 ? out.lambda2 * out.lambda2 + out.lambda3 * out.lambda3
                                       : out.lambda1 * out.lambda1 + out.lambda3 * out.lambda3;
    return out;
}

double chsh_M_ga(const GroverConfig& cfg, const SymmetricGAState& s) {
    return chsh_closed_form(two_qubit_omegas(cfg, s)).M;
}

double chsh_M_ga(const GroverConfig& cfg, std::int64_t r) { return chsh_M_ga(cfg, state_at(cfg, r)); }

SvetlichnySettings svetlichny_settings(std::span<const double> x) {
    if (x.size() != kSvetlichnyParams) throw ShapeError("svetlichny_settings: expects 12 angles");
    SvetlichnySettings s;
    s.a = unit_vector(x[0], x[1]);
    s.a_prime = unit_vector(x[2], x[3]);
    s.c = unit_vector(x[4], x[5]);
    s.c_prime = unit_vector(x[6], x[7]);
    s.d = unit_vector(x[8], x[9]);
    // d' rotates by x[10] inside the plane orthogonal to d
    const Vec3 e_theta(std::cos(x[8]) * std::cos(x[9]), std::cos(x[8]) * std::sin(x[9]), -std::sin(x[8]));
    const Vec3 e_phi(-std::sin(x[9]), std::cos(x[9]), 0.0);
    s.d_prime = std::cos(x[10]) * e_theta + std::sin(x[10]) * e_phi;
    s.t = x[11];
    return s;
}

double svetlichny_expectation(const CorrelationTensor& T, const SvetlichnySettings& s) {
    if (T.order != 3) throw ShapeError("svetlichny_expectation: order-3 tensor expected");
    const double ct = std::cos(s.t), st = std::sin(s.t);
    const double v = ct * contract(T, s.a, s.d, s.c) + st * contract(T, s.a, s.d_prime, s.c_prime) +
                     st * contract(T, s.a_prime, s.d_prime, s.c) - ct * contract(T, s.a_prime, s.d, s.c_prime);
    return 2.0 * std::abs(v);
}

SvetlichnyResult svetlichny_max(const CorrelationTensor& T, const SvetlichnyOptions& opts) {
    if (opts.restarts < 1) throw DomainError("svetlichny_max: need at least one restart");
    const Objective f = [&T](std::span<const double> x) {
        return -svetlichny_expectation(T, svetlichny_settings(x));
    };
    NelderMeadOptions coarse;
    coarse.initial_step = 0.5;
    coarse.ftol = opts.ftol;
    coarse.max_evals = opts.max_evals;
    NelderMeadOptions polish = coarse;
    polish.initial_step = 0.05;

    SvetlichnyResult best;
    best.value = -1.0;
    for (int i = 0; i < opts.restarts; ++i) {
        SeedStream rng(mix_seed(opts.seed, static_cast<std::uint64_t>(i)));
        std::vector<double> x0(kSvetlichnyParams);
        for (double& v : x0) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
        NelderMeadResult res = nelder_mead(f, std::move(x0), coarse);
        // one re-seeded simplex around the first optimum escapes most stalls
        const NelderMeadResult again = nelder_mead(f, res.x, polish);
        const long evals = res.evals + again.evals;
        if (again.value <= res.value) res = again;
        best.evals += evals;
        ++best.restarts;
        if (-res.value > best.value) {
            best.value = -res.value;
            best.settings = svetlichny_settings(res.x);
            best.converged = res.converged;
        }
    }
    return best;
}

SvetlichnyResult svetlichny_max(const DensityMatrix& rho3, const SvetlichnyOptions& opts) {
    return svetlichny_max(correlation_tensor_3(rho3), opts);
}

}  // namespace qcd

#include "qcd/grover.hpp"

#include "qcd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qcd {

namespace {

constexpr int kMaxQubits = 1023;  // 2^n must stay a finite double
constexpr double kTieWindow = 1e-9;

void require_single_solution(const GroverConfig& cfg, const char* what) {
    if (!cfg.single_solution_at_zero())
        throw UnsupportedStructureError(std::string(what) +
                                        ": structured form needs a single solution at index 0; "
                                        "use the brute-force engine");
}

}  // namespace

GroverConfig GroverConfig::make(int n, std::uint64_t j) {
    if (j == 0) throw DomainError("solution count j must be >= 1");
    std::vector<std::uint64_t> sol(j);
    for (std::uint64_t i = 0; i < j; ++i) sol[i] = i;
    return with_solutions(n, std::move(sol));
}

GroverConfig GroverConfig::with_solutions(int n, std::vector<std::uint64_t> solutions) {
    if (n < 1 || n > kMaxQubits)
        throw DomainError("qubit count n=" + std::to_string(n) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]");
    GroverConfig cfg;
    cfg.n = n;
    cfg.N = std::ldexp(1.0, n);
    if (n <= 52) cfg.N_exact = std::uint64_t{1} << n;
    std::sort(solutions.begin(), solutions.end());
    if (solutions.empty()) throw DomainError("solution set is empty");
    if (std::adjacent_find(solutions.begin(), solutions.end()) != solutions.end())
        throw DomainError("solution indices must be distinct");
    if (n < 64 && solutions.back() >= (std::uint64_t{1} << n))
        throw DomainError("solution index " + std::to_string(solutions.back()) + " >= N");
    cfg.j = solutions.size();
    if (static_cast<double>(cfg.j) >= cfg.N) throw DomainError("solution count j must be < N");
    cfg.solutions = std::move(solutions);
    return cfg;
}

bool GroverConfig::is_solution(std::uint64_t index) const {
    return std::binary_search(solutions.begin(), solutions.end(), index);
}

double rotation_angle(const GroverConfig& cfg) {
    return 2.0 * std::atan(std::sqrt(static_cast<double>(cfg.j) / cfg.nonsolutions()));
}

SymmetricGAState state_at(const GroverConfig& cfg, std::int64_t r) {
    if (r < 0) throw DomainError("iteration count must be >= 0");
    SymmetricGAState s;
    s.r = r;
    s.alpha = rotation_angle(cfg);
    s.alpha_r = (static_cast<double>(r) + 0.5) * s.alpha;
    s.a = std::sin(s.alpha_r);
    s.b = std::cos(s.alpha_r) / std::sqrt(cfg.nonsolutions());
    return s;
}

double success_probability(const GroverConfig& cfg, std::int64_t r) {
    const double a = state_at(cfg, r).a;
    return a * a;
}

OptimalIterations optimal_iterations(const GroverConfig& cfg) {
    const double alpha = rotation_angle(cfg);
    OptimalIterations out;
    out.continuous = (std::numbers::pi - alpha) / (2.0 * alpha);
    const double lower = std::floor(out.continuous);
    const double frac = out.continuous - lower;
    if (std::abs(frac - 0.5) < kTieWindow) {
        out.tie = true;
        out.value = static_cast<std::int64_t>(lower);
    } else {
        out.value = static_cast<std::int64_t>(std::llround(out.continuous));
    }
    return out;
}

PureState state_vector(const GroverConfig& cfg, std::int64_t r, int max_qubits) {
    if (cfg.n > max_qubits)
        throw CapacityError("dense state of " + std::to_string(cfg.n) + " qubits exceeds cap of " +
                            std::to_string(max_qubits) + "; use reduced_density");
    const SymmetricGAState s = state_at(cfg, r);
    const double sol_amp = s.a / std::sqrt(static_cast<double>(cfg.j));
    const auto dim = static_cast<Eigen::Index>(*cfg.N_exact);
    Vector v = Vector::Constant(dim, cplx(s.b, 0.0));
    for (std::uint64_t x : cfg.solutions) v(static_cast<Eigen::Index>(x)) = sol_amp;
    // the closed form is normalized analytically; remove the last-ulp drift
    v /= v.norm();
    return PureState(std::move(v));
}

DensityMatrix full_density(const GroverConfig& cfg, std::int64_t r, int max_qubits) {
    if (cfg.n > max_qubits)
        throw CapacityError("full density of " + std::to_string(cfg.n) + " qubits exceeds cap of " +
                            std::to_string(max_qubits) + "; use reduced_density");
    return DensityMatrix::from_pure(state_vector(cfg, r, max_qubits));
}

ReducedBlock reduced_block(const GroverConfig& cfg, const SymmetricGAState& s, int k) {
    require_single_solution(cfg, "reduced_density");
    if (k < 1 || k >= cfg.n)
        throw IndexError("reduced_density: kept-qubit count k=" + std::to_string(k) +
                         " must satisfy 1 <= k < n=" + std::to_string(cfg.n));
    const double traced_dim = std::ldexp(1.0, cfg.n - k);
    const double b2 = s.b * s.b;
    ReducedBlock blk;
    blk.k = k;
    blk.dim = std::ldexp(1.0, k);
    blk.corner = s.a * s.a + (traced_dim - 1.0) * b2;
    blk.edge = s.a * s.b + (traced_dim - 1.0) * b2;
    blk.bulk = traced_dim * b2;
    return blk;
}

DensityMatrix reduced_density(const GroverConfig& cfg, const SymmetricGAState& s, int k) {
    if (k > kDenseQubitCap)
        throw CapacityError("reduced_density: k=" + std::to_string(k) + " exceeds dense cap");
    const ReducedBlock blk = reduced_block(cfg, s, k);
    const auto d = static_cast<Eigen::Index>(blk.dim);
    Matrix m = Matrix::Constant(d, d, cplx(blk.bulk, 0.0));
    m.row(0).setConstant(blk.edge);
    m.col(0).setConstant(blk.edge);
    m(0, 0) = blk.corner;
    return DensityMatrix(std::move(m));
}

DensityMatrix reduced_density(const GroverConfig& cfg, std::int64_t r, int k) {
    return reduced_density(cfg, state_at(cfg, r), k);
}

TwoQubitOmega two_qubit_omegas(const GroverConfig& cfg, const SymmetricGAState& s) {
    if (cfg.j != 1) throw UnsupportedStructureError("two_qubit_omegas: requires j = 1");
    if (cfg.n < 2) throw ShapeError("two_qubit_omegas: requires n >= 2");
    const double quarter = cfg.N / 4.0;
    const double b2 = s.b * s.b;
    return {s.a * s.a + (quarter - 1.0) * b2, s.a * s.b + (quarter - 1.0) * b2, quarter * b2};
}

TwoQubitOmega two_qubit_omegas(const GroverConfig& cfg, std::int64_t r) {
    return two_qubit_omegas(cfg, state_at(cfg, r));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(c);
}

}  // namespace qcd

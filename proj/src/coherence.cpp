#include "qcd/errors.hpp"
#include "qcd/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcd {

namespace {

std::vector<double> populations(const Matrix& m) {
    std::vector<double> p(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) p[static_cast<std::size_t>(i)] = m(i, i).real();
    return p;
}

}  // namespace

double coherence_relative_entropy(const DensityMatrix& rho) {
    const std::vector<double> diag = populations(rho.matrix());
    const double c = shannon_entropy(diag) - von_neumann_entropy(rho);
    return std::max(c, 0.0);
}

double coherence_relative_entropy(const PureState& psi) {
    std::vector<double> diag(static_cast<std::size_t>(psi.dim()));
    for (Eigen::Index i = 0; i < psi.dim(); ++i) diag[static_cast<std::size_t>(i)] = std::norm(psi[i]);
    return shannon_entropy(diag);
}

double coherence_l1(const DensityMatrix& rho) {
    const Matrix& m = rho.matrix();
    // Neumaier summation: tens of thousands of small terms feed a total of
    // order dim, and the naive running sum drifts by ~1e-10 at dim 256.
    double s = 0.0, comp = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i == j) continue;
            const double x = std::abs(m(i, j));
            const double t = s + x;
            comp += std::abs(s) >= x ? (s - t) + x : (x - t) + s;
            s = t;
        }
    return s + comp;
}

double coherence_r_ga(const GroverConfig& cfg, const SymmetricGAState& s) {
    // log2 N minus the divergence from uniform, so that r = 0 lands on log2 N
    // exactly instead of summing two logs with independent rounding
    const double p = s.a * s.a;
    const double q = 1.0 - p;
    const double N = cfg.N;
    double d = 0.0;
    if (p > 0.0) d += p * std::log1p(p * N / static_cast<double>(cfg.j) - 1.0);
    if (q > 0.0) d += q * std::log1p(q * N / cfg.nonsolutions() - 1.0);
    const double log2N = std::log2(N);
    return std::clamp(log2N - std::max(d, 0.0) / std::numbers::ln2, 0.0, log2N);
}

double coherence_r_ga(const GroverConfig& cfg, std::int64_t r) { return coherence_r_ga(cfg, state_at(cfg, r)); }

double coherence_l1_ga(const GroverConfig& cfg, const SymmetricGAState& s) {
    const double sum = std::sqrt(static_cast<double>(cfg.j)) * std::abs(std::sin(s.alpha_r)) +
                       std::sqrt(cfg.nonsolutions()) * std::abs(std::cos(s.alpha_r));
    return std::max(sum * sum - 1.0, 0.0);
}

double coherence_l1_ga(const GroverConfig& cfg, std::int64_t r) { return coherence_l1_ga(cfg, state_at(cfg, r)); }

bool in_asymptotic_regime(const GroverConfig& cfg, const RegimeOptions& regime) {
    return static_cast<double>(cfg.j) / cfg.N <= regime.max_solution_ratio && cfg.N >= regime.min_database;
}

CoherenceAsymptotics coherence_asymptotics(const GroverConfig& cfg, double P, const RegimeOptions& regime) {
    if (!(P >= 0.0 && P <= 1.0)) throw DomainError("coherence_asymptotics: P must lie in [0,1]");
    CoherenceAsymptotics out;
    out.c_r = -P * std::log2(cfg.N / static_cast<double>(cfg.j)) + std::log2(cfg.N);
    out.c_l1 = -cfg.N * P + cfg.N;
    out.in_regime = in_asymptotic_regime(cfg, regime);
    if (!out.in_regime) out.warning = "outside the j << N, N >> 1 regime; linear laws are approximate";
    return out;
}

CostPerformance cost_performance(const GroverConfig& cfg, CoherenceMeasure measure, const RegimeOptions& regime) {
    CostPerformance out;
    out.value = measure == CoherenceMeasure::relative_entropy
                    ? 1.0 / std::log2(cfg.N / static_cast<double>(cfg.j))
                    : 1.0 / cfg.N;
    out.in_regime = in_asymptotic_regime(cfg, regime);
    if (!out.in_regime) out.warning = "outside the j << N, N >> 1 regime; cost performance is approximate";
    return out;
}

CoherenceReport coherence_report(const GroverConfig& cfg, std::int64_t r) {
    const SymmetricGAState s = state_at(cfg, r);
    CoherenceReport rep;
    rep.success_probability = s.a * s.a;
    rep.c_r = coherence_r_ga(cfg, s);
    rep.c_l1 = coherence_l1_ga(cfg, s);
    const CoherenceAsymptotics asym = coherence_asymptotics(cfg, rep.success_probability);
    rep.asymptotic_c_r = asym.c_r;
    rep.asymptotic_c_l1 = asym.c_l1;
    return rep;
}

}  // namespace qcd

#include "qcd/oracle.hpp"

#include "qcd/errors.hpp"
#include "qcd/optimize.hpp"
#include "qcd/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace qcd {

namespace {

// Dense projector routes for the coherences stay cheap up to 256 x 256.
constexpr std::size_t kProjectorDimLimit = 256;

void check_capacity(int n, int max_qubits) {
    if (n < 1) throw ShapeError("StateVector: need at least one qubit");
    if (n > max_qubits)
        throw CapacityError("StateVector: n = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(max_qubits) + " qubits");
}

std::vector<int> qubits_of(unsigned mask, int n) {
    std::vector<int> q;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) q.push_back(i);
    return q;
}

// Above this many qubits the O(N^2) minor sum per bipartition gets slow and
// 1 - Tr rho^2 falls back to the direct purity.
constexpr int kMinorSumQubitLimit = 10;

struct SubsetData {
    std::vector<double> entropy;     // indexed by qubit mask
    std::vector<double> mixedness;   // 1 - Tr rho^2
};

// psi reshaped to (kept qubits) x (traced qubits).
Matrix bipartition_block(const PureState& psi, int n, unsigned mask) {
    const int k = std::popcount(mask);
    Matrix block(Eigen::Index{1} << k, Eigen::Index{1} << (n - k));
    for (Eigen::Index x = 0; x < psi.dim(); ++x) {
        Eigen::Index row = 0, col = 0;
        for (int q = 0; q < n; ++q) {
            const Eigen::Index bit = (x >> (n - 1 - q)) & 1;
            if (mask & (1u << q)) row = (row << 1) | bit;
            else col = (col << 1) | bit;
        }
        block(row, col) = psi[x];
    }
    return block;
}

// 1 - Tr rho^2 = 2 sum_{i<j, s<t} |B_is B_jt - B_it B_js|^2 for unit-norm B.
// A sum of squares, so it does not cancel down to rounding noise near a
// product state the way 1 - ||B B^dagger||^2 does.
double mixedness_from_minors(const Matrix& B) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < B.rows(); ++i)
        for (Eigen::Index j = i + 1; j < B.rows(); ++j)
            for (Eigen::Index a = 0; a < B.cols(); ++a)
                for (Eigen::Index b = a + 1; b < B.cols(); ++b)
                    s += std::norm(B(i, a) * B(j, b) - B(i, b) * B(j, a));
    return 2.0 * s;
}

// Every bipartition of a pure state: both sides share a spectrum, so only
// the smaller side is diagonalized.
SubsetData all_subsets(const PureState& psi, int n, bool want_entropy) {
    const unsigned full = (1u << n) - 1u;
    SubsetData d;
    d.entropy.assign(full + 1, 0.0);
    d.mixedness.assign(full + 1, 0.0);
    for (unsigned mask = 1; mask < full; ++mask) {
        const unsigned comp = full ^ mask;
        const int size = std::popcount(mask);
        const int csize = n - size;
        if (size > csize || (size == csize && mask > comp)) continue;
        const std::vector<int> keep = qubits_of(mask, n);
        const DensityMatrix rho = reduced_from_pure(psi, keep);
        const double mix = n <= kMinorSumQubitLimit ? mixedness_from_minors(bipartition_block(psi, n, mask))
                                                    : 1.0 - rho.matrix().squaredNorm();
        d.mixedness[mask] = d.mixedness[comp] = mix;
        if (want_entropy) d.entropy[mask] = d.entropy[comp] = von_neumann_entropy(rho);
    }
    return d;
}

// min over set partitions of the qubits into at least two blocks of the
// summed block entropies.
double min_partition_entropy(const std::vector<double>& S, int n) {
    const unsigned full = (1u << n) - 1u;
    std::vector<double> g(full + 1, std::numeric_limits<double>::infinity());
    g[0] = 0.0;
    for (unsigned mask = 1; mask <= full; ++mask) {
        const unsigned low = mask & (~mask + 1u);
        const unsigned rest = mask ^ low;
        // enumerate blocks containing the lowest qubit
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            const unsigned block = sub | low;
            g[mask] = std::min(g[mask], S[block] + g[mask ^ block]);
            if (sub == 0) break;
        }
    }
    double best = std::numeric_limits<double>::infinity();
    const unsigned rest = full ^ 1u;
    for (unsigned sub = rest;; sub = (sub - 1) & rest) {
        const unsigned block = sub | 1u;
        if (block != full) best = std::min(best, S[block] + g[full ^ block]);
        if (sub == 0) break;
    }
    return best;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

StateVector::StateVector(int n, std::vector<cplx> amplitudes, int max_qubits) : n_(n), amps_(std::move(amplitudes)) {
    check_capacity(n, max_qubits);
    if (amps_.size() != (std::size_t{1} << n)) throw ShapeError("StateVector: expected 2^n amplitudes");
    if (std::abs(norm2() - 1.0) > tol::kNorm) throw InvalidStateError("StateVector: amplitudes are not normalized");
}

StateVector StateVector::uniform(int n, int max_qubits) {
    check_capacity(n, max_qubits);
    const std::size_t N = std::size_t{1} << n;
    return StateVector(n, std::vector<cplx>(N, cplx(1.0 / std::sqrt(static_cast<double>(N)), 0.0)), max_qubits);
}

double StateVector::norm2() const {
    double s = 0.0;
    for (const cplx& z : amps_) s += std::norm(z);
    return s;
}

double StateVector::probability_of(std::span<const std::uint64_t> indices) const {
    double s = 0.0;
    for (std::uint64_t i : indices) {
        if (i >= amps_.size()) throw IndexError("StateVector: index out of range");
        s += std::norm(amps_[i]);
    }
    return s;
}

PureState StateVector::to_pure() const {
    Vector v(static_cast<Eigen::Index>(amps_.size()));
    for (std::size_t i = 0; i < amps_.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps_[i];
    return PureState(std::move(v));
}

StateVector grover_step(const StateVector& sv, std::span<const std::uint64_t> solutions) {
    if (solutions.empty()) throw DomainError("grover_step: empty solution set");
    StateVector out;
    out.n_ = sv.n_;
    out.amps_ = sv.amps_;
    for (std::uint64_t i : solutions) {
        if (i >= out.amps_.size()) throw IndexError("grover_step: solution index out of range");
        out.amps_[i] = -out.amps_[i];
    }
    cplx mean = 0.0;
    for (const cplx& z : out.amps_) mean += z;
    mean /= static_cast<double>(out.amps_.size());
    for (cplx& z : out.amps_) z = 2.0 * mean - z;
    return out;
}

StateVector evolve(const GroverConfig& cfg, std::int64_t r, int max_qubits) {
    if (r < 0) throw DomainError("evolve: negative iteration count");
    StateVector sv = StateVector::uniform(cfg.n, max_qubits);
    for (std::int64_t i = 0; i < r; ++i) sv = grover_step(sv, cfg.solutions);
    return sv;
}

std::int64_t oracle_peak_iteration(const GroverConfig& cfg, std::int64_t r_limit) {
    if (r_limit < 0) throw DomainError("oracle_peak_iteration: negative limit");
    StateVector sv = StateVector::uniform(cfg.n);
    std::int64_t best_r = 0;
    double best_p = sv.probability_of(cfg.solutions);
    for (std::int64_t r = 1; r <= r_limit; ++r) {
        sv = grover_step(sv, cfg.solutions);
        const double p = sv.probability_of(cfg.solutions);
        if (p > best_p) {
            best_p = p;
            best_r = r;
        }
    }
    return best_r;
}

std::string_view measure_name(Measure m) {
    switch (m) {
        case Measure::P: return "P";
        case Measure::Cr: return "C_r";
        case Measure::Cl1: return "C_l1";
        case Measure::E2: return "E2";
        case Measure::En: return "En";
        case Measure::D2: return "D2";
        case Measure::Dn: return "Dn";
        case Measure::M: return "M";
        case Measure::Svetlichny: return "Svetlichny";
    }
    return "?";
}

Measure parse_measure(std::string_view token) {
    const std::string t = lower(token);
    for (Measure m : kAllMeasures)
        if (t == lower(measure_name(m))) return m;
    if (t == "cr") return Measure::Cr;
    if (t == "cl1" || t == "l1") return Measure::Cl1;
    if (t == "sv") return Measure::Svetlichny;
    throw ParseError("unknown measure '" + std::string(token) + "'");
}

MeasureReport measure_state(const StateVector& sv, std::span<const std::uint64_t> solutions,
                            std::span<const Measure> measures, const OracleOptions& opts) {
    auto wants = [&](Measure m) { return std::find(measures.begin(), measures.end(), m) != measures.end(); };
    MeasureReport rep;
    auto set = [&](Measure m, double v) { rep.values[static_cast<std::size_t>(m)] = v; };
    const int n = sv.n();
    const PureState psi = sv.to_pure();

    if (wants(Measure::P)) set(Measure::P, sv.probability_of(solutions));
    if (wants(Measure::Cr)) {
        set(Measure::Cr, sv.dim() <= kProjectorDimLimit ? coherence_relative_entropy(DensityMatrix::from_pure(psi))
                                                        : coherence_relative_entropy(psi));
    }
    if (wants(Measure::Cl1)) {
        if (sv.dim() <= kProjectorDimLimit) {
            set(Measure::Cl1, coherence_l1(DensityMatrix::from_pure(psi)));
        } else {
            // sum_{i != j} |psi_i||psi_j| = (sum_i |psi_i|)^2 - sum_i |psi_i|^2
            double s = 0.0;
            for (const cplx& z : sv.amplitudes()) s += std::abs(z);
            set(Measure::Cl1, std::max(s * s - sv.norm2(), 0.0));
        }
    }
    if (n >= 2 && (wants(Measure::E2) || wants(Measure::D2) || wants(Measure::M))) {
        const int pair[] = {0, 1};
        const DensityMatrix rho2 = reduced_from_pure(psi, pair);
        if (wants(Measure::E2)) set(Measure::E2, concurrence_two_qubit(rho2));
        if (wants(Measure::D2)) set(Measure::D2, pairwise_discord(rho2, opts.discord).value);
        if (wants(Measure::M)) set(Measure::M, chsh_M(rho2));
    }
    if (n >= 2 && (wants(Measure::En) || wants(Measure::Dn))) {
        const SubsetData d = all_subsets(psi, n, wants(Measure::Dn));
        if (wants(Measure::En)) {
            const double N = static_cast<double>(sv.dim());
            // (N - 2) - sum_S Tr rho_S^2 over the N - 2 proper nonempty subsets
            double radicand = 0.0;
            const unsigned full = (1u << n) - 1u;
            for (unsigned mask = 1; mask < full; ++mask) radicand += d.mixedness[mask];
            set(Measure::En, 2.0 / std::sqrt(N) * std::sqrt(std::max(radicand, 0.0)));
        }
        if (wants(Measure::Dn)) set(Measure::Dn, 0.5 * min_partition_entropy(d.entropy, n));
    }
    if (n >= 3 && wants(Measure::Svetlichny)) {
        const int triple[] = {0, 1, 2};
        set(Measure::Svetlichny, svetlichny_max(reduced_from_pure(psi, triple), opts.svetlichny).value);
    }
    return rep;
}

MeasureReport run_and_measure(const GroverConfig& cfg, std::int64_t r, std::span<const Measure> measures,
                              const OracleOptions& opts) {
    MeasureReport rep = measure_state(evolve(cfg, r, opts.max_qubits), cfg.solutions, measures, opts);
    rep.r = r;
    return rep;
}

namespace {

struct CaseKey {
    int n;
    std::uint64_t j;
    std::int64_t r;
    std::size_t config;
};

struct Deviation {
    std::size_t check;
    double value;  // +inf when the closed form threw
};

enum CheckId : std::size_t { kP, kCr, kCl1, kE2, kEn, kM, kDn, kS1, kCheckCount };

constexpr const char* kCheckNames[kCheckCount] = {
    "success_probability", "coherence_r", "coherence_l1", "concurrence_pair",
    "concurrence_multiqubit", "chsh_M", "genuine_discord_partitions", "genuine_discord_single_qubit"};
constexpr double kCheckTolerance[kCheckCount] = {1e-12, 1e-10, 1e-10, 1e-8, 1e-8, 1e-10, 1e-8, 1e-10};

std::vector<std::uint64_t> seeded_solutions(std::uint64_t seed, int n, std::uint64_t j) {
    SeedStream rng(mix_seed(seed, static_cast<std::uint64_t>(n) * 1024u + j));
    const std::uint64_t N = std::uint64_t{1} << n;
    std::set<std::uint64_t> picked;
    while (picked.size() < j) picked.insert(rng.next() % N);
    return {picked.begin(), picked.end()};
}

}  // namespace

ValidationSummary cross_validate(const CrossValidateOptions& opts) {
    if (opts.max_n > 10) throw DomainError("cross_validate: max_n must be at most 10");

    std::vector<GroverConfig> configs;
    for (int n = 2; n <= opts.max_n; ++n)
        for (std::uint64_t j : opts.j_set) {
            if (j < 1 || j >= (std::uint64_t{1} << n)) continue;
            configs.push_back(j == 1 ? GroverConfig::make(n, 1)
                                     : GroverConfig::with_solutions(n, seeded_solutions(opts.seed, n, j)));
        }
    std::vector<CaseKey> cases;
    for (std::size_t c = 0; c < configs.size(); ++c) {
        const std::int64_t r_opt = optimal_iterations(configs[c]).value;
        for (std::int64_t r = 0; r <= r_opt; ++r) cases.push_back({configs[c].n, configs[c].j, r, c});
    }

    const auto results = parallel_map(cases.size(), [&](std::size_t i) {
        const CaseKey& key = cases[i];
        const GroverConfig& cfg = configs[key.config];
        const bool single = cfg.single_solution_at_zero();
        std::vector<Measure> wanted{Measure::P, Measure::Cr, Measure::Cl1};
        if (single) wanted.insert(wanted.end(), {Measure::E2, Measure::En, Measure::M, Measure::Dn});

        OracleOptions oo;
        oo.discord = opts.discord;
        const StateVector sv = evolve(cfg, key.r);
        const MeasureReport rep = measure_state(sv, cfg.solutions, wanted, oo);

        SymmetricGAState s = state_at(cfg, key.r);
        if (opts.inject_fault) s.a += 1e-3;

        std::vector<Deviation> out;
        auto compare = [&](std::size_t id, double oracle, auto&& closed) {
            double dev;
            try {
                dev = std::abs(closed() - oracle);
            } catch (const Error&) {
                dev = std::numeric_limits<double>::infinity();
            }
            if (std::isnan(dev)) dev = std::numeric_limits<double>::infinity();
            out.push_back({id, dev});
        };
        compare(kP, *rep.get(Measure::P), [&] { return s.a * s.a; });
        compare(kCr, *rep.get(Measure::Cr), [&] { return coherence_r_ga(cfg, s); });
        compare(kCl1, *rep.get(Measure::Cl1), [&] { return coherence_l1_ga(cfg, s); });
        if (single) {
            compare(kE2, *rep.get(Measure::E2), [&] { return concurrence_two_qubit_ga(cfg, s); });
            compare(kEn, *rep.get(Measure::En), [&] { return concurrence_multiqubit_ga(cfg, s); });
            compare(kM, *rep.get(Measure::M), [&] { return chsh_M_ga(cfg, s); });
            compare(kDn, *rep.get(Measure::Dn), [&] { return genuine_discord_ga(cfg, s); });
            const int first[] = {0};
            const double s1 = von_neumann_entropy(reduced_from_pure(sv.to_pure(), first));
            compare(kS1, s1, [&] { return genuine_discord_ga(cfg, s); });
        }
        return out;
    });

    ValidationSummary summary;
    summary.configurations = configs.size();
    summary.checks.resize(kCheckCount);
    for (std::size_t id = 0; id < kCheckCount; ++id) {
        summary.checks[id].name = kCheckNames[id];
        summary.checks[id].tolerance = kCheckTolerance[id];
    }
    for (std::size_t i = 0; i < cases.size(); ++i)
        for (const Deviation& d : results[i]) {
            IdentityCheck& chk = summary.checks[d.check];
            ++chk.cases;
            if (chk.cases == 1 || d.value > chk.max_deviation) {
                chk.max_deviation = d.value;
                std::ostringstream os;
                os << "n=" << cases[i].n << " j=" << cases[i].j << " r=" << cases[i].r;
                chk.worst_case = os.str();
            }
            if (!(d.value <= chk.tolerance)) chk.passed = false;
        }
    std::erase_if(summary.checks, [](const IdentityCheck& c) { return c.cases == 0; });
    for (const IdentityCheck& c : summary.checks) summary.passed = summary.passed && c.passed;
    return summary;
}

}  // namespace qcd

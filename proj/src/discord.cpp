#include "qcd/errors.hpp"
#include "qcd/measures.hpp"
#include "qcd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace qcd {

namespace {

constexpr double kNegligibleOutcome = 1e-15;

// Entropy of a 2x2 Hermitian PSD matrix with trace `p`, after normalization.
double normalized_qubit_entropy(double d00, double d11, cplx d01, double p) {
    const double half_trace = 0.5 * (d00 + d11);
    const double gap = std::sqrt(0.25 * (d00 - d11) * (d00 - d11) + std::norm(d01));
    const double hi = (half_trace + gap) / p;
    return binary_entropy(std::clamp(hi, 0.0, 1.0));
}

}  // namespace

double conditional_entropy_after_measurement(const DensityMatrix& rho2, double theta, double phi) {
    if (rho2.dim() != 4) throw ShapeError("discord: expects a 4x4 two-qubit state");
    const Matrix& m = rho2.matrix();
    const cplx phase = std::polar(1.0, phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    // measurement vectors on B
    const cplx basis[2][2] = {{ct, phase * st}, {std::conj(phase) * st, -ct}};

    double total = 0.0;
    for (const auto& v : basis) {
        // rho_A (unnormalized) = <v|_B rho |v>_B; A is the high bit of the index.
        cplx block[2][2];
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                cplx acc = 0.0;
                for (int b = 0; b < 2; ++b)
                    for (int bp = 0; bp < 2; ++bp) acc += std::conj(v[b]) * m(2 * x + b, 2 * y + bp) * v[bp];
                block[x][y] = acc;
            }
        const double p = block[0][0].real() + block[1][1].real();
        if (p <= kNegligibleOutcome) continue;
        total += p * normalized_qubit_entropy(block[0][0].real(), block[1][1].real(), block[0][1], p);
    }
    return total;
}

DiscordSolution pairwise_discord(const DensityMatrix& rho2, const DiscordOptions& opts) {
    if (rho2.dim() != 4) throw ShapeError("pairwise_discord: expects a 4x4 two-qubit state");
    if (opts.grid_theta < 2 || opts.grid_phi < 1) throw DomainError("pairwise_discord: grid too small");
    const int keep_b[] = {1};
    const double offset = von_neumann_entropy(partial_trace(rho2, keep_b)) - von_neumann_entropy(rho2);

    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    for (int it = 0; it < opts.grid_theta; ++it) {
        const double theta = std::numbers::pi * it / (opts.grid_theta - 1);
        for (int ip = 0; ip < opts.grid_phi; ++ip) {
            const double phi = 2.0 * std::numbers::pi * ip / opts.grid_phi;
            const double v = conditional_entropy_after_measurement(rho2, theta, phi);
            if (v < best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    DiscordSolution sol;
    sol.grid_value = best + offset;
    NelderMeadOptions nm;
    nm.initial_step = std::numbers::pi / opts.grid_theta;
    nm.ftol = opts.ftol;
    nm.max_evals = opts.max_evals;
    const Objective f = [&](std::span<const double> x) { return conditional_entropy_after_measurement(rho2, x[0], x[1]); };
    const NelderMeadResult res = nelder_mead(f, {best_theta, best_phi}, nm);
    sol.optimizer_evals = opts.grid_theta * opts.grid_phi + res.evals;
    sol.converged = res.converged;
    if (res.value <= best) {
        sol.value = res.value + offset;
        sol.theta = res.x[0];
        sol.phi = res.x[1];
    } else {
        sol.value = sol.grid_value;
        sol.theta = best_theta;
        sol.phi = best_phi;
    }
    sol.value = std::max(sol.value, 0.0);
    return sol;
}

double genuine_discord_ga(const GroverConfig& cfg, const SymmetricGAState& s) {
    if (cfg.j != 1) throw UnsupportedStructureError("genuine_discord_ga: closed form requires j = 1");
    const double gap = s.a * s.b - s.b * s.b;
    const double delta = 1.0 - 4.0 * (std::ldexp(1.0, cfg.n - 1) - 1.0) * gap * gap;
    if (delta < -1e-12 || delta > 1.0 + 1e-12)
        throw NumericalConsistencyError("genuine_discord_ga: discriminant outside [0,1]");
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::clamp(delta, 0.0, 1.0))));
}

double genuine_discord_ga(const GroverConfig& cfg, std::int64_t r) { return genuine_discord_ga(cfg, state_at(cfg, r)); }

std::vector<std::vector<int>> integer_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int largest) {
        if (remaining == 0) {
            if (current.size() >= 2) out.push_back(current);
            return;
        }
        for (int part = std::min(remaining, largest); part >= 1; --part) {
            current.push_back(part);
            rec(remaining - part, part);
            current.pop_back();
        }
    };
    rec(n, n);
    return out;
}

PartitionMinimum genuine_discord_partition_min(const GroverConfig& cfg, const SymmetricGAState& s) {
    if (cfg.j != 1) throw UnsupportedStructureError("genuine_discord_partition_min: requires j = 1");
    if (cfg.n > kDenseQubitCap) throw CapacityError("genuine_discord_partition_min: requires n <= 12");
    if (cfg.n < 2) throw ShapeError("genuine_discord_partition_min: requires n >= 2");
    // Entropy of a block depends only on its size by permutation symmetry.
    std::vector<double> entropy(static_cast<std::size_t>(cfg.n), 0.0);
    for (int k = 1; k < cfg.n; ++k) entropy[static_cast<std::size_t>(k)] = reduced_entropy_ga(cfg, s, k);

    PartitionMinimum out;
    out.total = std::numeric_limits<double>::infinity();
    for (const auto& parts : integer_partitions(cfg.n)) {
        double sum = 0.0;
        for (int p : parts) sum += entropy[static_cast<std::size_t>(p)];
        ++out.partitions_checked;
        if (sum < out.total) {
            out.total = sum;
            out.parts = parts;
        }
    }
    out.value = 0.5 * out.total;
    return out;
}

PartitionMinimum genuine_discord_partition_min(const GroverConfig& cfg, std::int64_t r) {
    return genuine_discord_partition_min(cfg, state_at(cfg, r));
}

}  // namespace qcd

#pragma once

// Closed-form Grover search. The state after r iterations lives in the plane
// spanned by the normalized solution superposition |X> and non-solution
// superposition |X_perp>, so every quantity here costs O(1) in the database
// size except the dense materializations.

#include "qcd/core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qcd {

/// Dense paths (full_density, statevectors) refuse to go above this many
/// qubits unless a caller passes a larger cap explicitly.
inline constexpr int kDenseQubitCap = 12;

struct GroverConfig {
    int n = 1;
    double N = 2.0;                         // 2^n, always available
    std::optional<std::uint64_t> N_exact;   // only for n <= 52
    std::uint64_t j = 1;
    std::vector<std::uint64_t> solutions;   // ascending, size j

    /// Solutions default to {0, ..., j-1}.
    static GroverConfig make(int n, std::uint64_t j);
    static GroverConfig with_solutions(int n, std::vector<std::uint64_t> solutions);

    double nonsolutions() const { return N - static_cast<double>(j); }
    bool single_solution_at_zero() const { return j == 1 && solutions.front() == 0; }
    bool is_solution(std::uint64_t index) const;
};

struct SymmetricGAState {
    std::int64_t r = 0;
    double alpha = 0.0;    // rotation angle per iteration
    double alpha_r = 0.0;  // (r + 1/2) alpha
    double a = 0.0;        // amplitude on |X>: sin alpha_r
    double b = 0.0;        // per-item non-solution amplitude: cos alpha_r / sqrt(N - j)
};

double rotation_angle(const GroverConfig& cfg);

SymmetricGAState state_at(const GroverConfig& cfg, std::int64_t r);

/// sin^2 alpha_r.
double success_probability(const GroverConfig& cfg, std::int64_t r);

struct OptimalIterations {
    std::int64_t value = 0;
    double continuous = 0.0;  // (pi - alpha) / (2 alpha) before rounding
    bool tie = false;         // continuous value was a half-integer; rounded toward zero
};

/// Closest integer to (pi - alpha)/(2 alpha).
OptimalIterations optimal_iterations(const GroverConfig& cfg);

/// Rank-1 projector onto the state after r iterations, in the natural index
/// order. Throws CapacityError above `max_qubits`.
DensityMatrix full_density(const GroverConfig& cfg, std::int64_t r, int max_qubits = kDenseQubitCap);

/// The n-qubit state vector after r iterations (same cap as full_density).
PureState state_vector(const GroverConfig& cfg, std::int64_t r, int max_qubits = kDenseQubitCap);

/// Coefficients of the permutation-symmetric k-qubit reduced state for a
/// single solution at index 0:
///   entry(0,0)            = corner
///   entry(0,m), entry(m,0) = edge    (m != 0)
///   entry(m,m')            = bulk    (m, m' != 0)
struct ReducedBlock {
    int k = 1;
    double dim = 2.0;  // 2^k
    double corner = 0.0;
    double edge = 0.0;
    double bulk = 0.0;
};

ReducedBlock reduced_block(const GroverConfig& cfg, const SymmetricGAState& s, int k);

/// Dense form of reduced_block; valid for any n since only a, b and 2^(n-k)
/// enter. Requires a single solution at index 0 and 1 <= k < n.
DensityMatrix reduced_density(const GroverConfig& cfg, std::int64_t r, int k);
DensityMatrix reduced_density(const GroverConfig& cfg, const SymmetricGAState& s, int k);

struct TwoQubitOmega {
    double omega0 = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
};

TwoQubitOmega two_qubit_omegas(const GroverConfig& cfg, std::int64_t r);
TwoQubitOmega two_qubit_omegas(const GroverConfig& cfg, const SymmetricGAState& s);

/// Number of distinct k-qubit reduced states of n qubits, C(n, k).
double binomial(int n, int k);

}  // namespace qcd

#pragma once

// Quantum-correlation quantifiers: coherence, concurrence, discord and the
// CHSH / Svetlichny nonlocality criteria. Each generic measure takes a
// DensityMatrix; the *_ga variants are closed forms for Grover states and are
// cross-checked against the generic ones by the brute-force engine.

#include "qcd/core.hpp"
#include "qcd/grover.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qcd {

// ---------------------------------------------------------------- coherence

/// S(rho_diag) - S(rho), in bits.
double coherence_relative_entropy(const DensityMatrix& rho);
double coherence_relative_entropy(const PureState& psi);

/// Sum of |rho_ij| over i != j.
double coherence_l1(const DensityMatrix& rho);

/// H(a^2) + log2(N-j) + a^2 log2(j/(N-j)).
double coherence_r_ga(const GroverConfig& cfg, std::int64_t r);
double coherence_r_ga(const GroverConfig& cfg, const SymmetricGAState& s);

/// (sqrt(j)|sin alpha_r| + sqrt(N-j)|cos alpha_r|)^2 - 1.
double coherence_l1_ga(const GroverConfig& cfg, std::int64_t r);
double coherence_l1_ga(const GroverConfig& cfg, const SymmetricGAState& s);

/// Bounds of the few-solutions / large-database regime in which the linear
/// coherence-vs-probability laws hold.
struct RegimeOptions {
    double max_solution_ratio = 1.0 / 64.0;  // j/N
    double min_database = 1024.0;            // N
};

bool in_asymptotic_regime(const GroverConfig& cfg, const RegimeOptions& regime = {});

struct CoherenceAsymptotics {
    double c_r = 0.0;   // -P log2(N/j) + log2 N
    double c_l1 = 0.0;  // -N P + N
    bool in_regime = true;
    std::string warning;
};

CoherenceAsymptotics coherence_asymptotics(const GroverConfig& cfg, double P, const RegimeOptions& regime = {});

enum class CoherenceMeasure { relative_entropy, l1 };

struct CostPerformance {
    double value = 0.0;
    bool in_regime = true;
    std::string warning;
};

/// Success probability gained per unit of coherence spent: 1/log2(N/j) for
/// the relative entropy, 1/N for the l1 norm.
CostPerformance cost_performance(const GroverConfig& cfg, CoherenceMeasure measure,
                                 const RegimeOptions& regime = {});

struct CoherenceReport {
    double c_r = 0.0;
    double c_l1 = 0.0;
    double success_probability = 0.0;
    double asymptotic_c_r = 0.0;
    double asymptotic_c_l1 = 0.0;
};

CoherenceReport coherence_report(const GroverConfig& cfg, std::int64_t r);

// ------------------------------------------------------------- entanglement

/// Wootters concurrence of a two-qubit state.
double concurrence_two_qubit(const DensityMatrix& rho2);

/// 2|ab - b^2| for a single solution.
double concurrence_two_qubit_ga(const GroverConfig& cfg, std::int64_t r);
double concurrence_two_qubit_ga(const GroverConfig& cfg, const SymmetricGAState& s);

/// Tr rho_k^2 of the permutation-symmetric k-qubit reduced state.
double reduced_purity_ga(const GroverConfig& cfg, const SymmetricGAState& s, int k);

/// S(rho_k) of the permutation-symmetric k-qubit reduced state.
double reduced_entropy_ga(const GroverConfig& cfg, const SymmetricGAState& s, int k);

/// (2/sqrt N) sqrt((N-2) - sum_k C(n,k) Tr rho_k^2).
double concurrence_multiqubit_ga(const GroverConfig& cfg, std::int64_t r);
double concurrence_multiqubit_ga(const GroverConfig& cfg, const SymmetricGAState& s);

/// The same quantity from its fully expanded polynomial in a and b.
double concurrence_multiqubit_expanded(const GroverConfig& cfg, const SymmetricGAState& s);

// ------------------------------------------------------------------ discord

struct DiscordOptions {
    int grid_theta = 64;   // theta in [0, pi], endpoints included
    int grid_phi = 128;    // phi in [0, 2 pi)
    double ftol = 1e-8;
    int max_evals = 2000;
};

struct DiscordSolution {
    double value = 0.0;  // bits
    double theta = 0.0;
    double phi = 0.0;
    int optimizer_evals = 0;
    bool converged = false;
    double grid_value = 0.0;  // discord at the best coarse-grid point
};

/// sum_i p_i S(rho_{A|i}) for the projective measurement on B
///   {cos t|0> + e^{i f} sin t|1>,  e^{-i f} sin t|0> - cos t|1>}.
double conditional_entropy_after_measurement(const DensityMatrix& rho2, double theta, double phi);

/// Discord with the measurement on the second qubit.
DiscordSolution pairwise_discord(const DensityMatrix& rho2, const DiscordOptions& opts = {});

/// Genuine n-partite correlation of the Grover state: S(rho_1).
double genuine_discord_ga(const GroverConfig& cfg, std::int64_t r);
double genuine_discord_ga(const GroverConfig& cfg, const SymmetricGAState& s);

struct PartitionMinimum {
    double value = 0.0;        // half the minimal total correlation
    double total = 0.0;        // min over partitions of sum_i S(rho_{k_i})
    std::vector<int> parts;    // minimizing partition, descending part sizes
    std::size_t partitions_checked = 0;
};

/// Exhaustive minimum over all partitions of n into at least two parts.
PartitionMinimum genuine_discord_partition_min(const GroverConfig& cfg, std::int64_t r);
PartitionMinimum genuine_discord_partition_min(const GroverConfig& cfg, const SymmetricGAState& s);

/// All integer partitions of n (descending parts) with at least two parts.
std::vector<std::vector<int>> integer_partitions(int n);

// ------------------------------------------------------------- nonlocality

/// Pauli correlation expectations T_ij = Tr rho (s_i x s_j) (order 2) or
/// T_ijk = Tr rho (s_i x s_j x s_k) (order 3).
struct CorrelationTensor {
    int order = 2;
    std::array<double, 27> entries{};

    double operator()(int i, int j) const { return entries[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j, int k) const {
        return entries[static_cast<std::size_t>(9 * i + 3 * j + k)];
    }
    Eigen::Matrix3d matrix() const;  // order 2 only
};

CorrelationTensor correlation_tensor_2(const DensityMatrix& rho2);
CorrelationTensor correlation_tensor_3(const DensityMatrix& rho3);

/// Sum of the two largest eigenvalues of T^T T; CHSH is violated iff > 1.
double chsh_M(const DensityMatrix& rho2);

struct ChshClosedForm {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double M = 0.0;
};

ChshClosedForm chsh_closed_form(const TwoQubitOmega& omega);
double chsh_M_ga(const GroverConfig& cfg, std::int64_t r);
double chsh_M_ga(const GroverConfig& cfg, const SymmetricGAState& s);

using Vec3 = Eigen::Vector3d;

struct SvetlichnySettings {
    Vec3 a, a_prime, c, c_prime, d, d_prime;
    double t = 0.0;
};

/// |<B_S>| = 2|cos t <ADC> + sin t <AD'C'> + sin t <A'D'C> - cos t <A'DC'>|,
/// where B = d cos t + d' sin t and B' = d cos t - d' sin t.
double svetlichny_expectation(const CorrelationTensor& T, const SvetlichnySettings& s);

/// Maps 12 angles onto unit vectors a, a', c, c', an orthonormal pair d, d'
/// and the mixing angle t.
SvetlichnySettings svetlichny_settings(std::span<const double> angles);

struct SvetlichnyOptions {
    int restarts = 64;
    std::uint64_t seed = 1;
    int max_evals = 4000;
    double ftol = 1e-12;
};

struct SvetlichnyResult {
    double value = 0.0;
    SvetlichnySettings settings;
    int restarts = 0;
    long evals = 0;
    bool converged = false;  // best restart reached ftol
};

SvetlichnyResult svetlichny_max(const CorrelationTensor& T, const SvetlichnyOptions& opts = {});
SvetlichnyResult svetlichny_max(const DensityMatrix& rho3, const SvetlichnyOptions& opts = {});

}  // namespace qcd

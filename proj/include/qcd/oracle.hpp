#pragma once

// Brute-force ground truth: the full 2^n amplitude vector evolved one Grover
// step at a time, with every measure evaluated by its generic definition on
// reduced states obtained by partial trace. Nothing here uses a closed form.

#include "qcd/core.hpp"
#include "qcd/grover.hpp"
#include "qcd/measures.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcd {

class StateVector {
public:
    /// Throws CapacityError for n > max_qubits and InvalidStateError unless
    /// normalized within tol::kNorm.
    StateVector(int n, std::vector<cplx> amplitudes, int max_qubits = kDenseQubitCap);

    static StateVector uniform(int n, int max_qubits = kDenseQubitCap);

    int n() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    double norm2() const;
    double probability_of(std::span<const std::uint64_t> indices) const;
    PureState to_pure() const;

private:
    friend StateVector grover_step(const StateVector&, std::span<const std::uint64_t>);
    StateVector() = default;
    int n_ = 0;
    std::vector<cplx> amps_;
};

/// Oracle sign flip on `solutions` followed by inversion about the mean,
/// in O(N) without materializing either operator.
StateVector grover_step(const StateVector& sv, std::span<const std::uint64_t> solutions);

/// Uniform start evolved r steps on the configuration's solution set.
StateVector evolve(const GroverConfig& cfg, std::int64_t r, int max_qubits = kDenseQubitCap);

/// First r in [0, r_limit] maximizing the statevector success probability.
std::int64_t oracle_peak_iteration(const GroverConfig& cfg, std::int64_t r_limit);

enum class Measure { P, Cr, Cl1, E2, En, D2, Dn, M, Svetlichny };
inline constexpr std::size_t kMeasureCount = 9;
inline constexpr std::array<Measure, kMeasureCount> kAllMeasures = {
    Measure::P, Measure::Cr, Measure::Cl1, Measure::E2, Measure::En,
    Measure::D2, Measure::Dn, Measure::M, Measure::Svetlichny};

/// Column names: P, C_r, C_l1, E2, En, D2, Dn, M, Svetlichny.
std::string_view measure_name(Measure m);
/// Accepts the column names case-insensitively plus the short forms
/// p, cr, cl1, e2, en, d2, dn, m, sv. Throws ParseError otherwise.
Measure parse_measure(std::string_view token);

struct OracleOptions {
    int max_qubits = kDenseQubitCap;
    DiscordOptions discord;
    SvetlichnyOptions svetlichny;
};

struct MeasureReport {
    std::int64_t r = 0;
    // empty when not requested or undefined at this n (E2 with n < 2, ...)
    std::array<std::optional<double>, kMeasureCount> values{};

    std::optional<double> get(Measure m) const { return values[static_cast<std::size_t>(m)]; }
};

/// Reduced states are taken on the leading qubits: {0, 1} for E2, D2 and M,
/// {0, 1, 2} for the Svetlichny maximum. En and Dn use every bipartition.
MeasureReport run_and_measure(const GroverConfig& cfg, std::int64_t r, std::span<const Measure> measures,
                              const OracleOptions& opts = {});
MeasureReport measure_state(const StateVector& sv, std::span<const std::uint64_t> solutions,
                            std::span<const Measure> measures, const OracleOptions& opts = {});

struct IdentityCheck {
    std::string name;
    double tolerance = 0.0;
    double max_deviation = 0.0;
    std::size_t cases = 0;
    std::string worst_case;  // "n=.. j=.. r=.."
    bool passed = true;
};

struct ValidationSummary {
    std::vector<IdentityCheck> checks;
    std::size_t configurations = 0;
    bool passed = true;
};

struct CrossValidateOptions {
    int max_n = 8;
    std::vector<std::uint64_t> j_set{1, 2};
    std::uint64_t seed = 1;
    bool inject_fault = false;  // shifts the closed-form amplitude a by 1e-3
    DiscordOptions discord;
};

/// Closed forms against the oracle for n = 2..max_n (max_n <= 10), every j in
/// j_set with j < 2^n and r = 0..r_opt. Entanglement, discord and CHSH closed
/// forms exist for a single solution only, so they are compared at j = 1;
/// the coherence identities run for every j, with solution positions drawn
/// from the seed for j >= 2.
ValidationSummary cross_validate(const CrossValidateOptions& opts);

}  // namespace qcd

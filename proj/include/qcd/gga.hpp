#pragma once

// Generalized Grover search from an arbitrary initial amplitude distribution.
//
// Each iteration flips the sign of every solution amplitude and then inverts
// every amplitude about the global mean. Deviations from the solution mean are
// preserved, deviations from the non-solution mean alternate in sign, and the
// two means rotate with angular step omega, cos(omega) = 1 - 2j/N.

#include "qcd/core.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qcd {

struct AmplitudeDistribution {
    std::vector<cplx> k;  // solution amplitudes
    std::vector<cplx> l;  // non-solution amplitudes
    std::int64_t r = 0;

    std::size_t j() const { return k.size(); }
    std::size_t N() const { return k.size() + l.size(); }
    cplx k_mean() const;
    cplx l_mean() const;
    double solution_probability() const;
    double norm2() const;
    bool is_real() const;

    /// Splits a full amplitude vector by solution membership, keeping the
    /// ascending index order within each group.
    static AmplitudeDistribution from_amplitudes(std::span<const cplx> amplitudes,
                                                 std::span<const std::uint64_t> solutions);
    /// Inverse of from_amplitudes.
    std::vector<cplx> to_amplitudes(std::span<const std::uint64_t> solutions) const;

    /// Uniform superposition over N items with solutions listed first.
    static AmplitudeDistribution uniform(std::size_t N, std::size_t j);
};

/// Applies `steps` iterations. Throws DomainError for steps < 0 and
/// InvalidStateError if the input is not normalized within tol::kNorm.
AmplitudeDistribution gga_iterate(const AmplitudeDistribution& dist, std::int64_t steps);

struct GGAClosedForm {
    double omega = 0.0;
    double beta = 0.0;
    double envelope = 0.0;   // C with kbar(t) = sign C/sqrt(j) sin(omega t + beta)
    double sign = 1.0;       // -1 when the state was sign-flipped to make lbar(0) >= 0
    bool degenerate_phase = false;  // lbar(0) == 0, beta forced to pi/2
};

/// Requires real amplitudes (UnsupportedStructureError otherwise). A negative
/// lbar(0) is handled through the global sign, which no probability sees.
GGAClosedForm gga_closed_form(const AmplitudeDistribution& dist0);

/// Closed-form means at (possibly non-integer) time t.
std::pair<double, double> gga_means_at(const GGAClosedForm& cf, std::size_t j, std::size_t N, double t);

/// Closed-form success probability at continuous time t:
///   C^2 sin^2(omega t + beta) + sum_i |k_i(0) - kbar(0)|^2.
double gga_success_probability(const AmplitudeDistribution& dist0, double t);

/// 1 - sum_i |l_i - lbar|^2, the peak achievable success probability.
double gga_pmax(const AmplitudeDistribution& dist0);

/// Magnitude-invariant non-solution variance sigma_l^2.
double nonsolution_variance(const AmplitudeDistribution& dist);

struct GGAOptimalTime {
    double continuous = 0.0;  // (pi/2 - beta)/omega
    std::int64_t floor_r = 0;
    double p_floor = 0.0;
    std::int64_t ceil_r = 0;
    double p_ceil = 0.0;
    bool degenerate_phase = false;
    bool used_scan = false;  // complex amplitudes: integer scan instead of closed form
    std::string warning;
};

GGAOptimalTime gga_optimal_time(const AmplitudeDistribution& dist0);

/// Two-solution family: phi0 |0> + phi1 |1> + N^{-1/2} sum_{x>=2} |x>, with
/// phi0^2 + phi1^2 = 2/N and phi0 <= phi1.
struct PhiFamily {
    std::size_t N = 4;
    double phi0 = 0.5;
    double phi1 = 0.5;
    double k1 = 0.0;  // amplitudes of the optimal state k1|0> + k2|1>
    double k2 = 0.0;

    /// phi1 = sqrt(2/N - phi0^2); throws DomainError when phi0 > phi1 or
    /// phi0^2 > 2/N.
    static PhiFamily make(std::size_t N, double phi0);
};

AmplitudeDistribution phi_family_distribution(const PhiFamily& fam);

/// (|phi_0>, |phi_opt>) as N-dimensional state vectors.
std::pair<PureState, PureState> phi_family_states(const PhiFamily& fam);

/// Relative-entropy coherence spent between |phi_0> and |phi_opt>, in bits.
double phi_family_delta_coherence(const PhiFamily& fam);

/// Evenly spaced phi0 values from N^{-1/2} (phi0 = phi1) down to 0.
std::vector<PhiFamily> phi_family_sweep(std::size_t N, std::size_t points);

}  // namespace qcd

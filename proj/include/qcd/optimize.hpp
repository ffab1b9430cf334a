#pragma once

// Derivative-free local minimization (Nelder-Mead simplex) and the seeded
// random source used for optimizer restarts.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qcd {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
    double initial_step = 0.1;
    double ftol = 1e-10;  // stop when the simplex value spread falls below this
    int max_evals = 4000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evals = 0;
    bool converged = false;
};

/// Minimizes f from x0. The returned value is never worse than f(x0).
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts);

/// splitmix64 mixer; restart streams are derived as SeedStream(mix(seed, i)).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Small deterministic generator whose output does not depend on the
/// standard library's distribution implementations.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal via Box-Muller.
    double normal();

private:
    std::uint64_t state_;
};

}  // namespace qcd

#include "qcd/verify.hpp"

#include "qcd/errors.hpp"
#include "qcd/gga.hpp"
#include "qcd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qcd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Accumulates deviations for one named identity; `bad` marks a failure that
// is not a tolerance comparison (strict monotonicity, argmax mismatch).
class Check {
public:
    Check(std::string name, double tolerance) {
        c_.name = std::move(name);
        c_.tolerance = tolerance;
    }

    void add(double deviation, const std::string& where, bool bad = false) {
        if (std::isnan(deviation)) deviation = kInf;
        ++c_.cases;
        if (c_.cases == 1 || deviation > c_.max_deviation) {
            c_.max_deviation = deviation;
            c_.worst_case = where;
        }
        if (bad || !(deviation <= c_.tolerance)) c_.passed = false;
    }

    IdentityCheck done() && { return std::move(c_); }

private:
    IdentityCheck c_;
};

std::string at(int n, std::uint64_t j, std::int64_t r) {
    std::ostringstream os;
    os << "n=" << n << " j=" << j << " r=" << r;
    return os.str();
}

int capped(int max_n, int cap) { return std::min(max_n, cap); }

// ------------------------------------------------------------------ grover

void grover_checks(const VerifyOptions& o, std::vector<IdentityCheck>& out) {
    Check norm("grover_step_norm", 1e-12);
    for (int n = 1; n <= capped(o.max_n, 10); ++n)
        for (std::uint64_t j : {1u, 2u}) {
            if (j >= (std::uint64_t{1} << n)) continue;
            const GroverConfig cfg = GroverConfig::make(n, j);
            const std::int64_t r_opt = optimal_iterations(cfg).value;
            StateVector sv = StateVector::uniform(n);
            for (std::int64_t r = 1; r <= r_opt; ++r) {
                sv = grover_step(sv, cfg.solutions);
                norm.add(std::abs(sv.norm2() - 1.0), at(n, j, r));
            }
        }
    out.push_back(std::move(norm).done());

    Check mono("coherence_monotone_depletion", 0.0);
    Check coupling("endpoint_coupling", 0.0);
    for (int n = 2; n <= 20; ++n)
        for (std::uint64_t j = 1; j <= 10; ++j) {
            if (j >= (std::uint64_t{1} << n)) continue;
            const GroverConfig cfg = GroverConfig::make(n, j);
            const std::int64_t r_opt = optimal_iterations(cfg).value;
            double prev = coherence_r_ga(cfg, 0);
            std::int64_t arg_p = 0, arg_c = 0;
            double best_p = success_probability(cfg, 0), best_c = prev;
            for (std::int64_t r = 1; r <= r_opt; ++r) {
                const double c = coherence_r_ga(cfg, r);
                const double p = success_probability(cfg, r);
                mono.add(std::max(c - prev, 0.0), at(n, j, r), !(c < prev));
                prev = c;
                if (p > best_p) {
                    best_p = p;
                    arg_p = r;
                }
                if (c < best_c) {
                    best_c = c;
                    arg_c = r;
                }
            }
            coupling.add(static_cast<double>(std::abs(arg_p - arg_c)), at(n, j, r_opt));
        }
    out.push_back(std::move(mono).done());
    out.push_back(std::move(coupling).done());
}

// ---------------------------------------------------------------- partition

void partition_checks(const VerifyOptions& o, std::vector<IdentityCheck>& out) {
    Check part("partition_minimum_identity", 1e-9);
    for (int n = 2; n <= capped(o.max_n, 10); ++n) {
        const GroverConfig cfg = GroverConfig::make(n, 1);
        for (std::int64_t r = 0; r <= optimal_iterations(cfg).value; ++r) {
            const double brute = genuine_discord_partition_min(cfg, r).value;
            part.add(std::abs(brute - genuine_discord_ga(cfg, r)), at(n, 1, r));
        }
    }
    out.push_back(std::move(part).done());
}

// --------------------------------------------------------------------- gga

AmplitudeDistribution random_distribution(SeedStream& rng, std::size_t N, std::size_t j) {
    AmplitudeDistribution d;
    double n2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double x = rng.normal();
        n2 += x * x;
        (i < j ? d.k : d.l).emplace_back(x);
    }
    const double s = 1.0 / std::sqrt(n2);
    for (cplx& z : d.k) z *= s;
    for (cplx& z : d.l) z *= s;
    return d;
}

void gga_checks(const VerifyOptions& o, std::vector<IdentityCheck>& out) {
    Check dev_k("gga_solution_deviations", 1e-10);
    Check dev_l("gga_nonsolution_deviations", 1e-10);
    Check means("gga_closed_form_means", 1e-10);
    Check norm("gga_norm", 1e-12);
    Check peak("gga_continuous_peak", 1e-9);
    Check bound("gga_integer_bound", 1e-9);
    const int top = std::max(2, capped(o.max_n, 10));
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        SeedStream rng(mix_seed(o.seed, 1000 + trial));
        const int n = 2 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(top - 1));
        const std::size_t N = std::size_t{1} << n;
        const std::size_t j = 1 + rng.next() % std::min<std::size_t>(4, N - 1);
        const AmplitudeDistribution d0 = random_distribution(rng, N, j);
        const std::string where = "trial=" + std::to_string(trial) + " n=" + std::to_string(n) + " j=" + std::to_string(j);
        const GGAClosedForm cf = gga_closed_form(d0);
        const GGAOptimalTime ot = gga_optimal_time(d0);
        const double pmax = gga_pmax(d0);
        const cplx k0 = d0.k_mean(), l0 = d0.l_mean();

        AmplitudeDistribution d = d0;
        double best_integer = d0.solution_probability();
        const std::int64_t r_end = std::max<std::int64_t>(40, static_cast<std::int64_t>(std::ceil(2 * ot.continuous)));
        for (std::int64_t r = 1; r <= r_end; ++r) {
            d = gga_iterate(d, 1);
            const cplx km = d.k_mean(), lm = d.l_mean();
            const double sign = (r % 2 == 0) ? 1.0 : -1.0;
            double ek = 0.0, el = 0.0;
            for (std::size_t i = 0; i < j; ++i) ek = std::max(ek, std::abs((d.k[i] - km) - (d0.k[i] - k0)));
            for (std::size_t i = 0; i < N - j; ++i)
                el = std::max(el, std::abs((d.l[i] - lm) - sign * (d0.l[i] - l0)));
            if (r <= 40) {
                dev_k.add(ek, where);
                dev_l.add(el, where);
                const auto [kc, lc] = gga_means_at(cf, j, N, static_cast<double>(r));
                means.add(std::max(std::abs(km - kc), std::abs(lm - lc)), where);
                norm.add(std::abs(d.norm2() - 1.0), where);
            }
            if (static_cast<double>(r) <= 2.0 * ot.continuous) best_integer = std::max(best_integer, d.solution_probability());
        }
        peak.add(std::abs(gga_success_probability(d0, ot.continuous) - pmax), where);
        bound.add(std::max(best_integer - pmax, 0.0), where);
    }
    for (Check* c : {&dev_k, &dev_l, &means, &norm, &peak, &bound}) out.push_back(std::move(*c).done());

    Check uni("gga_uniform_equals_grover", 1e-12);
    for (int n = 2; n <= capped(o.max_n, 8); ++n)
        for (std::uint64_t j = 1; j <= 4; ++j) {
            const std::size_t N = std::size_t{1} << n;
            if (j >= N) continue;
            const GroverConfig cfg = GroverConfig::make(n, j);
            AmplitudeDistribution d = AmplitudeDistribution::uniform(N, j);
            StateVector sv = StateVector::uniform(n);
            for (std::int64_t r = 1; r <= optimal_iterations(cfg).value; ++r) {
                d = gga_iterate(d, 1);
                sv = grover_step(sv, cfg.solutions);
                const std::vector<cplx> amps = d.to_amplitudes(cfg.solutions);
                double e = 0.0;
                for (std::size_t i = 0; i < N; ++i) e = std::max(e, std::abs(amps[i] - sv.amplitudes()[i]));
                uni.add(e, at(n, j, r));
            }
        }
    out.push_back(std::move(uni).done());

    Check mono("phi_family_monotone", 0.0);
    Check endpoint("phi_family_endpoint", 1e-9);
    const std::vector<PhiFamily> sweep = phi_family_sweep(1024, 50);
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        const double dc_prev = phi_family_delta_coherence(sweep[i - 1]);
        const double dc = phi_family_delta_coherence(sweep[i]);
        const double t_prev = gga_optimal_time(phi_family_distribution(sweep[i - 1])).continuous;
        const double t = gga_optimal_time(phi_family_distribution(sweep[i])).continuous;
        const std::string where = "phi0=" + std::to_string(sweep[i].phi0);
        mono.add(std::max({dc_prev - dc, t_prev - t, 0.0}), where, dc < dc_prev || t < t_prev);
    }
    const auto [start, opt] = phi_family_states(sweep.front());
    const double generic = coherence_relative_entropy(start) - coherence_relative_entropy(opt);
    endpoint.add(std::abs(generic - 9.0), "N=1024 phi0=phi1");
    endpoint.add(std::abs(phi_family_delta_coherence(sweep.front()) - 9.0), "N=1024 phi0=phi1 closed form");
    out.push_back(std::move(mono).done());
    out.push_back(std::move(endpoint).done());
}

// ----------------------------------------------------------------- discord

DensityMatrix random_qubit(SeedStream& rng) {
    // uniform in the Bloch ball
    double x, y, z;
    do {
        x = rng.uniform(-1.0, 1.0);
        y = rng.uniform(-1.0, 1.0);
        z = rng.uniform(-1.0, 1.0);
    } while (x * x + y * y + z * z > 1.0);
    Matrix m(2, 2);
    m << 0.5 * (1.0 + z), 0.5 * cplx(x, -y), 0.5 * cplx(x, y), 0.5 * (1.0 - z);
    return DensityMatrix(m);
}

void discord_checks(const VerifyOptions& o, std::vector<IdentityCheck>& out) {
    Check zero("discord_zero_on_product", 1e-7);
    Check nonneg("discord_nonnegative", 1e-9);
    Check refine("discord_refinement_not_worse", 1e-12);
    SeedStream rng(mix_seed(o.seed, 2000));
    for (int i = 0; i < 100; ++i) {
        const DensityMatrix rho = tensor(random_qubit(rng), random_qubit(rng));
        const DiscordSolution s = pairwise_discord(rho, o.discord);
        const std::string where = "product#" + std::to_string(i);
        zero.add(std::abs(s.value), where);
        nonneg.add(std::max(-s.value, 0.0), where);
        refine.add(std::max(s.value - s.grid_value, 0.0), where);
    }
    const GroverConfig cfg = GroverConfig::make(11, 1);
    for (std::int64_t r = 0; r <= optimal_iterations(cfg).value; r += 5) {
        const DiscordSolution s = pairwise_discord(reduced_density(cfg, r, 2), o.discord);
        nonneg.add(std::max(-s.value, 0.0), at(11, 1, r));
        refine.add(std::max(s.value - s.grid_value, 0.0), at(11, 1, r));
    }
    for (Check* c : {&zero, &nonneg, &refine}) out.push_back(std::move(*c).done());
}

// ------------------------------------------------------------- nonlocality

void nonlocality_checks(const VerifyOptions& o, std::vector<IdentityCheck>& out) {
    Check limit("chsh_asymptotic_n24", 1e-3);
    Check bound("chsh_bound_n24", 1e-9);
    const GroverConfig c24 = GroverConfig::make(24, 1);
    for (std::int64_t r = 0; r <= optimal_iterations(c24).value; ++r) {
        const SymmetricGAState s = state_at(c24, r);
        const double M = chsh_M(reduced_density(c24, s, 2));
        const double sc = std::sin(s.alpha_r) * std::cos(s.alpha_r);
        limit.add(std::abs(M - (1.0 - 2.0 * sc * sc)), at(24, 1, r));
        bound.add(std::max(M - 1.0, 0.0), at(24, 1, r));
    }
    out.push_back(std::move(limit).done());
    out.push_back(std::move(bound).done());

    Check ghz("svetlichny_ghz_control", 1e-3);
    Matrix g = Matrix::Zero(8, 8);
    g(0, 0) = g(0, 7) = g(7, 0) = g(7, 7) = 0.5;
    ghz.add(std::abs(svetlichny_max(DensityMatrix(g), o.svetlichny).value - 4.0 * std::numbers::sqrt2), "GHZ");
    out.push_back(std::move(ghz).done());

    Check ga("svetlichny_bound_n11", 1e-6);
    const GroverConfig c11 = GroverConfig::make(11, 1);
    for (std::int64_t r = 0; r <= optimal_iterations(c11).value; ++r) {
        const double v = svetlichny_max(reduced_density(c11, r, 3), o.svetlichny).value;
        ga.add(std::max(v - 4.0, 0.0), at(11, 1, r));
    }
    out.push_back(std::move(ga).done());
}

}  // namespace

VerifyReport run_verify_suite(const VerifyOptions& o) {
    if (o.max_n < 2) throw DomainError("verify: max_n must be at least 2");
    VerifyReport rep;
    CrossValidateOptions cv;
    cv.max_n = capped(o.max_n, 10);
    cv.seed = o.seed;
    cv.inject_fault = o.inject_fault;
    cv.discord = o.discord;
    for (IdentityCheck& c : cross_validate(cv).checks) {
        c.name = "oracle/" + c.name;
        rep.checks.push_back(std::move(c));
    }
    grover_checks(o, rep.checks);
    partition_checks(o, rep.checks);
    gga_checks(o, rep.checks);
    discord_checks(o, rep.checks);
    nonlocality_checks(o, rep.checks);
    for (const IdentityCheck& c : rep.checks) rep.passed = rep.passed && c.passed;
    return rep;
}

}  // namespace qcd

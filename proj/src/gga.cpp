#include "qcd/gga.hpp"

#include "qcd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcd {

namespace {

constexpr double kRealTolerance = 1e-15;
constexpr double kDegenerateMean = 1e-15;

cplx mean(const std::vector<cplx>& v) {
    cplx s = 0.0;
    for (const cplx& x : v) s += x;
    return v.empty() ? cplx(0.0) : s / static_cast<double>(v.size());
}

double deviation_energy(const std::vector<cplx>& v) {
    const cplx m = mean(v);
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x - m);
    return s;
}

void require_normalized(const AmplitudeDistribution& dist) {
    const double n2 = dist.norm2();
    if (std::abs(n2 - 1.0) > tol::kNorm)
        throw InvalidStateError("amplitude distribution not normalized (squared norm " +
                                std::to_string(n2) + ")");
    if (dist.k.empty() || dist.l.empty())
        throw DomainError("amplitude distribution needs at least one solution and one non-solution");
}

}  // namespace

cplx AmplitudeDistribution::k_mean() const { return mean(k); }
cplx AmplitudeDistribution::l_mean() const { return mean(l); }

double AmplitudeDistribution::solution_probability() const {
    double s = 0.0;
    for (const cplx& x : k) s += std::norm(x);
    return s;
}

double AmplitudeDistribution::norm2() const {
    double s = solution_probability();
    for (const cplx& x : l) s += std::norm(x);
    return s;
}

bool AmplitudeDistribution::is_real() const {
    auto real = [](const cplx& x) { return std::abs(x.imag()) <= kRealTolerance; };
    return std::all_of(k.begin(), k.end(), real) && std::all_of(l.begin(), l.end(), real);
}

AmplitudeDistribution AmplitudeDistribution::from_amplitudes(std::span<const cplx> amplitudes,
                                                             std::span<const std::uint64_t> solutions) {
    std::vector<std::uint64_t> sorted(solutions.begin(), solutions.end());
    std::sort(sorted.begin(), sorted.end());
    AmplitudeDistribution d;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (std::binary_search(sorted.begin(), sorted.end(), i))
            d.k.push_back(amplitudes[i]);
        else
            d.l.push_back(amplitudes[i]);
    }
    if (d.k.size() != sorted.size()) throw IndexError("solution index outside the amplitude vector");
    return d;
}

std::vector<cplx> AmplitudeDistribution::to_amplitudes(std::span<const std::uint64_t> solutions) const {
    std::vector<std::uint64_t> sorted(solutions.begin(), solutions.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != k.size()) throw ShapeError("solution set size differs from j");
    std::vector<cplx> out(N());
    std::size_t ik = 0, il = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (ik < sorted.size() && sorted[ik] == i)
            out[i] = k[ik++];
        else
            out[i] = l[il++];
    }
    return out;
}

AmplitudeDistribution AmplitudeDistribution::uniform(std::size_t N, std::size_t j) {
    if (j == 0 || j >= N) throw DomainError("uniform distribution needs 1 <= j < N");
    const cplx amp(1.0 / std::sqrt(static_cast<double>(N)), 0.0);
    AmplitudeDistribution d;
    d.k.assign(j, amp);
    d.l.assign(N - j, amp);
    return d;
}

AmplitudeDistribution gga_iterate(const AmplitudeDistribution& dist, std::int64_t steps) {
    if (steps < 0) throw DomainError("gga_iterate: steps must be >= 0");
    require_normalized(dist);
    AmplitudeDistribution out = dist;
    const double inv_n = 1.0 / static_cast<double>(out.N());
    for (std::int64_t s = 0; s < steps; ++s) {
        cplx total = 0.0;
        for (cplx& x : out.k) {
            x = -x;
            total += x;
        }
        for (const cplx& x : out.l) total += x;
        const cplx twice_avg = 2.0 * total * inv_n;
        for (cplx& x : out.k) x = twice_avg - x;
        for (cplx& x : out.l) x = twice_avg - x;
    }
    out.r = dist.r + steps;
    return out;
}

GGAClosedForm gga_closed_form(const AmplitudeDistribution& dist0) {
    require_normalized(dist0);
    if (!dist0.is_real())
        throw UnsupportedStructureError("gga_closed_form: complex amplitudes have no real phase beta");
    const double j = static_cast<double>(dist0.j());
    const double nonsol = static_cast<double>(dist0.l.size());
    const double N = j + nonsol;
    double kbar = dist0.k_mean().real();
    double lbar = dist0.l_mean().real();
    // A global sign flip leaves every probability unchanged, so lbar < 0 is
    // mapped onto lbar > 0.
    GGAClosedForm cf;
    if (lbar < 0.0) {
        kbar = -kbar;
        lbar = -lbar;
        cf.sign = -1.0;
    }

    cf.omega = std::acos(1.0 - 2.0 * j / N);
    cf.envelope = std::sqrt(j * kbar * kbar + nonsol * lbar * lbar);
    if (lbar <= kDegenerateMean) {
        cf.beta = std::numbers::pi / 2.0;
        cf.degenerate_phase = true;
        if (kbar < 0.0) cf.envelope = -cf.envelope;
    } else {
        cf.beta = std::atan(std::sqrt(j / nonsol) * kbar / lbar);
    }
    return cf;
}

std::pair<double, double> gga_means_at(const GGAClosedForm& cf, std::size_t j, std::size_t N, double t) {
    const double phase = cf.omega * t + cf.beta;
    const double scale = cf.sign * cf.envelope;
    return {scale / std::sqrt(static_cast<double>(j)) * std::sin(phase),
            scale / std::sqrt(static_cast<double>(N - j)) * std::cos(phase)};
}

double gga_success_probability(const AmplitudeDistribution& dist0, double t) {
    const GGAClosedForm cf = gga_closed_form(dist0);
    const double s = std::sin(cf.omega * t + cf.beta);
    return cf.envelope * cf.envelope * s * s + deviation_energy(dist0.k);
}

double nonsolution_variance(const AmplitudeDistribution& dist) {
    return deviation_energy(dist.l) / static_cast<double>(dist.l.size());
}

double gga_pmax(const AmplitudeDistribution& dist0) {
    require_normalized(dist0);
    return 1.0 - static_cast<double>(dist0.l.size()) * nonsolution_variance(dist0);
}

GGAOptimalTime gga_optimal_time(const AmplitudeDistribution& dist0) {
    require_normalized(dist0);
    GGAOptimalTime out;
    if (!dist0.is_real()) {
        const double omega =
            std::acos(1.0 - 2.0 * static_cast<double>(dist0.j()) / static_cast<double>(dist0.N()));
        const auto horizon = static_cast<std::int64_t>(std::ceil(std::numbers::pi / omega)) + 1;
        AmplitudeDistribution cur = dist0;
        double best = cur.solution_probability();
        std::int64_t best_r = 0;
        for (std::int64_t r = 1; r <= horizon; ++r) {
            cur = gga_iterate(cur, 1);
            const double p = cur.solution_probability();
            if (p > best) {
                best = p;
                best_r = r;
            }
        }
        out.continuous = static_cast<double>(best_r);
        out.floor_r = out.ceil_r = best_r;
        out.p_floor = out.p_ceil = best;
        out.used_scan = true;
        out.warning = "complex amplitudes: closed-form phase undefined, integer scan used";
        return out;
    }

    const GGAClosedForm cf = gga_closed_form(dist0);
    out.degenerate_phase = cf.degenerate_phase;
    out.continuous = std::max(0.0, (std::numbers::pi / 2.0 - cf.beta) / cf.omega);
    out.floor_r = static_cast<std::int64_t>(std::floor(out.continuous));
    out.ceil_r = static_cast<std::int64_t>(std::ceil(out.continuous));
    out.p_floor = gga_success_probability(dist0, static_cast<double>(out.floor_r));
    out.p_ceil = gga_success_probability(dist0, static_cast<double>(out.ceil_r));
    if (cf.degenerate_phase) out.warning = "non-solution mean is zero: beta fixed at pi/2";
    return out;
}

PhiFamily PhiFamily::make(std::size_t N, double phi0) {
    if (N < 4) throw DomainError("phi family needs N >= 4");
    const double Nd = static_cast<double>(N);
    const double rest = 2.0 / Nd - phi0 * phi0;
    if (rest < -1e-15) throw DomainError("phi family: phi0^2 exceeds 2/N");
    PhiFamily f;
    f.N = N;
    f.phi0 = phi0;
    f.phi1 = std::sqrt(std::max(rest, 0.0));
    if (f.phi0 > f.phi1 + 1e-15) throw DomainError("phi family: requires phi0 <= phi1");
    const double root = std::sqrt((Nd - 2.0) / (2.0 * Nd) + 0.25 * (f.phi0 + f.phi1) * (f.phi0 + f.phi1));
    f.k1 = root + 0.5 * (f.phi0 - f.phi1);
    f.k2 = root - 0.5 * (f.phi0 - f.phi1);
    return f;
}

AmplitudeDistribution phi_family_distribution(const PhiFamily& fam) {
    AmplitudeDistribution d;
    d.k = {cplx(fam.phi0, 0.0), cplx(fam.phi1, 0.0)};
    d.l.assign(fam.N - 2, cplx(1.0 / std::sqrt(static_cast<double>(fam.N)), 0.0));
    return d;
}

std::pair<PureState, PureState> phi_family_states(const PhiFamily& fam) {
    const auto dim = static_cast<Eigen::Index>(fam.N);
    Vector initial = Vector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(fam.N)), 0.0));
    initial(0) = fam.phi0;
    initial(1) = fam.phi1;
    Vector optimal = Vector::Zero(dim);
    optimal(0) = fam.k1;
    optimal(1) = fam.k2;
    return {PureState(std::move(initial)), PureState(std::move(optimal))};
}

double phi_family_delta_coherence(const PhiFamily& fam) {
    const double Nd = static_cast<double>(fam.N);
    auto plogp = [](double p) { return p > 0.0 ? p * std::log2(p) : 0.0; };
    const double p0 = fam.phi0 * fam.phi0;
    const double p1 = fam.phi1 * fam.phi1;
    return -plogp(p0) - plogp(p1) + (Nd - 2.0) / Nd * std::log2(Nd) - binary_entropy(fam.k1 * fam.k1);
}

std::vector<PhiFamily> phi_family_sweep(std::size_t N, std::size_t points) {
    if (points < 2) throw DomainError("phi family sweep needs at least 2 points");
    const double top = 1.0 / std::sqrt(static_cast<double>(N));
    std::vector<PhiFamily> out;
    out.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double phi0 = top * (1.0 - static_cast<double>(i) / static_cast<double>(points - 1));
        out.push_back(PhiFamily::make(N, phi0));
    }
    return out;
}

}  // namespace qcd

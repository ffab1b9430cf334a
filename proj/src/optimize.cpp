#include "qcd/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qcd {

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts) {
    const std::size_t dim = x0.size();
    NelderMeadResult res;
    std::vector<std::vector<double>> simplex(dim + 1, x0);
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += opts.initial_step;
    for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);
    res.evals = static_cast<int>(dim + 1);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);
    auto along = [&](double coef, std::vector<double>& out) {
        for (std::size_t d = 0; d < dim; ++d)
            out[d] = centroid[d] + coef * (simplex[order.back()][d] - centroid[d]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const double best = values[order.front()];
        const double worst = values[order.back()];
        if (std::abs(worst - best) <= opts.ftol) {
            res.converged = true;
            break;
        }
        if (res.evals >= opts.max_evals) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[order[i]][d] / static_cast<double>(dim);

        const std::size_t w = order.back();
        const double second_worst = values[order[dim - 1]];

        along(-1.0, trial);  // reflection
        const double fr = f(trial);
        ++res.evals;
        if (fr < best) {
            along(-2.0, trial2);  // expansion
            const double fe = f(trial2);
            ++res.evals;
            if (fe < fr) {
                simplex[w] = trial2;
                values[w] = fe;
            } else {
                simplex[w] = trial;
                values[w] = fr;
            }
            continue;
        }
        if (fr < second_worst) {
            simplex[w] = trial;
            values[w] = fr;
            continue;
        }
        // contraction, outside if the reflection improved on the worst point
        const bool outside = fr < worst;
        along(outside ? -0.5 : 0.5, trial2);
        const double fc = f(trial2);
        ++res.evals;
        if (fc < (outside ? fr : worst)) {
            simplex[w] = trial2;
            values[w] = fc;
            continue;
        }
        // shrink toward the best vertex
        const std::size_t b = order.front();
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == b) continue;
            for (std::size_t d = 0; d < dim; ++d) simplex[i][d] = simplex[b][d] + 0.5 * (simplex[i][d] - simplex[b][d]);
            values[i] = f(simplex[i]);
            ++res.evals;
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    res.value = *best_it;
    res.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
    return res;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SeedStream::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SeedStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SeedStream::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qcd

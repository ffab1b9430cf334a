#pragma once

// Initial amplitude documents for the generalized search:
//   {"n": 3, "solutions": [0, 5], "amplitudes": [[re, im], ...]}
// A bare number is accepted for a real amplitude.

#include "qcd/core.hpp"
#include "qcd/gga.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qcd {

// n is capped well above the dense cap because the iteration is O(N).
inline constexpr int kAmplitudeFileMaxQubits = 24;

struct AmplitudeFile {
    int n = 0;
    std::vector<std::uint64_t> solutions;  // ascending
    std::vector<cplx> amplitudes;

    AmplitudeDistribution distribution() const;
};

/// Throws ParseError naming the line/column for syntax errors and the field
/// for structural ones; `source` prefixes every message.
AmplitudeFile parse_amplitude_json(std::string_view text, const std::string& source = "<input>");
AmplitudeFile load_amplitude_file(const std::string& path);

}  // namespace qcd

#include "qcd/amplitude_file.hpp"

#include "qcd/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qcd {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& what) {
    throw ParseError(source + ": field '" + field + "': " + what);
}

double finite_number(const json& v, const std::string& source, const std::string& field) {
    if (!v.is_number()) field_error(source, field, "expected a number, got " + std::string(v.type_name()));
    const double x = v.get<double>();
    if (!std::isfinite(x)) field_error(source, field, "not a finite number");
    return x;
}

}  // namespace

AmplitudeDistribution AmplitudeFile::distribution() const {
    return AmplitudeDistribution::from_amplitudes(amplitudes, solutions);
}

AmplitudeFile parse_amplitude_json(std::string_view text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // byte is 1-based and points just past the offending character
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": malformed JSON (" + e.what() + ")");
    }
    if (!doc.is_object()) throw ParseError(source + ": top level must be an object");
    for (const char* key : {"n", "solutions", "amplitudes"})
        if (!doc.contains(key)) field_error(source, key, "missing");

    AmplitudeFile f;
    const json& n = doc["n"];
    if (!n.is_number_integer()) field_error(source, "n", "expected an integer");
    const auto n_value = n.get<long long>();
    if (n_value < 1 || n_value > kAmplitudeFileMaxQubits)
        field_error(source, "n", "must lie in [1, " + std::to_string(kAmplitudeFileMaxQubits) + "]");
    f.n = static_cast<int>(n_value);
    const std::uint64_t N = std::uint64_t{1} << f.n;

    const json& sols = doc["solutions"];
    if (!sols.is_array() || sols.empty()) field_error(source, "solutions", "expected a non-empty array");
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const std::string field = "solutions[" + std::to_string(i) + "]";
        if (!sols[i].is_number_integer()) field_error(source, field, "expected an integer index");
        const auto idx = sols[i].get<long long>();
        if (idx < 0 || static_cast<std::uint64_t>(idx) >= N)
            field_error(source, field, "index " + std::to_string(idx) + " outside [0, " + std::to_string(N) + ")");
        f.solutions.push_back(static_cast<std::uint64_t>(idx));
    }
    std::sort(f.solutions.begin(), f.solutions.end());
    if (std::adjacent_find(f.solutions.begin(), f.solutions.end()) != f.solutions.end())
        field_error(source, "solutions", "duplicate index");
    if (f.solutions.size() >= N) field_error(source, "solutions", "at least one non-solution is required");

    const json& amps = doc["amplitudes"];
    if (!amps.is_array()) field_error(source, "amplitudes", "expected an array");
    if (amps.size() != N)
        field_error(source, "amplitudes",
                    "expected 2^n = " + std::to_string(N) + " entries, got " + std::to_string(amps.size()));
    f.amplitudes.reserve(N);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const std::string field = "amplitudes[" + std::to_string(i) + "]";
        const json& a = amps[i];
        cplx z;
        if (a.is_number()) {
            z = finite_number(a, source, field);
        } else if (a.is_array() && a.size() == 2) {
            z = cplx(finite_number(a[0], source, field + "[0]"), finite_number(a[1], source, field + "[1]"));
        } else {
            field_error(source, field, "expected [re, im] or a number");
        }
        norm2 += std::norm(z);
        f.amplitudes.push_back(z);
    }
    if (std::abs(norm2 - 1.0) > tol::kNorm) {
        std::ostringstream os;
        os.precision(17);
        os << "squared norm " << norm2 << " differs from 1 by more than " << tol::kNorm;
        field_error(source, "amplitudes", os.str());
    }
    return f;
}

AmplitudeFile load_amplitude_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_amplitude_json(buf.str(), path);
}

}  // namespace qcd

#pragma once

// Sweep commands and their serialization. Every command produces a Table;
// rendering is separated so that identical configurations give identical
// bytes in either format.

#include "qcd/oracle.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qcd {

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string command = "ga";
    int n = 11;
    std::vector<std::uint64_t> j_values{1};
    std::optional<std::int64_t> r_max;
    std::vector<Measure> measures;  // empty: the command's default set
    std::uint64_t seed = 1;
    int grid_theta = 64;
    int grid_phi = 128;
    int restarts = 64;
    OutputFormat format = OutputFormat::csv;
    std::string out;        // file, or directory for `figures`; empty = stdout
    std::string init_file;  // gga: amplitude document instead of the phi family
    std::size_t points = 50;
    int max_n = 8;
    bool inject_fault = false;
    bool use_oracle = true;

    nlohmann::ordered_json to_json() const;
    DiscordOptions discord_options() const;
    SvetlichnyOptions svetlichny_options() const;
};

// Engine labels recorded per column.
inline constexpr const char* kEngineAnalytic = "analytic";
inline constexpr const char* kEngineAnalyticState = "analytic-state";  // numeric measure on a closed-form state
inline constexpr const char* kEngineOracle = "oracle";
inline constexpr const char* kEngineUnavailable = "unavailable";
inline constexpr const char* kUnavailableMarker = "NA";

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::map<std::string, std::string> engines;  // column -> engine label
    std::vector<std::vector<Cell>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
};

/// 12 significant digits, '.' separator, no locale dependence.
std::string format_number(double v);

std::string render_csv(const Table& t, const RunConfig& rc);
std::string render_json(const Table& t, const RunConfig& rc);
std::string render(const Table& t, const RunConfig& rc);

/// The measure set `ga` uses when none is requested. D2 and Svetlichny
/// are opt-in: each costs a numerical optimization per row.
std::vector<Measure> default_ga_measures();

/// Engine that `ga` would use for measure m at this configuration.
std::string ga_engine(Measure m, const GroverConfig& cfg, bool use_oracle);

Table cmd_ga(const RunConfig& rc);
Table cmd_gga(const RunConfig& rc);

struct VerifyResult {
    Table table;
    bool passed = true;
};
VerifyResult cmd_verify(const RunConfig& rc);

/// Writes fig2..fig5 CSV files plus a gnuplot script each into rc.out
/// (default "figures"); returns the paths written, in order.
std::vector<std::string> cmd_figures(const RunConfig& rc);

/// Writes `content` to `path` in binary mode, or to stdout when empty.
void write_output(const std::string& path, const std::string& content);

}  // namespace qcd

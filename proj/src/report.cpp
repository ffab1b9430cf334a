#include "qcd/report.hpp"

#include "qcd/amplitude_file.hpp"
#include "qcd/errors.hpp"
#include "qcd/gga.hpp"
#include "qcd/parallel.hpp"
#include "qcd/verify.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qcd {

namespace {

using ojson = nlohmann::ordered_json;

bool pair_measure(Measure m) { return m == Measure::E2 || m == Measure::En || m == Measure::Dn || m == Measure::M || m == Measure::D2; }

// Closed-form k-qubit state on the leading qubits; the whole state when k = n.
DensityMatrix leading_state(const GroverConfig& cfg, const SymmetricGAState& s, int k) {
    return k < cfg.n ? reduced_density(cfg, s, k) : full_density(cfg, s.r);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return kUnavailableMarker; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& v) const { return csv_field(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

ojson cell_json(const Cell& c) {
    struct Visitor {
        ojson operator()(std::monostate) const { return nullptr; }
        ojson operator()(std::int64_t v) const { return v; }
        // round-trip through the CSV text so both formats carry the same digits
        ojson operator()(double v) const {
            if (!std::isfinite(v)) return nullptr;
            return std::stod(format_number(v));
        }
        ojson operator()(const std::string& v) const { return v; }
        ojson operator()(bool v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

ojson tolerances(const RunConfig& rc) {
    ojson t = ojson::object();
    t["norm"] = tol::kNorm;
    t["hermitian"] = tol::kHermitian;
    t["trace"] = tol::kTrace;
    t["negative_eigenvalue"] = tol::kNegativeEigenvalue;
    t["support"] = tol::kSupport;
    t["discord_ftol"] = rc.discord_options().ftol;
    t["svetlichny_ftol"] = rc.svetlichny_options().ftol;
    return t;
}

std::string engine_list(const std::map<std::string, std::string>& engines, const std::vector<std::string>& columns) {
    std::string out;
    for (const std::string& c : columns) {
        const auto it = engines.find(c);
        if (it == engines.end()) continue;
        if (!out.empty()) out += ' ';
        out += c + '=' + it->second;
    }
    return out;
}

std::string summary_value(const ojson& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

GroverConfig ga_config(int n, std::uint64_t j) {
    if (n < 1) throw DomainError("n must be at least 1");
    if (j < 1) throw DomainError("j must be at least 1");
    if (n < 64 && j >= (std::uint64_t{1} << n))
        throw DomainError("j = " + std::to_string(j) + " needs at least one non-solution among 2^" +
                          std::to_string(n) + " items");
    return GroverConfig::make(n, j);
}

}  // namespace

// ------------------------------------------------------------------ config

ojson RunConfig::to_json() const {
    ojson c = ojson::object();
    c["command"] = command;
    c["n"] = n;
    c["j"] = j_values;
    c["r_max"] = r_max ? ojson(*r_max) : ojson(nullptr);
    ojson ms = ojson::array();
    for (Measure m : measures) ms.push_back(std::string(measure_name(m)));
    c["measures"] = ms;
    c["seed"] = seed;
    c["grid"] = std::to_string(grid_theta) + "x" + std::to_string(grid_phi);
    c["restarts"] = restarts;
    c["format"] = format == OutputFormat::csv ? "csv" : "json";
    c["init_file"] = init_file;
    c["points"] = points;
    c["max_n"] = max_n;
    c["inject_fault"] = inject_fault;
    c["use_oracle"] = use_oracle;
    return c;
}

DiscordOptions RunConfig::discord_options() const {
    DiscordOptions d;
    d.grid_theta = grid_theta;
    d.grid_phi = grid_phi;
    return d;
}

SvetlichnyOptions RunConfig::svetlichny_options() const {
    SvetlichnyOptions s;
    s.restarts = restarts;
    s.seed = seed;
    return s;
}

// --------------------------------------------------------------- rendering

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string render_csv(const Table& t, const RunConfig& rc) {
    std::ostringstream os;
    os << "# qcd " << t.name << " version=" << kVersion << " seed=" << rc.seed << '\n';
    const std::string engines = engine_list(t.engines, t.columns);
    if (!engines.empty()) os << "# engines " << engines << '\n';
    for (const auto& [key, value] : t.summary.items()) os << "# " << key << '=' << summary_value(value) << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string render_json(const Table& t, const RunConfig& rc) {
    ojson doc = ojson::object();
    doc["config"] = rc.to_json();
    doc["columns"] = t.columns;
    ojson rows = ojson::array();
    for (const auto& row : t.rows) {
        ojson r = ojson::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    if (!t.summary.empty()) doc["summary"] = t.summary;
    ojson meta = ojson::object();
    meta["version"] = kVersion;
    meta["command"] = t.name;
    meta["seed"] = rc.seed;
    meta["tolerances"] = tolerances(rc);
    ojson eng = ojson::object();
    for (const std::string& c : t.columns) {
        const auto it = t.engines.find(c);
        if (it != t.engines.end()) eng[c] = it->second;
    }
    meta["engines"] = eng;
    meta["unavailable_marker"] = nullptr;
    doc["metadata"] = std::move(meta);
    return doc.dump(2) + "\n";
}

std::string render(const Table& t, const RunConfig& rc) {
    return rc.format == OutputFormat::csv ? render_csv(t, rc) : render_json(t, rc);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed for " + path);
}

// ---------------------------------------------------------------------- ga

std::vector<Measure> default_ga_measures() {
    return {Measure::P, Measure::Cr, Measure::Cl1, Measure::E2, Measure::En, Measure::Dn, Measure::M};
}

std::string ga_engine(Measure m, const GroverConfig& cfg, bool use_oracle) {
    const int needed = m == Measure::Svetlichny ? 3 : pair_measure(m) ? 2 : 1;
    if (cfg.n < needed) return kEngineUnavailable;
    if (m == Measure::P || m == Measure::Cr || m == Measure::Cl1) return kEngineAnalytic;
    const bool symmetric = cfg.single_solution_at_zero();
    // the optimizer-based measures run on the closed-form reduced state
    if (symmetric && (m == Measure::D2 || m == Measure::Svetlichny)) return kEngineAnalyticState;
    if (symmetric) return kEngineAnalytic;
    if (use_oracle && cfg.n <= kDenseQubitCap) return kEngineOracle;
    return kEngineUnavailable;
}

Table cmd_ga(const RunConfig& rc) {
    const std::vector<Measure> measures = rc.measures.empty() ? default_ga_measures() : rc.measures;
    if (rc.j_values.empty()) throw DomainError("ga: no j values");

    struct Task {
        std::size_t config;
        std::int64_t r;
    };
    std::vector<GroverConfig> configs;
    std::vector<std::vector<std::string>> engines;  // [config][measure]
    std::vector<Task> tasks;
    for (std::uint64_t j : rc.j_values) {
        configs.push_back(ga_config(rc.n, j));
        const GroverConfig& cfg = configs.back();
        std::vector<std::string> e;
        for (Measure m : measures) e.push_back(ga_engine(m, cfg, rc.use_oracle));
        engines.push_back(std::move(e));
        const std::int64_t r_end = rc.r_max.value_or(optimal_iterations(cfg).value);
        if (r_end < 0) throw DomainError("ga: r-max must be nonnegative");
        for (std::int64_t r = 0; r <= r_end; ++r) tasks.push_back({configs.size() - 1, r});
    }

    Table t;
    t.name = "ga";
    t.columns = {"j", "r"};
    for (std::size_t im = 0; im < measures.size(); ++im) {
        const std::string col(measure_name(measures[im]));
        t.columns.push_back(col);
        std::string label = engines.front()[im];
        for (std::size_t c = 1; c < configs.size(); ++c) {
            if (engines[c][im] != engines.front()[im]) {
                label.clear();
                for (std::size_t k = 0; k < configs.size(); ++k)
                    label += (k ? ";" : "") + ("j" + std::to_string(configs[k].j) + ":" + engines[k][im]);
                break;
            }
        }
        t.engines[col] = label;
    }
    t.summary["n"] = rc.n;
    ojson ropt = ojson::object();
    for (const GroverConfig& cfg : configs) ropt["j" + std::to_string(cfg.j)] = optimal_iterations(cfg).value;
    t.summary["r_opt"] = ropt;

    const DiscordOptions dopts = rc.discord_options();
    const SvetlichnyOptions sopts = rc.svetlichny_options();
    t.rows = parallel_map(tasks.size(), [&](std::size_t i) {
        const Task& task = tasks[i];
        const GroverConfig& cfg = configs[task.config];
        const SymmetricGAState s = state_at(cfg, task.r);
        std::vector<Cell> row{static_cast<std::int64_t>(cfg.j), task.r};

        std::vector<Measure> via_oracle;
        for (std::size_t im = 0; im < measures.size(); ++im)
            if (engines[task.config][im] == kEngineOracle) via_oracle.push_back(measures[im]);
        MeasureReport oracle;
        if (!via_oracle.empty()) {
            OracleOptions oo;
            oo.discord = dopts;
            oo.svetlichny = sopts;
            oracle = run_and_measure(cfg, task.r, via_oracle, oo);
        }

        for (std::size_t im = 0; im < measures.size(); ++im) {
            const Measure m = measures[im];
            const std::string& engine = engines[task.config][im];
            if (engine == kEngineUnavailable) {
                row.emplace_back(std::monostate{});
            } else if (engine == kEngineOracle) {
                const auto v = oracle.get(m);
                row.push_back(v ? Cell(*v) : Cell(std::monostate{}));
            } else if (engine == kEngineAnalyticState) {
                const double v = m == Measure::D2 ? pairwise_discord(leading_state(cfg, s, 2), dopts).value
                                                  : svetlichny_max(leading_state(cfg, s, 3), sopts).value;
                row.emplace_back(v);
            } else {
                double v = 0.0;
                switch (m) {
                    case Measure::P: v = s.a * s.a; break;
                    case Measure::Cr: v = coherence_r_ga(cfg, s); break;
                    case Measure::Cl1: v = coherence_l1_ga(cfg, s); break;
                    case Measure::E2: v = concurrence_two_qubit_ga(cfg, s); break;
                    case Measure::En: v = concurrence_multiqubit_ga(cfg, s); break;
                    case Measure::Dn: v = genuine_discord_ga(cfg, s); break;
                    case Measure::M: v = chsh_M_ga(cfg, s); break;
                    default: throw Error("ga: no closed form for " + std::string(measure_name(m)));
                }
                row.emplace_back(v);
            }
        }
        return row;
    });
    return t;
}

// --------------------------------------------------------------------- gga

namespace {

Table gga_phi_family(const RunConfig& rc) {
    if (rc.n < 2 || rc.n > 30) throw DomainError("gga: phi family needs 2 <= n <= 30");
    if (rc.points < 2) throw DomainError("gga: need at least two sweep points");
    const std::size_t N = std::size_t{1} << rc.n;
    const std::vector<PhiFamily> sweep = phi_family_sweep(N, rc.points);
    Table t;
    t.name = "gga";
    t.columns = {"phi0", "phi1", "r_opt", "delta_c", "p_max"};
    for (const auto& c : t.columns) t.engines[c] = kEngineAnalytic;
    t.summary["N"] = static_cast<std::int64_t>(N);
    t.rows = parallel_map(sweep.size(), [&](std::size_t i) {
        const PhiFamily& fam = sweep[i];
        const AmplitudeDistribution d = phi_family_distribution(fam);
        return std::vector<Cell>{fam.phi0, fam.phi1, gga_optimal_time(d).continuous,
                                 phi_family_delta_coherence(fam), gga_pmax(d)};
    });
    return t;
}

Table gga_from_file(const RunConfig& rc) {
    const AmplitudeFile file = load_amplitude_file(rc.init_file);
    const AmplitudeDistribution d0 = file.distribution();
    const bool real = d0.is_real();
    const GGAOptimalTime ot = gga_optimal_time(d0);

    Table t;
    t.name = "gga";
    t.summary["n"] = file.n;
    t.summary["j"] = static_cast<std::int64_t>(d0.j());
    t.summary["N"] = static_cast<std::int64_t>(d0.N());
    if (real) {
        const GGAClosedForm cf = gga_closed_form(d0);
        t.summary["omega"] = std::stod(format_number(cf.omega));
        t.summary["beta"] = std::stod(format_number(cf.beta));
        t.summary["envelope"] = std::stod(format_number(cf.envelope));
        t.summary["degenerate_phase"] = cf.degenerate_phase;
    }
    t.summary["r_opt_continuous"] = std::stod(format_number(ot.continuous));
    t.summary["floor_r"] = ot.floor_r;
    t.summary["p_floor"] = std::stod(format_number(ot.p_floor));
    t.summary["ceil_r"] = ot.ceil_r;
    t.summary["p_ceil"] = std::stod(format_number(ot.p_ceil));
    t.summary["p_max"] = std::stod(format_number(gga_pmax(d0)));
    t.summary["sigma_l2"] = std::stod(format_number(nonsolution_variance(d0)));
    t.summary["used_scan"] = ot.used_scan;
    if (!ot.warning.empty()) t.summary["warning"] = ot.warning;

    t.columns = {"r", "k_mean", "l_mean"};
    if (!real) t.columns.insert(t.columns.end(), {"k_mean_im", "l_mean_im"});
    t.columns.push_back("P");
    for (std::size_t i = 0; i < d0.N(); ++i) {
        if (real) {
            t.columns.push_back("amp_" + std::to_string(i));
        } else {
            t.columns.push_back("amp_" + std::to_string(i) + "_re");
            t.columns.push_back("amp_" + std::to_string(i) + "_im");
        }
    }
    for (const auto& c : t.columns) t.engines[c] = "gga-iteration";

    const std::int64_t r_end = rc.r_max.value_or(std::max<std::int64_t>(ot.ceil_r, 1));
    if (r_end < 0) throw DomainError("gga: r-max must be nonnegative");
    AmplitudeDistribution d = d0;
    for (std::int64_t r = 0; r <= r_end; ++r) {
        if (r > 0) d = gga_iterate(d, 1);
        std::vector<Cell> row{r, d.k_mean().real(), d.l_mean().real()};
        if (!real) row.insert(row.end(), {d.k_mean().imag(), d.l_mean().imag()});
        row.emplace_back(d.solution_probability());
        for (const cplx& z : d.to_amplitudes(file.solutions)) {
            row.emplace_back(z.real());
            if (!real) row.emplace_back(z.imag());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

Table cmd_gga(const RunConfig& rc) { return rc.init_file.empty() ? gga_phi_family(rc) : gga_from_file(rc); }

// ------------------------------------------------------------------ verify

VerifyResult cmd_verify(const RunConfig& rc) {
    VerifyOptions vo;
    vo.max_n = rc.max_n;
    vo.seed = rc.seed;
    vo.inject_fault = rc.inject_fault;
    vo.discord = rc.discord_options();
    vo.svetlichny = rc.svetlichny_options();
    const VerifyReport rep = run_verify_suite(vo);

    VerifyResult out;
    out.passed = rep.passed;
    Table& t = out.table;
    t.name = "verify";
    t.columns = {"identity", "tolerance", "max_deviation", "cases", "worst_case", "passed"};
    for (const IdentityCheck& c : rep.checks)
        t.rows.push_back({c.name, c.tolerance, c.max_deviation, static_cast<std::int64_t>(c.cases), c.worst_case,
                          c.passed});
    t.summary["passed"] = rep.passed;
    t.summary["checks"] = static_cast<std::int64_t>(rep.checks.size());
    return out;
}

// ----------------------------------------------------------------- figures

namespace {

std::size_t leading_lines(const std::string& csv) {
    // comment lines plus the header row
    std::size_t count = 0;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        ++count;
        if (line.empty() || line[0] != '#') break;
    }
    return count;
}

std::string gnuplot_preamble(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    return "set datafile separator ','\n"
           "set terminal pngcairo size 900,600\n"
           "set output '" + title + ".png'\n"
           "set key outside right\n"
           "set xlabel '" + xlabel + "'\n"
           "set ylabel '" + ylabel + "'\n";
}

}  // namespace

std::vector<std::string> cmd_figures(const RunConfig& rc) {
    namespace fs = std::filesystem;
    const fs::path dir = rc.out.empty() ? fs::path("figures") : fs::path(rc.out);
    fs::create_directories(dir);
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const fs::path p = dir / name;
        write_output(p.string(), content);
        written.push_back(p.string());
    };
    RunConfig base = rc;
    base.format = OutputFormat::csv;
    base.r_max.reset();

    // fig2: C_r against r for j = 1..10
    {
        RunConfig c = base;
        c.command = "figures/fig2";
        c.j_values.clear();
        for (std::uint64_t j = 1; j <= 10; ++j)
            if (rc.n >= 64 || j < (std::uint64_t{1} << rc.n)) c.j_values.push_back(j);
        c.measures = {Measure::Cr};
        Table t = cmd_ga(c);
        t.name = "fig2";
        const std::string csv = render_csv(t, c);
        emit("fig2.csv", csv);
        emit("fig2.gp", gnuplot_preamble("fig2", "r", "C_r (bits)") +
                            "plot for [j=1:10] 'fig2.csv' skip " + std::to_string(leading_lines(csv)) +
                            " using 2:($1==j ? $3 : 1/0) with linespoints title sprintf('j=%d', j)\n");
    }
    // fig3: depletion against optimal time for the phi family at N = 1024
    {
        RunConfig c = base;
        c.command = "figures/fig3";
        c.n = 10;
        c.init_file.clear();
        Table t = cmd_gga(c);
        t.name = "fig3";
        const std::string csv = render_csv(t, c);
        emit("fig3.csv", csv);
        emit("fig3.gp", gnuplot_preamble("fig3", "r_opt", "delta C_r (bits)") + "plot 'fig3.csv' skip " +
                            std::to_string(leading_lines(csv)) + " using 3:4 with linespoints title 'phi family'\n");
    }
    // fig4 and fig5: entanglement and discord for a single solution
    const std::pair<const char*, std::vector<Measure>> panels[] = {
        {"fig4", {Measure::P, Measure::E2, Measure::En}},
        {"fig5", {Measure::P, Measure::D2, Measure::Dn}},
    };
    for (const auto& [name, ms] : panels) {
        RunConfig c = base;
        c.command = std::string("figures/") + name;
        c.j_values = {1};
        c.measures = ms;
        Table t = cmd_ga(c);
        t.name = name;
        const std::string csv = render_csv(t, c);
        const std::string skip = std::to_string(leading_lines(csv));
        const std::string file = std::string(name) + ".csv";
        emit(file, csv);
        emit(std::string(name) + ".gp",
             gnuplot_preamble(name, "r", "") + "plot '" + file + "' skip " + skip +
                 " using 2:3 with linespoints title 'P', '' skip " + skip + " using 2:4 with points title '" +
                 std::string(measure_name(ms[1])) + "', '' skip " + skip + " using 2:5 with points title '" +
                 std::string(measure_name(ms[2])) + "'\n");
    }
    return written;
}

}  // namespace qcd

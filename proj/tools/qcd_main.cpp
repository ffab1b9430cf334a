// qcd: sweeps, figure data and validation for coherence and correlations in
// Grover search.
//
//   qcd ga --n 11 --j 1..10 --measures cr
//   qcd gga --n 10 --points 50
//   qcd gga --init-file start.json --format json
//   qcd verify --max-n 8
//   qcd figures --out figures
//
// Exit status: 0 success, 1 validation failure, 2 usage or input error.

#include "qcd/errors.hpp"
#include "qcd/report.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty())
        throw qcd::ParseError(what + ": '" + s + "' is not a nonnegative integer");
    return v;
}

// "3", "1,2,5" or "1..10"
std::vector<std::uint64_t> parse_j(const std::string& arg) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= arg.size()) {
        const std::size_t comma = arg.find(',', start);
        const std::string part = trim(arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        const std::size_t dots = part.find("..");
        if (dots != std::string::npos) {
            const std::uint64_t lo = parse_uint(part.substr(0, dots), "--j");
            const std::uint64_t hi = parse_uint(part.substr(dots + 2), "--j");
            if (lo > hi) throw qcd::ParseError("--j: empty range '" + part + "'");
            for (std::uint64_t j = lo; j <= hi; ++j) out.push_back(j);
        } else {
            out.push_back(parse_uint(part, "--j"));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<qcd::Measure> parse_measures(const std::string& arg) {
    std::vector<qcd::Measure> out;
    if (trim(arg) == "all") return {qcd::kAllMeasures.begin(), qcd::kAllMeasures.end()};
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = arg.find(',', start);
        const std::string tok = trim(arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!tok.empty()) out.push_back(qcd::parse_measure(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw qcd::ParseError("--measures: empty list");
    return out;
}

void parse_grid(const std::string& arg, qcd::RunConfig& rc) {
    const std::size_t x = arg.find('x');
    if (x == std::string::npos) throw qcd::ParseError("--grid: expected THETAxPHI, got '" + arg + "'");
    rc.grid_theta = static_cast<int>(parse_uint(arg.substr(0, x), "--grid"));
    rc.grid_phi = static_cast<int>(parse_uint(arg.substr(x + 1), "--grid"));
    if (rc.grid_theta < 2 || rc.grid_phi < 1) throw qcd::ParseError("--grid: need at least 2x1 points");
}

// Config file: `key = value` per line, '#' starts a comment, keys are the
// long flag names. Entries become flags placed before the command-line
// arguments, so the command line wins.
std::vector<std::string> config_arguments(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qcd::ParseError(path + ": cannot open config file");
    std::vector<std::string> args;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw qcd::ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty() || key == "config")
            throw qcd::ParseError(path + ":" + std::to_string(lineno) + ": invalid key '" + key + "'");
        if (key == "inject-fault" || key == "no-oracle") {
            if (value == "true" || value == "1") args.push_back("--" + key);
            else if (value != "false" && value != "0")
                throw qcd::ParseError(path + ":" + std::to_string(lineno) + ": " + key + " expects true or false");
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

std::vector<std::string> with_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
    }
    if (config.empty() || args.size() < 2) return args;
    const std::vector<std::string> extra = config_arguments(config);
    // after the subcommand name so that the flags bind to it
    args.insert(args.begin() + 2, extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherence, entanglement, discord and nonlocality in Grover search"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    qcd::RunConfig rc;
    std::string j_arg = "1", measures_arg, grid = "64x128", format, config_path;
    std::int64_t r_max = -1;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", rc.seed, "Seed for every randomized component");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", rc.out, "Output file (directory for figures); stdout if omitted");
        sub->add_option("--grid", grid, "Discord grid THETAxPHI");
        sub->add_option("--restarts", rc.restarts, "Svetlichny optimizer restarts")->check(CLI::PositiveNumber);
        sub->add_option("--config", config_path, "key=value file; command-line flags take precedence");
    };

    CLI::App* ga = app.add_subcommand("ga", "Grover sweep over r = 0..r_opt");
    ga->add_option("--n", rc.n, "Qubit count")->check(CLI::Range(1, 1023));
    ga->add_option("--j", j_arg, "Solution count: 3, 1,2,5 or 1..10");
    ga->add_option("--r-max", r_max, "Last iteration (default r_opt)")->check(CLI::NonNegativeNumber);
    ga->add_option("--measures", measures_arg,
                   "Comma list of p,cr,cl1,e2,en,d2,dn,m,sv or 'all' (default p,cr,cl1,e2,en,dn,m; "
                   "d2 and sv run an optimizer per row, roughly 10 ms and 300 ms per row at n = 11)");
    ga->add_flag("--no-oracle", "Report NA instead of falling back to the statevector engine");
    common(ga);

    CLI::App* gga = app.add_subcommand("gga", "Generalized search: phi-family sweep or a given start");
    CLI::Option* gga_n = gga->add_option("--n", rc.n, "phi family: N = 2^n (default 10)")->check(CLI::Range(2, 30));
    gga->add_option("--points", rc.points, "phi family sweep points")->check(CLI::Range(2, 100000));
    gga->add_option("--init-file", rc.init_file, "JSON amplitude document");
    gga->add_option("--r-max", r_max, "Last iteration for --init-file")->check(CLI::NonNegativeNumber);
    common(gga);

    CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
    verify->add_option("--max-n", rc.max_n, "Largest n for oracle comparisons (<= 10)")->check(CLI::Range(2, 10));
    verify->add_flag("--inject-fault", rc.inject_fault, "Perturb closed forms to exercise the harness");
    common(verify);

    CLI::App* figures = app.add_subcommand("figures", "Write fig2..fig5 data and gnuplot scripts");
    CLI::Option* fig_n = figures->add_option("--n", rc.n, "Qubit count for fig2, fig4, fig5")->check(CLI::Range(3, 24));
    figures->add_option("--points", rc.points, "phi family sweep points")->check(CLI::Range(2, 100000));
    common(figures);

    try {
        std::vector<std::string> args = with_config(argc, argv);
        std::vector<char*> cargs;
        for (std::string& a : args) cargs.push_back(a.data());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const qcd::Error& e) {
        std::cerr << "qcd: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        parse_grid(grid, rc);
        if (r_max >= 0) rc.r_max = r_max;
        rc.format = format == "json" ? qcd::OutputFormat::json : qcd::OutputFormat::csv;

        if (ga->parsed()) {
            rc.command = "ga";
            rc.j_values = parse_j(j_arg);
            if (!measures_arg.empty()) rc.measures = parse_measures(measures_arg);
            rc.use_oracle = ga->count("--no-oracle") == 0;
            qcd::write_output(rc.out, qcd::render(qcd::cmd_ga(rc), rc));
        } else if (gga->parsed()) {
            rc.command = "gga";
            if (gga_n->count() == 0) rc.n = 10;
            qcd::write_output(rc.out, qcd::render(qcd::cmd_gga(rc), rc));
        } else if (verify->parsed()) {
            rc.command = "verify";
            if (format.empty()) rc.format = qcd::OutputFormat::json;
            const qcd::VerifyResult res = qcd::cmd_verify(rc);
            qcd::write_output(rc.out, qcd::render(res.table, rc));
            if (!res.passed) {
                std::cerr << "qcd verify: one or more identities failed\n";
                return kExitValidation;
            }
        } else if (figures->parsed()) {
            rc.command = "figures";
            if (fig_n->count() == 0) rc.n = 11;
            for (const std::string& p : qcd::cmd_figures(rc)) std::cout << p << '\n';
        }
    } catch (const qcd::NumericalConsistencyError& e) {
        std::cerr << "qcd: " << e.what() << '\n';
        return kExitValidation;
    } catch (const qcd::Error& e) {
        std::cerr << "qcd: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qcd: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}

// hingekit command line tool. Thin layer over the C interface: every command
// gets a JSON report from the library and renders it as text, or passes it
// through with --json.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hingekit/hingekit.h"

using nlohmann::json;

namespace {

struct Flags {
    std::string input;
    std::optional<double> tol;
    bool exact = false;
    bool json_out = false;
    std::string csv_path;
    int steps = 10;
    double step_size = 1e-2;
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string example_name;
    std::vector<std::string> example_args;
};

struct Failure {
    int code;
};

[[noreturn]] void fail(hk_status st) {
    std::cerr << "hingekit: " << hk_last_error() << "\n";
    throw Failure{static_cast<int>(st)};
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "hingekit: cannot read " << path << "\n";
        throw Failure{HK_ERR_INPUT};
    }
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "hingekit: cannot write " << path << "\n";
        throw Failure{HK_ERR_INPUT};
    }
}

std::string take(char* s) {
    std::string out = s ? s : "";
    hk_string_free(s);
    return out;
}

class ScenarioHandle {
public:
    explicit ScenarioHandle(const std::string& text) {
        if (hk_status st = hk_scenario_parse(text.c_str(), &h_); st != HK_OK) fail(st);
    }
    ~ScenarioHandle() { hk_scenario_free(h_); }
    ScenarioHandle(const ScenarioHandle&) = delete;
    ScenarioHandle& operator=(const ScenarioHandle&) = delete;
    const hk_scenario* get() const { return h_; }

private:
    hk_scenario* h_ = nullptr;
};

hk_options options(const Flags& f) {
    hk_options o;
    hk_options_init(&o);
    if (f.tol) o.tol = *f.tol;
    o.exact = f.exact ? 1 : 0;
    o.steps = f.steps;
    o.step_size = f.step_size;
    o.samples = f.samples;
    o.seed = f.seed;
    o.threads = f.threads;
    return o;
}

// Entries below 1e-12 of the largest one are rounding noise; printed as 0.
std::string vec_str(const json& v) {
    double scale = 0.0;
    for (const auto& x : v)
        if (x.is_number()) scale = std::max(scale, std::abs(x.get<double>()));
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s << ", ";
        if (v[i].is_string()) {
            s << v[i].get<std::string>();
        } else {
            const double x = v[i].get<double>();
            s << (std::abs(x) <= 1e-12 * scale ? 0.0 : x);
        }
    }
    s << ")";
    return s.str();
}

void print_sigmas(std::ostream& out, const json& cert) {
    if (!cert.contains("singular_values")) return;
    out << "  singular values:";
    for (const auto& s : cert["singular_values"]) out << " " << s.get<double>();
    out << "\n  threshold: " << cert["threshold"].get<double>() << "\n";
}

void print_functional(std::ostream& out, const json& r) {
    if (r.contains("hyperplane")) out << "  hyperplane functional: " << vec_str(r["hyperplane"]) << "\n";
    if (r.contains("exact") && r["exact"].contains("certificate") &&
        r["exact"]["certificate"].contains("exact_conull"))
        out << "  exact functional: " << vec_str(r["exact"]["certificate"]["exact_conull"]) << "\n";
}

void render_chain(const json& r) {
    auto& out = std::cout;
    out << "chain in R^" << r["d"] << " with " << r["bodies"] << " bodies\n";
    if (r.contains("endpoint")) {
        const auto& e = r["endpoint"];
        out << "end-point differential: rank " << e["rank"] << " of " << e["full_rank"] << "\n";
        print_sigmas(out, e["certificate"]);
        if (e["singular"].get<bool>()) {
            out << "verdict: singular (rank " << e["rank"] << " < " << e["full_rank"] << ")\n";
            for (const auto& l : e.value("witness_lines", json::array()))
                out << "  witness line through " << vec_str(l["point"]) << " along " << vec_str(l["dir"]) << "\n";
        } else {
            out << "verdict: regular\n";
        }
        if (e.contains("exact")) out << "exact rank at theta = 0: " << e["exact"]["rank"] << "\n";
    }
    const auto& f = r["frame"];
    out << "end-frame (k = " << r["k"] << "): rank " << f["rank"] << " of " << f["full_rank"]
        << (f["singular"].get<bool>() ? ", singular" : ", regular") << "\n";
    if (f.contains("hyperplane")) out << "  hyperplane functional: " << vec_str(f["hyperplane"]) << "\n";
}

void render_cycle(const json& r) {
    auto& out = std::cout;
    const int n = r["hinges"];
    const bool has_exact = r.contains("exact");
    const int rank = has_exact ? r["exact"]["rank"].get<int>() : r["rank"].get<int>();
    const int full = r["full_rank"];
    const int mobility = n - rank;
    out << "cycle of " << n << " hinges in R^" << r["d"] << "\n";
    out << "rank " << rank << " of " << full << (has_exact ? " (exact)" : "") << "\n";
    print_sigmas(out, r["certificate"]);
    out << "mobility " << mobility << ", fiber dimension " << r["fiber_dimension"] << "\n";
    if (rank < full)
        out << "verdict: flexible (rank " << rank << " < " << full << ")\n";
    else if (mobility > 0)
        out << "verdict: flexible (mobility " << mobility << ")\n";
    else
        out << "verdict: rigid (rank " << rank << ")\n";
    print_functional(out, r);
}

void render_platform(const json& r) {
    auto& out = std::cout;
    const bool has_exact = r.contains("exact");
    const int rank = has_exact ? r["exact"]["rank"].get<int>() : r["rank"].get<int>();
    const int full = r["full_rank"];
    out << "platform in R^" << r["d"] << ": leg rank " << rank << " of " << full << (has_exact ? " (exact)" : "")
        << "\n";
    print_sigmas(out, r["certificate"]);
    if (rank < full)
        out << "verdict: flexible (rank " << rank << " < " << full << ")\n";
    else
        out << "verdict: rigid (rank " << rank << ")\n";
    print_functional(out, r);
    if (r.contains("skew_form")) {
        out << "  skew form:\n";
        for (const auto& row : r["skew_form"]) out << "    " << vec_str(row) << "\n";
    }
}

void render_linkage(const json& r) {
    auto& out = std::cout;
    out << "linkage in R^" << r["d"] << ": " << r["vertices"].size() << " vertices, " << r["edges"].size()
        << " edges\n";
    for (const auto& e : r["edges"])
        out << "  " << e["a"].get<std::string>() << " -- " << e["b"].get<std::string>() << "  "
            << e["length"].get<double>() << "\n";
    const auto& m = r["moduli"];
    out << "moduli: " << m["independent"].size() << " independent, " << m["dependent"].size() << " dependent\n";
    if (!m["note"].get<std::string>().empty()) out << "  " << m["note"].get<std::string>() << "\n";
}

void render_flex(const json& r) {
    auto& out = std::cout;
    out << "flex: " << r["steps"] << " steps of " << r["step_size"].get<double>() << " rad\n";
    out << "max closure residual " << r["max_residual"].get<double>() << "\n";
    out << "final theta " << vec_str(r["final_theta"]) << "\n";
    if (r.contains("linkage")) {
        const auto& l = r["linkage"];
        out << "linkage edge drift " << l["max_length_discrepancy"].get<double>() << ", orientations "
            << (l["orientations_constant"].get<bool>() ? "constant" : "changed") << "\n";
    }
}

void render_sweep(const json& r) {
    auto& out = std::cout;
    out << "sweep (" << r["test"].get<std::string>() << " test): " << r["samples"] << " samples, seed " << r["seed"]
        << "\n";
    out << "singular " << r["singular_count"] << "\n";
    out << "sigma_min min " << r["min_sigma"].get<double>() << ", mean " << r["mean_sigma"].get<double>() << "\n";
}

using ReportFn = hk_status (*)(const hk_scenario*, const hk_options*, char**);
using ReportCsvFn = hk_status (*)(const hk_scenario*, const hk_options*, char**, char**);

void emit(const Flags& f, const std::string& report, void (*render)(const json&)) {
    if (f.json_out)
        std::cout << report;
    else
        render(json::parse(report));
}

int run_report(const Flags& f, ReportFn fn, void (*render)(const json&)) {
    ScenarioHandle sc(read_input(f.input));
    const hk_options o = options(f);
    char* raw = nullptr;
    if (hk_status st = fn(sc.get(), &o, &raw); st != HK_OK) fail(st);
    const std::string report = take(raw);
    emit(f, report, render);
    if (!f.csv_path.empty()) {
        std::cerr << "hingekit: --csv is ignored by this command\n";
    }
    return 0;
}

// Without --csv, sweep writes its rows to stdout; flex prints the path after the report.
int run_report_csv(const Flags& f, ReportCsvFn fn, void (*render)(const json&), bool csv_is_main) {
    ScenarioHandle sc(read_input(f.input));
    const hk_options o = options(f);
    char* raw = nullptr;
    char* raw_csv = nullptr;
    if (hk_status st = fn(sc.get(), &o, &raw, &raw_csv); st != HK_OK) fail(st);
    const std::string report = take(raw);
    const std::string csv = take(raw_csv);
    if (!f.csv_path.empty()) {
        write_file(f.csv_path, csv);
        emit(f, report, render);
    } else if (csv_is_main && !f.json_out) {
        std::cout << csv;
    } else {
        emit(f, report, render);
        if (!f.json_out) std::cout << csv;
    }
    return 0;
}

int run_example(const Flags& f) {
    std::vector<const char*> args;
    for (const auto& a : f.example_args) args.push_back(a.c_str());
    char* raw = nullptr;
    if (hk_status st = hk_example(f.example_name.c_str(), args.data(), args.size(), f.seed, &raw); st != HK_OK)
        fail(st);
    std::cout << take(raw);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hingekit: singularities of hinged chains, cycles and platforms"};
    app.set_version_flag("--version", hk_version());
    app.require_subcommand(1);
    Flags f;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("input", f.input, "scenario JSON file, or - for stdin")->required();
        cmd->add_option("--tol", f.tol, "relative rank tolerance (default 1e-10)");
        cmd->add_flag("--json", f.json_out, "print the JSON report instead of text");
        cmd->add_option("--csv", f.csv_path, "write CSV output to PATH");
    };

    auto* chain = app.add_subcommand("analyze-chain", "end-point and end-frame singularity test");
    add_input(chain);
    chain->add_flag("--exact", f.exact, "certify the rank in rational arithmetic (theta = 0)");

    auto* cycle = app.add_subcommand("analyze-cycle", "rank and mobility of a hinged cycle");
    add_input(cycle);
    cycle->add_flag("--exact", f.exact, "certify the rank in rational arithmetic");

    auto* platform = app.add_subcommand("analyze-platform", "flexibility of a leg platform");
    add_input(platform);
    platform->add_flag("--exact", f.exact, "certify the rank in rational arithmetic");

    auto* linkage = app.add_subcommand("convert-linkage", "bar-and-joint linkage of a generic cycle");
    add_input(linkage);

    auto* flex = app.add_subcommand("flex", "follow a flex of a hinged cycle");
    add_input(flex);
    flex->add_option("--steps", f.steps, "number of steps")->check(CLI::NonNegativeNumber);
    flex->add_option("--step-size", f.step_size, "step length in radians");

    auto* sweep = app.add_subcommand("sweep", "seeded Monte Carlo scan of the configuration torus");
    add_input(sweep);
    sweep->add_option("--samples", f.samples, "number of samples")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", f.seed, "generator seed");
    sweep->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);

    auto* example = app.add_subcommand("example", "print a classical fixture as scenario JSON");
    example->add_option("name", f.example_name, "fixture name")->required();
    example->add_option("args", f.example_args, "fixture parameters");
    example->add_option("--seed", f.seed, "seed for random fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : HK_ERR_USAGE;
    }

    try {
        if (*chain) return run_report(f, hk_analyze_chain, render_chain);
        if (*cycle) return run_report(f, hk_analyze_cycle, render_cycle);
        if (*platform) return run_report(f, hk_analyze_platform, render_platform);
        if (*linkage) return run_report(f, hk_convert_linkage, render_linkage);
        if (*flex) return run_report_csv(f, hk_flex, render_flex, false);
        if (*sweep) return run_report_csv(f, hk_sweep, render_sweep, true);
        if (*example) return run_example(f);
    } catch (const Failure& e) {
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "hingekit: " << e.what() << "\n";
        return HK_ERR_INTERNAL;
    }
    return HK_ERR_USAGE;
}

#include "hingekit/hingekit.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "hingekit/classical.hpp"
#include "hingekit/errors.hpp"
#include "hingekit/report.hpp"

struct hk_scenario {
    hingekit::Scenario scenario;
};

namespace {

thread_local std::string last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
hk_status guarded(F&& f) {
    try {
        f();
        return HK_OK;
    } catch (const hingekit::InputError& e) {
        last_error = e.what();
        return HK_ERR_INPUT;
    } catch (const hingekit::DegeneracyError& e) {
        last_error = e.what();
        return HK_ERR_DEGENERATE;
    } catch (const hingekit::ConsistencyError& e) {
        last_error = e.what();
        return HK_ERR_INTERNAL;
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("malformed JSON: ") + e.what();
        return HK_ERR_INPUT;
    } catch (const std::exception& e) {
        last_error = std::string("internal error: ") + e.what();
        return HK_ERR_INTERNAL;
    } catch (...) {
        last_error = "internal error";
        return HK_ERR_INTERNAL;
    }
}

hk_status usage(const char* what) {
    last_error = what;
    return HK_ERR_USAGE;
}

hingekit::ReportOptions resolve(const hingekit::Scenario& s, const hk_options* opts) {
    hk_options o;
    hk_options_init(&o);
    if (opts) o = *opts;
    hingekit::ReportOptions r;
    if (o.tol > 0)
        r.tol = o.tol;
    else if (s.tol)
        r.tol = *s.tol;
    r.exact = o.exact != 0;
    r.steps = o.steps;
    r.step_size = o.step_size;
    r.samples = o.samples;
    r.seed = o.seed;
    r.threads = o.threads == 0 ? 1 : o.threads;
    return r;
}

template <class Report>
hk_status run_report(const hk_scenario* sc, const hk_options* opts, char** out, Report report) {
    if (!sc || !out) return usage("null argument");
    *out = nullptr;
    return guarded([&] {
        const auto j = report(sc->scenario, resolve(sc->scenario, opts));
        *out = dup_string(j.dump(2) + "\n");
    });
}

template <class Report>
hk_status run_report_csv(const hk_scenario* sc, const hk_options* opts, char** out, char** csv_out, Report report) {
    if (!sc || !out || !csv_out) return usage("null argument");
    *out = nullptr;
    *csv_out = nullptr;
    return guarded([&] {
        std::string csv;
        const auto j = report(sc->scenario, resolve(sc->scenario, opts), csv);
        char* a = dup_string(j.dump(2) + "\n");
        try {
            *csv_out = dup_string(csv);
        } catch (...) {
            std::free(a);
            throw;
        }
        *out = a;
    });
}

} // namespace

extern "C" {

const char* hk_version(void) { return "0.1.0"; }

const char* hk_last_error(void) { return last_error.c_str(); }

void hk_options_init(hk_options* opts) {
    if (!opts) return;
    opts->tol = 0.0;
    opts->exact = 0;
    opts->steps = 10;
    opts->step_size = 1e-2;
    opts->samples = 100;
    opts->seed = 0;
    opts->threads = 1;
}

hk_status hk_scenario_parse(const char* json_text, hk_scenario** out) {
    if (!json_text || !out) return usage("null argument");
    *out = nullptr;
    return guarded([&] { *out = new hk_scenario{hingekit::parse_scenario(json_text)}; });
}

void hk_scenario_free(hk_scenario* scenario) { delete scenario; }

const char* hk_scenario_kind(const hk_scenario* scenario) {
    return scenario ? hingekit::to_string(scenario->scenario.kind) : "";
}

hk_status hk_scenario_emit(const hk_scenario* scenario, char** json_out) {
    if (!scenario || !json_out) return usage("null argument");
    *json_out = nullptr;
    return guarded([&] { *json_out = dup_string(hingekit::emit_scenario(scenario->scenario)); });
}

hk_status hk_analyze_chain(const hk_scenario* s, const hk_options* o, char** r) {
    return run_report(s, o, r, hingekit::analyze_chain_report);
}

hk_status hk_analyze_cycle(const hk_scenario* s, const hk_options* o, char** r) {
    return run_report(s, o, r, hingekit::analyze_cycle_report);
}

hk_status hk_analyze_platform(const hk_scenario* s, const hk_options* o, char** r) {
    return run_report(s, o, r, hingekit::analyze_platform_report);
}

hk_status hk_convert_linkage(const hk_scenario* s, const hk_options* o, char** r) {
    return run_report(s, o, r, hingekit::convert_linkage_report);
}

hk_status hk_flex(const hk_scenario* s, const hk_options* o, char** r, char** csv) {
    return run_report_csv(s, o, r, csv, hingekit::flex_report);
}

hk_status hk_sweep(const hk_scenario* s, const hk_options* o, char** r, char** csv) {
    return run_report_csv(s, o, r, csv, hingekit::sweep_report);
}

hk_status hk_example(const char* name, const char* const* args, size_t nargs, uint64_t seed, char** scenario_json) {
    if (!name || !scenario_json || (nargs && !args)) return usage("null argument");
    *scenario_json = nullptr;
    return guarded([&] {
        std::vector<std::string> a(args, args + nargs);
        *scenario_json = dup_string(hingekit::emit_scenario(hingekit::classical_scenario(name, a, seed)));
    });
}

void hk_string_free(char* s) { std::free(s); }

} // extern "C"

#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <string>
#include <thread>

#include <json.hpp>

#include "hingekit/hingekit.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    hk_string_free(s);
    return out;
}

std::string example(const char* name, std::uint64_t seed = 0) {
    char* out = nullptr;
    REQUIRE(hk_example(name, nullptr, 0, seed, &out) == HK_OK);
    return take(out);
}

struct Handle {
    hk_scenario* h = nullptr;
    explicit Handle(const std::string& text) { REQUIRE(hk_scenario_parse(text.c_str(), &h) == HK_OK); }
    ~Handle() { hk_scenario_free(h); }
};

} // namespace

TEST_CASE("parse, emit and kind") {
    const auto text = example("desargues");
    Handle s(text);
    CHECK(std::string(hk_scenario_kind(s.h)) == "platform");
    char* out = nullptr;
    REQUIRE(hk_scenario_emit(s.h, &out) == HK_OK);
    CHECK(take(out) == text);
}

TEST_CASE("analysis calls return JSON") {
    Handle tc(example("twisted-cubic-tangents"));
    hk_options opt;
    hk_options_init(&opt);
    opt.exact = 1;
    char* out = nullptr;
    REQUIRE(hk_analyze_cycle(tc.h, &opt, &out) == HK_OK);
    const auto j = nlohmann::json::parse(take(out));
    CHECK(j["rank"] == 5);
    CHECK(j["exact"]["rank"] == 5);

    Handle arm(example("planar-arm"));
    REQUIRE(hk_analyze_chain(arm.h, nullptr, &out) == HK_OK);
    CHECK(nlohmann::json::parse(take(out))["endpoint"]["singular"] == true);

    Handle cyc(example("generic-cycle", 3));
    REQUIRE(hk_convert_linkage(cyc.h, nullptr, &out) == HK_OK);
    CHECK(nlohmann::json::parse(take(out)).contains("moduli"));
}

TEST_CASE("tolerance precedence") {
    // a scenario tolerance applies unless the caller overrides it
    auto doc = nlohmann::json::parse(example("twisted-cubic-tangents"));
    doc["tol"] = 1e-3;
    Handle s(doc.dump());
    char* out = nullptr;
    REQUIRE(hk_analyze_cycle(s.h, nullptr, &out) == HK_OK);
    CHECK(nlohmann::json::parse(take(out))["tol"] == 1e-3);
    hk_options opt;
    hk_options_init(&opt);
    opt.tol = 1e-8;
    REQUIRE(hk_analyze_cycle(s.h, &opt, &out) == HK_OK);
    CHECK(nlohmann::json::parse(take(out))["tol"] == 1e-8);
}

TEST_CASE("flex and sweep return CSV") {
    char* out = nullptr;
    char* csv = nullptr;
    const char* args[] = {"3", "7"};
    REQUIRE(hk_example("generic-cycle", args, 2, 4, &out) == HK_OK);
    Handle c(take(out));
    hk_options opt;
    hk_options_init(&opt);
    opt.steps = 3;
    REQUIRE(hk_flex(c.h, &opt, &out, &csv) == HK_OK);
    take(out);
    const auto path = take(csv);
    CHECK(path.rfind("step,theta_1,", 0) == 0);
    CHECK(std::count(path.begin(), path.end(), '\n') == 5);

    opt.samples = 20;
    opt.seed = 9;
    REQUIRE(hk_sweep(c.h, &opt, &out, &csv) == HK_OK);
    take(out);
    const auto one = take(csv);
    opt.threads = 4;
    REQUIRE(hk_sweep(c.h, &opt, &out, &csv) == HK_OK);
    take(out);
    CHECK(take(csv) == one);
}

TEST_CASE("status codes") {
    hk_scenario* h = nullptr;
    CHECK(hk_scenario_parse("{", &h) == HK_ERR_INPUT);
    CHECK(h == nullptr);
    CHECK(std::string(hk_last_error()).find("malformed JSON") == 0);
    CHECK(hk_scenario_parse(nullptr, &h) == HK_ERR_USAGE);

    const char* onaxis = R"({"kind": "chain", "d": 3,
      "axes": [{"origin": [0, 0, 0], "dirs": [[0, 0, 1]]}], "end_frame": {"origin": [0, 0, 5]}})";
    CHECK(hk_scenario_parse(onaxis, &h) == HK_ERR_INPUT);

    // parallel consecutive hinges: not generic
    const char* par = R"({"kind": "cycle", "d": 3, "axes": [
      {"origin": [0, 0, 0], "dirs": [[0, 0, 1]]}, {"origin": [1, 0, 0], "dirs": [[0, 0, 1]]},
      {"origin": [0, 1, 0], "dirs": [[1, 0, 0]]}, {"origin": [0, 0, 2], "dirs": [[0, 1, 0]]}]})";
    Handle p(par);
    char* out = nullptr;
    CHECK(hk_convert_linkage(p.h, nullptr, &out) == HK_ERR_DEGENERATE);
    CHECK(out == nullptr);
    CHECK(std::string(hk_last_error()).find("not generic") != std::string::npos);

    // rigid cycle cannot flex
    char* csv = nullptr;
    const char* six[] = {"3", "6"};
    REQUIRE(hk_example("generic-cycle", six, 2, 2, &out) == HK_OK);
    Handle rigid(take(out));
    CHECK(hk_flex(rigid.h, nullptr, &out, &csv) == HK_ERR_DEGENERATE);

    // wrong kind for the command
    CHECK(hk_analyze_platform(rigid.h, nullptr, &out) == HK_ERR_INPUT);
    CHECK(hk_example("nope", nullptr, 0, 0, &out) == HK_ERR_INPUT);
    CHECK(hk_analyze_chain(nullptr, nullptr, &out) == HK_ERR_USAGE);
}

TEST_CASE("last error is per thread") {
    hk_scenario* h = nullptr;
    CHECK(hk_scenario_parse("{", &h) == HK_ERR_INPUT);
    std::string other;
    std::thread t([&] {
        hk_scenario* g = nullptr;
        hk_scenario_parse(R"({"kind": 3})", &g);
        other = hk_last_error();
    });
    t.join();
    CHECK(std::string(hk_last_error()).find("malformed JSON") == 0);
    CHECK(other.find("/kind") == 0);
    CHECK(std::strlen(hk_version()) > 0);
}

#pragma once

// JSON reports shared by the C API and the command line tool.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hingekit/scenario.hpp"

namespace hingekit {

struct ReportOptions {
    double tol = kDefaultRankTol;
    bool exact = false;
    int steps = 10;
    double step_size = 1e-2;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

nlohmann::json analyze_chain_report(const Scenario& s, const ReportOptions& opt);
nlohmann::json analyze_cycle_report(const Scenario& s, const ReportOptions& opt);
nlohmann::json analyze_platform_report(const Scenario& s, const ReportOptions& opt);
nlohmann::json convert_linkage_report(const Scenario& s, const ReportOptions& opt);
/// Also returns the path as CSV (step, theta_1.., residual) through `csv`.
nlohmann::json flex_report(const Scenario& s, const ReportOptions& opt, std::string& csv);
nlohmann::json sweep_report(const Scenario& s, const ReportOptions& opt, std::string& csv);

nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const RVec& v);

} // namespace hingekit

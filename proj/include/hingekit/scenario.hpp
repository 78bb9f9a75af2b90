#pragma once

// Scenario documents: the JSON input of the command line tool.
//
//   {"kind": "chain" | "cycle" | "platform", "d": 3,
//    "axes": [{"origin": [..], "dirs": [[..], ..]}, ..],
//    "end_frame": {"origin": [..], "vecs": [[..], ..]},
//    "panel": false, "legs": [{"p": [..], "q": [..]}, ..],
//    "theta": [..], "seed": 7, "tol": 1e-10}
//
// Numbers may be JSON numbers or strings "a/b"; a document whose numbers are
// all integers or rational strings also carries exact data for --exact.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hingekit/analysis.hpp"

namespace hingekit {

enum class ScenarioKind { Chain, Cycle, Platform };

const char* to_string(ScenarioKind kind);

/// Coordinates as given in the document; `exact` is set when every entry is rational.
struct PointSpec {
    Vec value;
    std::optional<RVec> exact;
};

struct AxisSpec {
    PointSpec origin;
    std::vector<PointSpec> dirs;
};

struct FrameSpec {
    PointSpec origin;
    std::vector<PointSpec> vecs;
};

struct LegSpec {
    PointSpec p;
    PointSpec q;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::Chain;
    int d = 0;
    std::vector<AxisSpec> axis_specs;
    std::optional<FrameSpec> frame_spec;
    std::vector<LegSpec> leg_specs;
    bool panel = false;
    std::optional<Vec> theta;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;

    // Derived on validation.
    std::vector<Axis> axes;
    std::optional<Frame> end_frame;

    bool has_exact_axes() const;
    bool has_exact_legs() const;
    std::vector<ExactAxis> exact_axes() const;
    ExactPlatform exact_platform() const;
    Platform platform() const;
    Chain chain() const;  // chain or cycle, by kind
    Configuration configuration() const;
};

/// Orthonormalizes axes and frames and checks the semantic rules of `kind`.
void validate(Scenario& s);

Scenario parse_scenario(const std::string& json_text);
std::string emit_scenario(const Scenario& s);

bool operator==(const PointSpec& a, const PointSpec& b);
bool same_document(const Scenario& a, const Scenario& b);

PointSpec point_spec(const Vec& v);
PointSpec point_spec(const RVec& v);

} // namespace hingekit

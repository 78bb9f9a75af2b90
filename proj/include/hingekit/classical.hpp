#pragma once

// Classical fixtures. Rational ones carry exact data so their ranks can be
// certified without tolerances.

#include <cstdint>
#include <string>
#include <vector>

#include "hingekit/scenario.hpp"

namespace hingekit {

/// Tangent lines of t -> (t, t^2, t^3) at the given parameters (distinct).
Scenario twisted_cubic_tangents(const std::vector<Rational>& ts);

/// Three random rational axes followed by their images under (x,y,z) -> (-x,-y,z).
Scenario bricard_symmetric_six(std::uint64_t seed);

/// The six bond lines of a cyclohexane ring; "chair" or "boat".
Scenario cyclohexane_panels(const std::string& conformation);

/// Two triangles in perspective from the origin; `offset` moves q_1 off perspective.
Scenario desargues(const Rational& offset);

/// Planar serial arm along the x-axis with the given bar lengths.
Scenario planar_arm(const std::vector<Rational>& lengths);

/// n random rational axes in R^d, read as a closed cycle at theta = 0.
Scenario generic_cycle(int d, int n, std::uint64_t seed);

/// Dispatch by name; `args` are the positional parameters of the fixture.
Scenario classical_scenario(const std::string& name, const std::vector<std::string>& args, std::uint64_t seed);

/// Names accepted by classical_scenario.
const std::vector<std::string>& classical_names();

/// The linear involution of R^4 induced by (x,y,z) -> (-x,-y,z), lifted to Lambda^2.
ExactExteriorVector half_turn_z(const ExactExteriorVector& line);

} // namespace hingekit

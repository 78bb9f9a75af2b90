#pragma once

// Serial body-and-hinge chains and hinged cycles. The configuration torus is
// charted so that theta = 0 is the reference placement; the rotation about
// hinge i moves bodies i+1..n as one piece.

#include <functional>
#include <optional>
#include <vector>

#include "hingekit/geometry.hpp"

namespace hingekit {

inline constexpr double kFiberTol = 1e-10;
inline constexpr int kMaxProjectionIterations = 50;

/// Bodies B_1..B_n joined by hinges A_1..A_{n-1}; B_1 is the ambient space.
/// A cycle additionally stores the closing hinge A_n, and its end frame is
/// the (d-2)-frame of A_n carried by B_n.
struct Chain {
    int d = 0;
    std::vector<Axis> ref_axes;
    Frame end_frame;
    bool is_cycle = false;
    std::optional<Axis> closing_axis;
    bool panel = false;

    int bodies() const { return static_cast<int>(ref_axes.size()) + 1; }
    int joints() const { return static_cast<int>(ref_axes.size()); }
    /// All n hinges of a cycle (A_1..A_n); the open hinges for a chain.
    std::vector<Axis> all_axes() const;
};

Chain make_chain(int d, std::vector<Axis> axes, Frame end_frame, bool panel = false);
/// `axes` are A_1..A_n, the last one closing the cycle.
Chain make_cycle(std::vector<Axis> axes, bool panel = false);

struct Configuration {
    Vec angles;

    static Configuration zeros(int joints) { return {Vec::Zero(joints)}; }
};

struct Placement {
    std::vector<Axis> axes_at;
    Frame frame_at;
    std::vector<Isometry> body_isometries;  // g_1 (identity) .. g_n
};

Placement forward_kinematics(const Chain& c, const Configuration& theta);

/// d x (n-1) analytic differential of the end-point map (requires k = 0).
Mat endpoint_jacobian(const Chain& c, const Configuration& theta);

/// d(k+1) x (n-1) analytic differential of the flattened end-frame map.
Mat frame_jacobian(const Chain& c, const Configuration& theta);

std::vector<PluckerPoint> frame_columns(const Chain& c, const Configuration& theta);

using ConfigurationMap = std::function<Vec(const Configuration&)>;

/// Central differences with step h in every angle.
Mat numerical_jacobian(const ConfigurationMap& map, const Configuration& theta, double h);

Vec endpoint_map(const Chain& c, const Configuration& theta);
Vec frame_map(const Chain& c, const Configuration& theta);

/// Flattened frame difference E(theta) - E(0); zero on the cycle fiber.
Vec closure_residual(const Chain& c, const Configuration& theta);

/// Orthonormal kernel basis (columns) of the end-frame differential.
Mat fiber_tangent(const Chain& c, const Configuration& theta, double tol = kDefaultRankTol);

/// Step along `direction` and project back onto the closure fiber by
/// Gauss-Newton with step halving.
Configuration flex_cycle(const Chain& c, const Configuration& theta, const Vec& direction, double step,
                         double tol = kFiberTol);

/// Repeated flex_cycle steps. The tangent is re-extracted at every point and
/// kept pointing the same way as the previous one. Returns steps + 1 configurations.
std::vector<Configuration> flex_path(const Chain& c, const Configuration& start, int steps, double step,
                                     double tol = kFiberTol);

} // namespace hingekit

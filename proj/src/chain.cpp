#include "hingekit/chain.hpp"

#include <cmath>

#include "hingekit/errors.hpp"

namespace hingekit {

std::vector<Axis> Chain::all_axes() const {
    std::vector<Axis> out = ref_axes;
    if (closing_axis) out.push_back(*closing_axis);
    return out;
}

namespace {

double distance_to_axis(const Vec& p, const Axis& a) { return (p - project_affine(p, as_subspace(a))).norm(); }

// Consecutive hinges of a panel span at most a hyperplane.
bool spans_panel(const Axis& a, const Axis& b) {
    const int d = a.dim;
    Mat m(d, 2 * (d - 2) + 1);
    int c = 0;
    for (const auto& v : a.dirs) m.col(c++) = v;
    for (const auto& v : b.dirs) m.col(c++) = v;
    m.col(c) = b.origin - a.origin;
    return matrix_rank(m, 1e-10).rank <= d - 1;
}

void validate_frame(const Frame& f, int d) {
    if (f.dim != d || f.origin.size() != d) throw DimensionError("end frame dimension differs from the chain");
    if (f.k() > d) throw DimensionError("end frame has more than d vectors");
    for (int i = 0; i < f.k(); ++i) {
        if (f.vecs[i].size() != d) throw DimensionError("end frame vector has wrong dimension");
        for (int j = 0; j <= i; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(f.vecs[i].dot(f.vecs[j]) - want) > 1e-10)
                throw SemanticError("end frame vectors must be orthonormal");
        }
    }
}

void validate_axes(const std::vector<Axis>& axes, int d, bool panel) {
    for (const auto& a : axes) {
        if (a.dim != d || a.origin.size() != d || static_cast<int>(a.dirs.size()) != d - 2)
            throw DimensionError("axis dimension differs from the chain");
    }
    if (panel)
        for (std::size_t i = 0; i + 1 < axes.size(); ++i)
            if (!spans_panel(axes[i], axes[i + 1]))
                throw SemanticError("panel rule violated: hinges " + std::to_string(i + 1) + " and " +
                                    std::to_string(i + 2) + " do not share a hyperplane");
}

} // namespace

Chain make_chain(int d, std::vector<Axis> axes, Frame end_frame, bool panel) {
    if (d < 2) throw DimensionError("chains need d >= 2");
    if (axes.empty()) throw SemanticError("a chain needs at least two bodies (one hinge)");
    validate_axes(axes, d, panel);
    validate_frame(end_frame, d);
    if (end_frame.k() == 0) {
        const double scale = std::max(1.0, end_frame.origin.norm());
        if (distance_to_axis(end_frame.origin, axes.back()) <= 1e-10 * scale)
            throw SemanticError("end point lies on the last hinge; drop the last body instead");
    }
    Chain c;
    c.d = d;
    c.ref_axes = std::move(axes);
    c.end_frame = std::move(end_frame);
    c.panel = panel;
    return c;
}

Chain make_cycle(std::vector<Axis> axes, bool panel) {
    if (axes.size() < 2) throw SemanticError("a cycle needs at least two hinges");
    const int d = axes.front().dim;
    if (d < 2) throw DimensionError("cycles need d >= 2");
    validate_axes(axes, d, panel);
    if (panel && !spans_panel(axes.back(), axes.front()))
        throw SemanticError("panel rule violated: closing hinge and hinge 1 do not share a hyperplane");
    Axis closing = axes.back();
    axes.pop_back();
    Frame frame{d, closing.origin, closing.dirs};
    Chain c;
    c.d = d;
    c.ref_axes = std::move(axes);
    c.end_frame = std::move(frame);
    c.is_cycle = true;
    c.closing_axis = std::move(closing);
    c.panel = panel;
    if (d == 2 && distance_to_axis(c.end_frame.origin, c.ref_axes.back()) <= 1e-10)
        throw SemanticError("consecutive hinges of a planar cycle coincide");
    return c;
}

Placement forward_kinematics(const Chain& c, const Configuration& theta) {
    if (theta.angles.size() != c.joints())
        throw DimensionError("configuration needs " + std::to_string(c.joints()) + " angles");
    Placement p;
    p.body_isometries.reserve(c.bodies());
    p.axes_at.reserve(c.joints());
    Isometry g = Isometry::identity(c.d);
    p.body_isometries.push_back(g);
    for (int i = 0; i < c.joints(); ++i) {
        p.axes_at.push_back(apply(g, c.ref_axes[i]));
        // g_{i+1} = g_i o rot(A_i, theta_i) = rot(A_i(theta), theta_i) o g_i
        if (theta.angles(i) != 0.0) g = g * rotate_about(c.ref_axes[i], theta.angles(i));
        p.body_isometries.push_back(g);
    }
    p.frame_at = apply(g, c.end_frame);
    return p;
}

Mat endpoint_jacobian(const Chain& c, const Configuration& theta) {
    if (c.end_frame.k() != 0) throw InputError("endpoint_jacobian needs an end point (k = 0)");
    const auto p = forward_kinematics(c, theta);
    Mat jac(c.d, c.joints());
    for (int i = 0; i < c.joints(); ++i)
        jac.col(i) = rotation_generator(p.axes_at[i]) * (p.frame_at.origin - p.axes_at[i].origin);
    return jac;
}

Mat frame_jacobian(const Chain& c, const Configuration& theta) {
    const auto p = forward_kinematics(c, theta);
    const int k = c.end_frame.k();
    Mat jac(static_cast<Eigen::Index>(c.d) * (k + 1), c.joints());
    for (int i = 0; i < c.joints(); ++i) {
        const Mat gen = rotation_generator(p.axes_at[i]);
        jac.col(i).head(c.d) = gen * (p.frame_at.origin - p.axes_at[i].origin);
        for (int j = 0; j < k; ++j) jac.col(i).segment(static_cast<Eigen::Index>(c.d) * (j + 1), c.d) = gen * p.frame_at.vecs[j];
    }
    return jac;
}

std::vector<PluckerPoint> frame_columns(const Chain& c, const Configuration& theta) {
    const auto p = forward_kinematics(c, theta);
    std::vector<PluckerPoint> out;
    out.reserve(p.axes_at.size());
    for (const auto& a : p.axes_at) out.push_back(axis_plucker(a));
    return out;
}

Mat numerical_jacobian(const ConfigurationMap& map, const Configuration& theta, double h) {
    if (!(h > 0)) throw InputError("finite-difference step must be positive");
    const auto n = theta.angles.size();
    Mat jac;
    for (Eigen::Index i = 0; i < n; ++i) {
        Configuration plus = theta, minus = theta;
        plus.angles(i) += h;
        minus.angles(i) -= h;
        const Vec col = (map(plus) - map(minus)) / (2.0 * h);
        if (i == 0) jac.resize(col.size(), n);
        jac.col(i) = col;
    }
    return jac;
}

Vec endpoint_map(const Chain& c, const Configuration& theta) { return forward_kinematics(c, theta).frame_at.origin; }

Vec frame_map(const Chain& c, const Configuration& theta) { return forward_kinematics(c, theta).frame_at.flatten(); }

Vec closure_residual(const Chain& c, const Configuration& theta) {
    return frame_map(c, theta) - c.end_frame.flatten();
}

Mat fiber_tangent(const Chain& c, const Configuration& theta, double tol) {
    const Mat jac = frame_jacobian(c, theta);
    const auto mr = matrix_rank(jac, tol);
    const auto n = jac.cols();
    return mr.V.rightCols(n - mr.rank);
}

Configuration flex_cycle(const Chain& c, const Configuration& theta, const Vec& direction, double step, double tol) {
    if (!c.is_cycle) throw InputError("flex_cycle needs a cycle");
    if (direction.size() != c.joints()) throw DimensionError("flex direction has wrong length");
    if (std::abs(direction.norm() - 1.0) > 1e-8) throw InputError("flex direction must have unit norm");
    if (closure_residual(c, theta).norm() > tol) throw InputError("starting configuration is not on the cycle fiber");

    const Mat jac0 = frame_jacobian(c, theta);
    const auto mr0 = matrix_rank(jac0, kDefaultRankTol);
    if (mr0.rank == jac0.cols()) throw RigidCycleError("closure differential has trivial kernel: the cycle is rigid here");
    const double jnorm = mr0.singular_values.size() ? mr0.singular_values(0) : 1.0;
    if ((jac0 * direction).norm() > 1e-6 * std::max(1.0, jnorm))
        throw InputError("flex direction is not tangent to the cycle fiber");

    Configuration current{theta.angles + step * direction};
    Vec residual = closure_residual(c, current);
    for (int iter = 0; iter < kMaxProjectionIterations; ++iter) {
        const double rnorm = residual.norm();
        if (rnorm <= tol) return current;
        const Mat jac = frame_jacobian(c, current);
        const auto mr = matrix_rank(jac, kDefaultRankTol);
        Vec delta = Vec::Zero(jac.cols());
        for (int i = 0; i < mr.rank; ++i)
            delta -= (mr.U.col(i).dot(residual) / mr.singular_values(i)) * mr.V.col(i);
        double lambda = 1.0;
        while (true) {
            Configuration trial{current.angles + lambda * delta};
            Vec r = closure_residual(c, trial);
            if (r.norm() < rnorm || lambda < 1.0 / 1024.0) {
                current = std::move(trial);
                residual = std::move(r);
                break;
            }
            lambda *= 0.5;
        }
    }
    if (residual.norm() <= tol) return current;
    throw ProjectionFailure("Gauss-Newton projection did not reach the cycle fiber in " +
                            std::to_string(kMaxProjectionIterations) + " iterations (residual " +
                            std::to_string(residual.norm()) + ")");
}

std::vector<Configuration> flex_path(const Chain& c, const Configuration& start, int steps, double step, double tol) {
    std::vector<Configuration> path{start};
    Vec previous;
    for (int s = 0; s < steps; ++s) {
        const Mat tangent = fiber_tangent(c, path.back());
        if (tangent.cols() == 0) throw RigidCycleError("cycle is rigid at step " + std::to_string(s));
        Vec dir;
        if (previous.size() == 0) {
            dir = tangent.col(0);
            Eigen::Index idx = 0;
            dir.cwiseAbs().maxCoeff(&idx);
            if (dir(idx) < 0) dir = -dir;
        } else {
            dir = tangent * (tangent.transpose() * previous);
            if (dir.norm() < 1e-8) dir = tangent.col(0);
            dir.normalize();
        }
        path.push_back(flex_cycle(c, path.back(), dir, step, tol));
        previous = dir;
    }
    return path;
}

} // namespace hingekit

#pragma once

// Affine geometry of R^d inside P_d. Homogeneous coordinates put the extra
// coordinate last: a point x lifts to (x, 1) and a direction v to (v, 0).

#include <optional>
#include <span>
#include <vector>

#include "hingekit/exterior.hpp"

namespace hingekit {

inline constexpr double kOrthoTol = 1e-12;

/// A hinge: codimension-two affine subspace, origin plus d-2 orthonormal directions.
struct Axis {
    int dim = 0;
    Vec origin;
    std::vector<Vec> dirs;
};

/// Axis given by exact rational data; dirs need not be orthonormal.
struct ExactAxis {
    int dim = 0;
    RVec origin;
    std::vector<RVec> dirs;
};

/// Orientation-preserving isometry x -> rot * x + trans.
struct Isometry {
    Mat rot;
    Vec trans;

    static Isometry identity(int d);
    int dim() const { return static_cast<int>(trans.size()); }
    Isometry inverse() const;
    /// (this * other)(x) = this(other(x)).
    Isometry operator*(const Isometry& other) const;
};

/// Orthonormal k-frame; k = 0 is a marked point.
struct Frame {
    int dim = 0;
    Vec origin;
    std::vector<Vec> vecs;

    int k() const { return static_cast<int>(vecs.size()); }
    /// (origin, e_1, .., e_k) stacked into one vector of length d(k+1).
    Vec flatten() const;
};

/// Decomposable grade-(d-1) exterior vector in ambient d+1 representing an axis.
struct PluckerPoint {
    ExteriorVector coords;
};

struct Line {
    Vec point;
    Vec dir;
};

/// Affine subspace returned by intersections and used for projections.
struct AffineSubspace {
    Vec origin;
    std::vector<Vec> dirs;  // orthonormal
    bool empty = false;
    bool near_degenerate = false;

    int dimension() const { return empty ? -1 : static_cast<int>(dirs.size()); }
};

/// Gram-Schmidt (order preserving); dependent directions raise DegenerateAxisError.
Axis make_axis(int d, const Vec& origin, std::span<const Vec> raw_dirs);
Axis make_axis(const ExactAxis& exact);

Vec lift_point(const Vec& p);
Vec lift_direction(const Vec& v);
RVec lift_point(const RVec& p);
RVec lift_direction(const RVec& v);

PluckerPoint axis_plucker(const Axis& a);
ExactExteriorVector axis_plucker(const ExactAxis& a);

ExteriorVector line_plucker(const Vec& p, const Vec& u);
ExteriorVector line_plucker(const Line& line);
ExactExteriorVector line_plucker(const RVec& p, const RVec& u);

/// Projective incidence: meeting in R^d or at infinity.
bool incident(const ExteriorVector& line, const PluckerPoint& axis, double tol = kDefaultRankTol);

/// Skew generator J of unit-speed rotation about `a`: velocity of p is J (p - origin).
/// The rotated 2-plane (u1, u2) is oriented so that det[dirs | u1 | u2] > 0.
Mat rotation_generator(const Axis& a);

Isometry rotate_about(const Axis& a, double angle);

Vec apply(const Isometry& g, const Vec& x);
Axis apply(const Isometry& g, const Axis& a);
Frame apply(const Isometry& g, const Frame& f);

struct PerpendicularFeet {
    Vec foot1;
    Vec foot2;
};
PerpendicularFeet common_perpendicular(const Line& l1, const Line& l2);

AffineSubspace as_subspace(const Axis& a);
AffineSubspace affine_intersection(std::span<const AffineSubspace> subspaces);
AffineSubspace affine_intersection(std::span<const Axis> axes);

Vec project_affine(const Vec& p, const AffineSubspace& s);

/// Orthonormal basis of the orthogonal complement of span(vs) in R^d.
std::vector<Vec> orthogonal_complement(int d, std::span<const Vec> vs);

} // namespace hingekit

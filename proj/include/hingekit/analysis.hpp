#pragma once

// Singularity verdicts for chains, cycles and platforms. Every verdict is a
// rank test on Pluecker points of axes (or bar lines) in the Grassmannian of
// codimension-two flats; the end-point test is cross-checked against the
// incident-line geometry.

#include <optional>
#include <vector>

#include "hingekit/chain.hpp"

namespace hingekit {

struct Verdict {
    int rank = 0;
    int full_rank = 0;
    bool singular = false;
    RankCertificate certificate;
    /// End-point verdicts: lines through e(theta) incident with every hinge.
    std::vector<Line> witness_lines;
    /// Cycle, frame and platform verdicts: functional on the Pluecker space.
    std::optional<Vec> hyperplane;
    std::optional<int> mobility;
    /// Set when the verdict was also computed in exact arithmetic.
    std::optional<RankCertificate> exact_certificate;
};

struct Leg {
    Vec p;
    Vec q;
};

struct ExactLeg {
    RVec p;
    RVec q;
};

/// Two bodies joined by C(d+1,2) bars p_i q_i.
struct Platform {
    int d = 0;
    std::vector<Leg> legs;
};

struct ExactPlatform {
    int d = 0;
    std::vector<ExactLeg> legs;
};

Verdict endpoint_singularity(const Chain& c, const Configuration& theta, double tol = kDefaultRankTol);

/// Pluecker points of the axes through the frame origin whose rotations span
/// the stabilizer o(d-k) of the frame. Empty for k > d-2.
std::vector<PluckerPoint> stabilizer_pluckers(const Frame& f);

Verdict frame_singularity(const Chain& c, const Configuration& theta, double tol = kDefaultRankTol);

Verdict cycle_mobility(std::span<const Axis> axes, double tol = kDefaultRankTol);
Verdict cycle_mobility(std::span<const ExactAxis> axes);

Verdict platform_flexibility(const Platform& pf, double tol = kDefaultRankTol);
Verdict platform_flexibility(const ExactPlatform& pf);

/// Dual form of the end-point test: row i holds the pairings of the lines
/// lift(e) ^ lift0(e_j) with hinge i. Its rank equals rank(endpoint_jacobian).
Mat endpoint_pairing_matrix(const Chain& c, const Configuration& theta);
/// Exact rank of the pairing matrix for rational hinges and end point.
RankCertificate endpoint_pairing_rank(std::span<const ExactAxis> axes, const RVec& end_point);

/// Skew (d+1)x(d+1) matrix A with A(i,j) = f[{i,j}] for a functional on Lambda^2.
Mat skew_from_bivector(const Vec& f, int m);

} // namespace hingekit

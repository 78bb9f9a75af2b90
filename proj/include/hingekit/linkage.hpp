#pragma once

// Canonical bar-joint linkage of a generic hinged cycle. Odd d = 2k+1: the
// lines l_i = A_i ∩ .. ∩ A_{i+k-1} carry the feet of the common
// perpendiculars with their neighbours. Even d = 2k: the points
// p_i = A_i ∩ .. ∩ A_{i+k-1} plus q_i, the projection of p_{i+1} onto the
// plane A_i ∩ .. ∩ A_{i+k-2}. Body i (between A_i and A_{i+1}) is marked by a
// d-simplex and the linkage is the union of the simplices' edges.

#include <span>
#include <string>
#include <vector>

#include "hingekit/chain.hpp"

namespace hingekit {

enum class VertexRole { FootMinus, FootPlus, P, Q };

struct VertexLabel {
    int axis = 0;  // 1-based hinge index
    VertexRole role = VertexRole::P;

    std::string str() const;
    static VertexLabel parse(const std::string& text);
    friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

struct LinkageVertex {
    VertexLabel label;
    Vec coords;
};

struct LinkageEdge {
    int a = 0;  // vertex indices, a < b
    int b = 0;
    double length = 0.0;
};

struct Linkage {
    int d = 0;
    int n = 0;
    std::vector<LinkageVertex> vertices;
    std::vector<LinkageEdge> edges;  // sorted by (a, b)
    std::vector<std::vector<int>> simplices;  // one per body, vertex indices

    int find(const VertexLabel& label) const;
};

/// d = 2 yields the polygon through the hinge points.
Linkage cycle_to_linkage(std::span<const Axis> axes);

struct Moduli {
    std::vector<double> independent;  // (2d-3) n lengths
    std::vector<double> dependent;    // 2n lengths fixed by right angles
    std::vector<std::pair<std::string, std::string>> independent_edges;
    std::vector<std::pair<std::string, std::string>> dependent_edges;
    std::string note;
};

Moduli moduli_invariants(const Linkage& lk);

/// Sign of det[v_1 - v_0, .., v_d - v_0] per simplex.
std::vector<int> simplex_orientations(const Linkage& lk);

struct LinkageInvariance {
    double max_discrepancy = 0.0;
    std::size_t worst_configuration = 0;
    bool orientations_constant = true;
};

/// Hinge positions of a cycle at a fiber configuration (A_n stays fixed).
std::vector<Axis> cycle_axes_at(const Chain& c, const Configuration& theta);

LinkageInvariance check_linkage_invariance(const Chain& c, std::span<const Configuration> path,
                                           double tol = 1e-8);

std::string linkage_to_json(const Linkage& lk);
Linkage linkage_from_json(const std::string& text);

} // namespace hingekit

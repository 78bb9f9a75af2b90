#include "hingekit/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "hingekit/errors.hpp"

namespace hingekit {

namespace {

const char* role_name(VertexRole r) {
    switch (r) {
    case VertexRole::FootMinus: return "foot-";
    case VertexRole::FootPlus: return "foot+";
    case VertexRole::P: return "p";
    case VertexRole::Q: return "q";
    }
    return "?";
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

AffineSubspace window(std::span<const Axis> axes, int start, int count) {
    const int n = static_cast<int>(axes.size());
    std::vector<AffineSubspace> subs;
    for (int j = 0; j < count; ++j) subs.push_back(as_subspace(axes[wrap(start + j, n)]));
    return affine_intersection(subs);
}

AffineSubspace generic_window(std::span<const Axis> axes, int start, int count, int want_dim) {
    const auto s = window(axes, start, count);
    const int first = start + 1;
    const int last = start + count;
    const auto name = "hinges " + std::to_string(first) + ".." + std::to_string(last) + " (cyclic)";
    if (s.empty) throw GenericityError(first, "cycle is not generic: " + name + " do not intersect");
    if (s.near_degenerate) throw GenericityError(first, "cycle is not generic: " + name + " intersect near-degenerately");
    if (s.dimension() != want_dim)
        throw GenericityError(first, "cycle is not generic: " + name + " intersect in dimension " +
                                         std::to_string(s.dimension()) + ", expected " + std::to_string(want_dim));
    return s;
}

void finish(Linkage& lk) {
    std::set<std::pair<int, int>> seen;
    for (const auto& simplex : lk.simplices)
        for (std::size_t i = 0; i < simplex.size(); ++i)
            for (std::size_t j = i + 1; j < simplex.size(); ++j)
                seen.insert(std::minmax(simplex[i], simplex[j]));
    for (const auto& [a, b] : seen) {
        const double len = (lk.vertices[a].coords - lk.vertices[b].coords).norm();
        lk.edges.push_back({a, b, len});
    }
    double scale = 1.0;
    for (const auto& v : lk.vertices) scale = std::max(scale, v.coords.norm());
    for (const auto& e : lk.edges)
        if (e.length <= 1e-10 * scale)
            throw DegeneracyError("degenerate simplex: canonical points " + lk.vertices[e.a].label.str() + " and " +
                                  lk.vertices[e.b].label.str() + " coincide");
}

Linkage polygon(std::span<const Axis> axes) {
    Linkage lk;
    lk.d = 2;
    lk.n = static_cast<int>(axes.size());
    for (int i = 0; i < lk.n; ++i) lk.vertices.push_back({{i + 1, VertexRole::P}, axes[i].origin});
    for (int i = 0; i < lk.n; ++i) lk.simplices.push_back({i, wrap(i + 1, lk.n)});
    finish(lk);
    return lk;
}

} // namespace

std::string VertexLabel::str() const { return std::to_string(axis) + ":" + role_name(role); }

VertexLabel VertexLabel::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("vertex label '" + text + "' lacks ':'");
    VertexLabel l;
    try {
        l.axis = std::stoi(text.substr(0, colon));
    } catch (const std::logic_error&) {
        throw InputError("vertex label '" + text + "' has no hinge index");
    }
    const auto role = text.substr(colon + 1);
    if (role == "foot-")
        l.role = VertexRole::FootMinus;
    else if (role == "foot+")
        l.role = VertexRole::FootPlus;
    else if (role == "p")
        l.role = VertexRole::P;
    else if (role == "q")
        l.role = VertexRole::Q;
    else
        throw InputError("vertex label '" + text + "' has unknown role");
    return l;
}

int Linkage::find(const VertexLabel& label) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].label == label) return static_cast<int>(i);
    return -1;
}

Linkage cycle_to_linkage(std::span<const Axis> axes) {
    if (axes.size() < 3) throw InputError("linkage conversion needs a cycle of at least three hinges");
    const int d = axes.front().dim;
    for (const auto& a : axes)
        if (a.dim != d) throw DimensionError("all hinges of a cycle must share one dimension");
    if (d == 2) return polygon(axes);

    const int n = static_cast<int>(axes.size());
    const int k = d / 2;
    Linkage lk;
    lk.d = d;
    lk.n = n;

    if (d % 2 == 1) {
        std::vector<Line> lines;
        for (int i = 0; i < n; ++i) {
            const auto s = generic_window(axes, i, k, 1);
            lines.push_back({s.origin, s.dirs.front()});
        }
        std::vector<Vec> minus(n), plus(n);
        for (int i = 0; i < n; ++i) {
            PerpendicularFeet feet;
            try {
                feet = common_perpendicular(lines[i], lines[wrap(i + 1, n)]);
            } catch (const NonUniquePerpendicularError&) {
                throw GenericityError(i + 1, "cycle is not generic: lines on hinges " + std::to_string(i + 1) + " and " +
                                                 std::to_string(wrap(i + 1, n) + 1) + " are parallel");
            }
            plus[i] = feet.foot1;
            minus[wrap(i + 1, n)] = feet.foot2;
        }
        for (int i = 0; i < n; ++i) {
            lk.vertices.push_back({{i + 1, VertexRole::FootMinus}, minus[i]});
            lk.vertices.push_back({{i + 1, VertexRole::FootPlus}, plus[i]});
        }
        // Body i carries the lines l_{i-k+1} .. l_{i+1}.
        for (int i = 0; i < n; ++i) {
            std::vector<int> simplex;
            for (int j = i - k + 1; j <= i + 1; ++j) {
                simplex.push_back(2 * wrap(j, n));
                simplex.push_back(2 * wrap(j, n) + 1);
            }
            lk.simplices.push_back(std::move(simplex));
        }
    } else {
        std::vector<Vec> p(n), q(n);
        std::vector<AffineSubspace> planes(n);
        for (int i = 0; i < n; ++i) {
            p[i] = generic_window(axes, i, k, 0).origin;
            planes[i] = generic_window(axes, i, k - 1, 2);
        }
        for (int i = 0; i < n; ++i) q[i] = project_affine(p[wrap(i + 1, n)], planes[i]);
        for (int i = 0; i < n; ++i) {
            lk.vertices.push_back({{i + 1, VertexRole::P}, p[i]});
            lk.vertices.push_back({{i + 1, VertexRole::Q}, q[i]});
        }
        // Body i carries p_{i-k+1} .. p_{i+1} and q_{i-k+2} .. q_{i+1}.
        for (int i = 0; i < n; ++i) {
            std::vector<int> simplex;
            for (int j = i - k + 1; j <= i + 1; ++j) simplex.push_back(2 * wrap(j, n));
            for (int j = i - k + 2; j <= i + 1; ++j) simplex.push_back(2 * wrap(j, n) + 1);
            lk.simplices.push_back(std::move(simplex));
        }
    }
    finish(lk);
    return lk;
}

Moduli moduli_invariants(const Linkage& lk) {
    Moduli m;
    std::set<std::pair<int, int>> dependent;
    const int n = lk.n;
    auto require = [&](VertexLabel a, VertexLabel b) {
        const int ia = lk.find(a);
        const int ib = lk.find(b);
        if (ia < 0 || ib < 0) throw InputError("linkage is not canonical: missing vertex " + (ia < 0 ? a : b).str());
        const auto key = std::minmax(ia, ib);
        const bool present = std::any_of(lk.edges.begin(), lk.edges.end(),
                                         [&](const LinkageEdge& e) { return e.a == key.first && e.b == key.second; });
        if (!present) throw InputError("linkage is not canonical: missing edge " + a.str() + " - " + b.str());
        dependent.insert(key);
    };
    const std::size_t want_edges = lk.d == 2 ? std::size_t(n) : std::size_t((2 * lk.d - 1) * n);
    const std::size_t want_vertices = lk.d == 2 ? std::size_t(n) : std::size_t(2 * n);
    if (lk.edges.size() != want_edges || lk.vertices.size() != want_vertices)
        throw InputError("linkage is not canonical: expected " + std::to_string(want_vertices) + " vertices and " +
                         std::to_string(want_edges) + " edges");
    if (lk.d == 2) {
        m.note = "planar cycle: the invariants are the edge lengths themselves";
    } else if (lk.d % 2 == 1) {
        // Right angles at the perpendicular feet: foot+_i foot-_{i+1} is normal to l_i and l_{i+1}.
        for (int i = 1; i <= n; ++i) {
            const int j = i % n + 1;
            require({i, VertexRole::FootMinus}, {j, VertexRole::FootMinus});
            require({i, VertexRole::FootPlus}, {j, VertexRole::FootPlus});
        }
        m.note = "odd d: edges foot-_i foot-_{i+1} and foot+_i foot+_{i+1} close right triangles at the common "
                 "perpendicular feet";
    } else {
        // Right angles at q_i: q_i p_{i+1} is normal to the plane holding p_i and p_{i-1}.
        for (int i = 1; i <= n; ++i) {
            const int next = i % n + 1;
            const int prev = (i + n - 2) % n + 1;
            require({next, VertexRole::P}, {i, VertexRole::P});
            require({next, VertexRole::P}, {prev, VertexRole::P});
        }
        m.note = "even d: edges p_{i+1} p_i and p_{i+1} p_{i-1} close right triangles at the projection q_i";
    }
    if (lk.d > 2 && static_cast<int>(dependent.size()) != 2 * n)
        throw InputError("linkage is not canonical: right-angle edges are not distinct");
    for (const auto& e : lk.edges) {
        const auto names = std::make_pair(lk.vertices[e.a].label.str(), lk.vertices[e.b].label.str());
        if (dependent.count({e.a, e.b})) {
            m.dependent.push_back(e.length);
            m.dependent_edges.push_back(names);
        } else {
            m.independent.push_back(e.length);
            m.independent_edges.push_back(names);
        }
    }
    return m;
}

std::vector<int> simplex_orientations(const Linkage& lk) {
    std::vector<int> out;
    for (const auto& s : lk.simplices) {
        if (static_cast<int>(s.size()) != lk.d + 1) {
            out.push_back(0);
            continue;
        }
        Mat m(lk.d, lk.d);
        for (int j = 1; j <= lk.d; ++j) m.col(j - 1) = lk.vertices[s[j]].coords - lk.vertices[s[0]].coords;
        const double det = m.determinant();
        out.push_back(det > 0 ? 1 : (det < 0 ? -1 : 0));
    }
    return out;
}

std::vector<Axis> cycle_axes_at(const Chain& c, const Configuration& theta) {
    if (!c.is_cycle) throw InputError("expected a cycle");
    auto axes = forward_kinematics(c, theta).axes_at;
    axes.push_back(*c.closing_axis);
    return axes;
}

LinkageInvariance check_linkage_invariance(const Chain& c, std::span<const Configuration> path, double tol) {
    LinkageInvariance out;
    if (path.empty()) return out;
    Linkage first;
    std::vector<int> first_orient;
    for (std::size_t t = 0; t < path.size(); ++t) {
        if (closure_residual(c, path[t]).norm() > tol)
            throw InputError("configuration " + std::to_string(t) + " is off the cycle fiber");
        Linkage lk;
        try {
            const auto axes = cycle_axes_at(c, path[t]);
            lk = cycle_to_linkage(axes);
        } catch (const GenericityError& e) {
            throw GenericityError(e.window_start(), "configuration " + std::to_string(t) + ": " + e.what());
        }
        const auto orient = simplex_orientations(lk);
        if (t == 0) {
            first = std::move(lk);
            first_orient = orient;
            continue;
        }
        if (lk.edges.size() != first.edges.size()) throw ConsistencyError("linkage graph changed along the path");
        for (std::size_t e = 0; e < lk.edges.size(); ++e) {
            const double diff = std::abs(lk.edges[e].length - first.edges[e].length);
            if (diff > out.max_discrepancy) {
                out.max_discrepancy = diff;
                out.worst_configuration = t;
            }
        }
        if (orient != first_orient) out.orientations_constant = false;
    }
    return out;
}

std::string linkage_to_json(const Linkage& lk) {
    using json = nlohmann::json;
    json doc;
    doc["d"] = lk.d;
    doc["n"] = lk.n;
    json verts = json::array();
    for (const auto& v : lk.vertices) {
        json coords = json::array();
        for (Eigen::Index i = 0; i < v.coords.size(); ++i) coords.push_back(v.coords(i));
        verts.push_back({{"label", v.label.str()}, {"coords", coords}});
    }
    doc["vertices"] = verts;
    json edges = json::array();
    for (const auto& e : lk.edges)
        edges.push_back({{"a", lk.vertices[e.a].label.str()}, {"b", lk.vertices[e.b].label.str()}, {"length", e.length}});
    doc["edges"] = edges;
    json simplices = json::array();
    for (const auto& s : lk.simplices) {
        json labels = json::array();
        for (int v : s) labels.push_back(lk.vertices[v].label.str());
        simplices.push_back(labels);
    }
    doc["simplices"] = simplices;
    return doc.dump(2) + "\n";
}

Linkage linkage_from_json(const std::string& text) {
    using json = nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
        Linkage lk;
        lk.d = doc.at("d").get<int>();
        lk.n = doc.at("n").get<int>();
        std::map<std::string, int> index;
        for (const auto& v : doc.at("vertices")) {
            const auto label = v.at("label").get<std::string>();
            const auto coords = v.at("coords").get<std::vector<double>>();
            if (static_cast<int>(coords.size()) != lk.d) throw ParseError("/vertices", "coordinate count differs from d");
            index[label] = static_cast<int>(lk.vertices.size());
            lk.vertices.push_back({VertexLabel::parse(label), Eigen::Map<const Vec>(coords.data(), lk.d)});
        }
        auto lookup = [&](const std::string& label) {
            auto it = index.find(label);
            if (it == index.end()) throw ParseError("/edges", "unknown vertex label '" + label + "'");
            return it->second;
        };
        for (const auto& e : doc.at("edges")) {
            const int a = lookup(e.at("a").get<std::string>());
            const int b = lookup(e.at("b").get<std::string>());
            lk.edges.push_back({std::min(a, b), std::max(a, b), e.at("length").get<double>()});
        }
        if (auto it = doc.find("simplices"); it != doc.end())
            for (const auto& s : *it) {
                std::vector<int> simplex;
                for (const auto& l : s) simplex.push_back(lookup(l.get<std::string>()));
                lk.simplices.push_back(std::move(simplex));
            }
        return lk;
    } catch (const json::exception& e) {
        throw ParseError("", std::string("malformed linkage document: ") + e.what());
    }
}

} // namespace hingekit

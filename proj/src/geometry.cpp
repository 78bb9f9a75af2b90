#include "hingekit/geometry.hpp"

#include <cmath>
#include <limits>

#include "hingekit/errors.hpp"

namespace hingekit {

namespace {

// Rank cut for intersection systems: machine precision scaled by the system size.
constexpr double kMachineRankTol = 64 * std::numeric_limits<double>::epsilon();
constexpr double kNearDegenerateTol = 1e-10;

void require_dim(const Vec& v, int d, const char* what) {
    if (v.size() != d) throw DimensionError(std::string(what) + " has wrong dimension");
}

} // namespace

Isometry Isometry::identity(int d) { return {Mat::Identity(d, d), Vec::Zero(d)}; }

Isometry Isometry::inverse() const {
    Mat rt = rot.transpose();
    return {rt, -(rt * trans)};
}

Isometry Isometry::operator*(const Isometry& other) const {
    if (other.dim() != dim()) throw DimensionError("composing isometries of different dimension");
    return {rot * other.rot, rot * other.trans + trans};
}

Vec Frame::flatten() const {
    Vec out(static_cast<Eigen::Index>(dim) * (k() + 1));
    out.head(dim) = origin;
    for (int i = 0; i < k(); ++i) out.segment(static_cast<Eigen::Index>(dim) * (i + 1), dim) = vecs[i];
    return out;
}

Axis make_axis(int d, const Vec& origin, std::span<const Vec> raw_dirs) {
    if (d < 2) throw DimensionError("axes need ambient dimension d >= 2");
    require_dim(origin, d, "axis origin");
    if (static_cast<int>(raw_dirs.size()) != d - 2)
        throw DimensionError("an axis in R^" + std::to_string(d) + " needs " + std::to_string(d - 2) + " directions");
    Axis a{d, origin, {}};
    for (const auto& raw : raw_dirs) {
        require_dim(raw, d, "axis direction");
        Vec v = raw;
        for (const auto& q : a.dirs) v -= q.dot(v) * q;
        // Second pass keeps orthogonality at the 1e-15 level.
        for (const auto& q : a.dirs) v -= q.dot(v) * q;
        const double n = v.norm();
        if (!(n > 1e-10 * raw.norm()) || n == 0.0) throw DegenerateAxisError("axis directions are linearly dependent");
        a.dirs.push_back(v / n);
    }
    return a;
}

Axis make_axis(const ExactAxis& exact) {
    auto to_vec = [](const RVec& r) {
        Vec v(static_cast<Eigen::Index>(r.size()));
        for (std::size_t i = 0; i < r.size(); ++i) v(static_cast<Eigen::Index>(i)) = r[i].get_d();
        return v;
    };
    std::vector<Vec> dirs;
    for (const auto& r : exact.dirs) dirs.push_back(to_vec(r));
    return make_axis(exact.dim, to_vec(exact.origin), dirs);
}

Vec lift_point(const Vec& p) {
    Vec out(p.size() + 1);
    out << p, 1.0;
    return out;
}

Vec lift_direction(const Vec& v) {
    Vec out(v.size() + 1);
    out << v, 0.0;
    return out;
}

RVec lift_point(const RVec& p) {
    RVec out = p;
    out.emplace_back(1);
    return out;
}

RVec lift_direction(const RVec& v) {
    RVec out = v;
    out.emplace_back(0);
    return out;
}

PluckerPoint axis_plucker(const Axis& a) {
    std::vector<Vec> factors;
    factors.reserve(a.dirs.size() + 1);
    factors.push_back(lift_point(a.origin));
    for (const auto& v : a.dirs) factors.push_back(lift_direction(v));
    return {wedge(factors, a.dim + 1)};
}

ExactExteriorVector axis_plucker(const ExactAxis& a) {
    if (static_cast<int>(a.origin.size()) != a.dim || static_cast<int>(a.dirs.size()) != a.dim - 2)
        throw DimensionError("exact axis has inconsistent dimensions");
    std::vector<RVec> factors;
    factors.push_back(lift_point(a.origin));
    for (const auto& v : a.dirs) factors.push_back(lift_direction(v));
    auto out = wedge(factors, a.dim + 1);
    if (out.is_zero()) throw DegenerateAxisError("axis directions are linearly dependent");
    return out;
}

ExteriorVector line_plucker(const Vec& p, const Vec& u) {
    if (p.size() != u.size()) throw DimensionError("line point and direction differ in dimension");
    if (u.norm() == 0.0) throw DegenerateLineError("line direction is zero");
    return wedge({lift_point(p), lift_direction(u)});
}

ExteriorVector line_plucker(const Line& line) { return line_plucker(line.point, line.dir); }

ExactExteriorVector line_plucker(const RVec& p, const RVec& u) {
    if (p.size() != u.size()) throw DimensionError("line point and direction differ in dimension");
    bool zero = true;
    for (const auto& c : u) zero = zero && c == 0;
    if (zero) throw DegenerateLineError("line direction is zero");
    std::vector<RVec> f{lift_point(p), lift_direction(u)};
    return wedge(f);
}

bool incident(const ExteriorVector& line, const PluckerPoint& axis, double tol) {
    const double pairing = top_pairing(line, axis.coords);
    return std::abs(pairing) <= tol * norm(line) * norm(axis.coords);
}

std::vector<Vec> orthogonal_complement(int d, std::span<const Vec> vs) {
    if (vs.empty()) {
        std::vector<Vec> out;
        for (int i = 0; i < d; ++i) out.push_back(Vec::Unit(d, i));
        return out;
    }
    Mat m(d, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    const double cut = kMachineRankTol * (s.size() ? s(0) : 0.0) * d;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    std::vector<Vec> out;
    for (int i = r; i < d; ++i) out.push_back(svd.matrixU().col(i));
    return out;
}

Mat rotation_generator(const Axis& a) {
    const int d = a.dim;
    auto comp = orthogonal_complement(d, a.dirs);
    if (comp.size() != 2) throw DegenerateAxisError("axis does not have codimension two");
    Mat basis(d, d);
    for (int i = 0; i < d - 2; ++i) basis.col(i) = a.dirs[i];
    basis.col(d - 2) = comp[0];
    basis.col(d - 1) = comp[1];
    if (basis.determinant() < 0) std::swap(comp[0], comp[1]);
    const Vec& u1 = comp[0];
    const Vec& u2 = comp[1];
    return u2 * u1.transpose() - u1 * u2.transpose();
}

Isometry rotate_about(const Axis& a, double angle) {
    const Mat j = rotation_generator(a);
    const int d = a.dim;
    Mat rot = Mat::Identity(d, d) + std::sin(angle) * j + (1.0 - std::cos(angle)) * (j * j);
    Vec trans = a.origin - rot * a.origin;
    return {std::move(rot), std::move(trans)};
}

Vec apply(const Isometry& g, const Vec& x) {
    if (x.size() != g.dim()) throw DimensionError("isometry applied to point of wrong dimension");
    return g.rot * x + g.trans;
}

Axis apply(const Isometry& g, const Axis& a) {
    if (a.dim != g.dim()) throw DimensionError("isometry applied to axis of wrong dimension");
    Axis out{a.dim, apply(g, a.origin), {}};
    out.dirs.reserve(a.dirs.size());
    for (const auto& v : a.dirs) out.dirs.push_back(g.rot * v);
    return out;
}

Frame apply(const Isometry& g, const Frame& f) {
    if (f.dim != g.dim()) throw DimensionError("isometry applied to frame of wrong dimension");
    Frame out{f.dim, apply(g, f.origin), {}};
    out.vecs.reserve(f.vecs.size());
    for (const auto& v : f.vecs) out.vecs.push_back(g.rot * v);
    return out;
}

PerpendicularFeet common_perpendicular(const Line& l1, const Line& l2) {
    if (l1.point.size() != l2.point.size()) throw DimensionError("lines live in different dimensions");
    const double a = l1.dir.dot(l1.dir);
    const double b = l1.dir.dot(l2.dir);
    const double c = l2.dir.dot(l2.dir);
    if (a == 0.0 || c == 0.0) throw DegenerateLineError("line direction is zero");
    const double den = a * c - b * b;
    if (den <= 1e-12 * a * c) throw NonUniquePerpendicularError("parallel lines have no unique common perpendicular");
    const Vec w = l1.point - l2.point;
    const double dw = l1.dir.dot(w);
    const double ew = l2.dir.dot(w);
    const double s = (b * ew - c * dw) / den;
    const double t = (a * ew - b * dw) / den;
    return {l1.point + s * l1.dir, l2.point + t * l2.dir};
}

AffineSubspace as_subspace(const Axis& a) { return {a.origin, a.dirs, false, false}; }

AffineSubspace affine_intersection(std::span<const AffineSubspace> subspaces) {
    if (subspaces.empty()) throw InputError("intersection of an empty list");
    const auto d = subspaces.front().origin.size();
    std::vector<Vec> normals;
    std::vector<double> rhs;
    for (const auto& s : subspaces) {
        if (s.origin.size() != d) throw DimensionError("intersecting subspaces of different ambient dimension");
        if (s.empty) return {Vec::Zero(d), {}, true, false};
        for (auto& n : orthogonal_complement(static_cast<int>(d), s.dirs)) {
            rhs.push_back(n.dot(s.origin));
            normals.push_back(std::move(n));
        }
    }
    AffineSubspace out;
    if (normals.empty()) {
        out.origin = Vec::Zero(d);
        for (Eigen::Index i = 0; i < d; ++i) out.dirs.push_back(Vec::Unit(d, i));
        return out;
    }
    Mat a(static_cast<Eigen::Index>(normals.size()), d);
    Vec b(static_cast<Eigen::Index>(normals.size()));
    for (std::size_t i = 0; i < normals.size(); ++i) {
        a.row(static_cast<Eigen::Index>(i)) = normals[i].transpose();
        b(static_cast<Eigen::Index>(i)) = rhs[i];
    }
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec& s = svd.singularValues();
    const double smax = s(0);
    const double cut = kMachineRankTol * smax * static_cast<double>(std::max(a.rows(), a.cols()));
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    out.near_degenerate = r > 0 && s(r - 1) < kNearDegenerateTol * smax;

    const Mat& u = svd.matrixU();
    const Mat& v = svd.matrixV();
    Vec x = Vec::Zero(d);
    for (int i = 0; i < r; ++i) x += (u.col(i).dot(b) / s(i)) * v.col(i);
    const double residual = (a * x - b).norm();
    if (residual > 1e-9 * std::max(1.0, b.norm())) return {Vec::Zero(d), {}, true, out.near_degenerate};
    out.origin = x;
    for (Eigen::Index i = r; i < d; ++i) out.dirs.push_back(v.col(i));
    return out;
}

AffineSubspace affine_intersection(std::span<const Axis> axes) {
    std::vector<AffineSubspace> subs;
    subs.reserve(axes.size());
    for (const auto& a : axes) subs.push_back(as_subspace(a));
    return affine_intersection(subs);
}

Vec project_affine(const Vec& p, const AffineSubspace& s) {
    if (s.empty) throw InputError("projection onto an empty subspace");
    if (p.size() != s.origin.size()) throw DimensionError("projecting a point of wrong dimension");
    Vec out = s.origin;
    const Vec rel = p - s.origin;
    for (const auto& v : s.dirs) out += v.dot(rel) * v;
    return out;
}

} // namespace hingekit

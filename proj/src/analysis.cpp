#include "hingekit/analysis.hpp"

#include <cmath>

#include "hingekit/errors.hpp"

namespace hingekit {

namespace {

int plucker_dim(int d) { return static_cast<int>(binomial(d + 1, 2)); }

} // namespace

Verdict endpoint_singularity(const Chain& c, const Configuration& theta, double tol) {
    const auto placement = forward_kinematics(c, theta);
    const Mat jac = endpoint_jacobian(c, theta);
    const auto mr = matrix_rank(jac, tol);
    const int d = c.d;

    Verdict v;
    v.rank = mr.rank;
    v.full_rank = d;
    v.singular = mr.rank < d;
    auto& cert = v.certificate;
    cert.rank = mr.rank;
    cert.expected_rank = d;
    cert.threshold = mr.threshold;
    cert.coefficient_dim = d;
    cert.singular_values.assign(mr.singular_values.data(), mr.singular_values.data() + mr.singular_values.size());
    cert.deficient = v.singular;
    if (!v.singular) return v;

    const Vec& e = placement.frame_at.origin;
    for (int i = mr.rank; i < d; ++i) v.witness_lines.push_back({e, mr.U.col(i)});
    cert.conull = mr.U.col(mr.rank);

    // |pairing(line, axis)| equals |nu . column| exactly, and both norms are >= 1,
    // so the float rank threshold bounds the incidence defect.
    const double geo_tol = 2.0 * mr.threshold + tol;
    for (std::size_t w = 0; w < v.witness_lines.size(); ++w) {
        const auto line = line_plucker(v.witness_lines[w]);
        for (std::size_t i = 0; i < placement.axes_at.size(); ++i) {
            if (!incident(line, axis_plucker(placement.axes_at[i]), geo_tol))
                throw ConsistencyError("rank verdict is singular but witness line " + std::to_string(w) +
                                       " misses hinge " + std::to_string(i + 1));
        }
    }
    return v;
}

std::vector<PluckerPoint> stabilizer_pluckers(const Frame& f) {
    const int d = f.dim;
    const int k = f.k();
    std::vector<PluckerPoint> out;
    if (k > d - 2) return out;
    const auto w = orthogonal_complement(d, f.vecs);
    const int r = d - k;
    for (int a = 0; a < r; ++a) {
        for (int b = a + 1; b < r; ++b) {
            Axis axis{d, f.origin, f.vecs};
            for (int c = 0; c < r; ++c)
                if (c != a && c != b) axis.dirs.push_back(w[c]);
            out.push_back(axis_plucker(axis));
        }
    }
    return out;
}

Verdict frame_singularity(const Chain& c, const Configuration& theta, double tol) {
    const auto placement = forward_kinematics(c, theta);
    const int d = c.d;
    const int k = c.end_frame.k();
    const int stab = k <= d - 2 ? static_cast<int>(binomial(d - k, 2)) : 0;

    std::vector<ExteriorVector> span;
    for (const auto& a : placement.axes_at) span.push_back(axis_plucker(a).coords);
    for (auto& s : stabilizer_pluckers(placement.frame_at)) span.push_back(std::move(s.coords));

    Verdict v;
    v.certificate = rank_of_span(span, plucker_dim(d), tol);
    v.full_rank = plucker_dim(d) - stab;
    v.rank = v.certificate.rank - stab;
    v.singular = v.certificate.rank < plucker_dim(d);
    v.hyperplane = v.certificate.conull;
    return v;
}

namespace {

Verdict mobility_verdict(RankCertificate cert, int n, int full) {
    Verdict v;
    v.rank = cert.rank;
    v.full_rank = full;
    v.singular = cert.rank < full;
    v.mobility = n - cert.rank;
    v.hyperplane = cert.conull;
    v.certificate = std::move(cert);
    return v;
}

void require_common_dim(int d, int have) {
    if (have != d) throw DimensionError("all axes of a cycle must share one ambient dimension");
}

} // namespace

Verdict cycle_mobility(std::span<const Axis> axes, double tol) {
    if (axes.size() < 2) throw InputError("a cycle needs at least two hinges");
    const int d = axes.front().dim;
    std::vector<ExteriorVector> pts;
    for (const auto& a : axes) {
        require_common_dim(d, a.dim);
        pts.push_back(axis_plucker(a).coords);
    }
    return mobility_verdict(rank_of_span(pts, plucker_dim(d), tol), static_cast<int>(axes.size()), plucker_dim(d));
}

Verdict cycle_mobility(std::span<const ExactAxis> axes) {
    if (axes.size() < 2) throw InputError("a cycle needs at least two hinges");
    const int d = axes.front().dim;
    std::vector<ExactExteriorVector> pts;
    for (const auto& a : axes) {
        require_common_dim(d, a.dim);
        pts.push_back(axis_plucker(a));
    }
    auto v = mobility_verdict(rank_of_span(pts, plucker_dim(d)), static_cast<int>(axes.size()), plucker_dim(d));
    v.exact_certificate = v.certificate;
    return v;
}

namespace {

void check_leg_count(int d, std::size_t legs) {
    if (d < 2) throw DimensionError("platforms need d >= 2");
    if (legs != binomial(d + 1, 2))
        throw SemanticError("a platform in R^" + std::to_string(d) + " needs exactly " +
                            std::to_string(binomial(d + 1, 2)) + " legs");
}

} // namespace

Verdict platform_flexibility(const Platform& pf, double tol) {
    check_leg_count(pf.d, pf.legs.size());
    std::vector<ExteriorVector> lines;
    for (std::size_t i = 0; i < pf.legs.size(); ++i) {
        const auto& leg = pf.legs[i];
        if (leg.p.size() != pf.d || leg.q.size() != pf.d) throw DimensionError("leg endpoint has wrong dimension");
        if ((leg.p - leg.q).norm() <= 1e-12 * std::max(1.0, leg.p.norm()))
            throw DegenerateLineError("leg " + std::to_string(i + 1) + " has coincident endpoints");
        lines.push_back(wedge({lift_point(leg.p), lift_point(leg.q)}));
    }
    return mobility_verdict(rank_of_span(lines, plucker_dim(pf.d), tol), static_cast<int>(lines.size()),
                            plucker_dim(pf.d));
}

Verdict platform_flexibility(const ExactPlatform& pf) {
    check_leg_count(pf.d, pf.legs.size());
    std::vector<ExactExteriorVector> lines;
    for (std::size_t i = 0; i < pf.legs.size(); ++i) {
        const auto& leg = pf.legs[i];
        if (static_cast<int>(leg.p.size()) != pf.d || static_cast<int>(leg.q.size()) != pf.d)
            throw DimensionError("leg endpoint has wrong dimension");
        if (leg.p == leg.q) throw DegenerateLineError("leg " + std::to_string(i + 1) + " has coincident endpoints");
        std::vector<RVec> f{lift_point(leg.p), lift_point(leg.q)};
        lines.push_back(wedge(f));
    }
    auto v = mobility_verdict(rank_of_span(lines, plucker_dim(pf.d)), static_cast<int>(lines.size()),
                              plucker_dim(pf.d));
    v.exact_certificate = v.certificate;
    return v;
}

Mat endpoint_pairing_matrix(const Chain& c, const Configuration& theta) {
    if (c.end_frame.k() != 0) throw InputError("the pairing matrix needs an end point (k = 0)");
    const auto placement = forward_kinematics(c, theta);
    const Vec& e = placement.frame_at.origin;
    std::vector<ExteriorVector> lines;
    for (int j = 0; j < c.d; ++j) lines.push_back(line_plucker(e, Vec::Unit(c.d, j)));
    Mat p(c.joints(), c.d);
    for (int i = 0; i < c.joints(); ++i) {
        const auto alpha = axis_plucker(placement.axes_at[i]);
        for (int j = 0; j < c.d; ++j) p(i, j) = top_pairing(lines[j], alpha.coords);
    }
    return p;
}

RankCertificate endpoint_pairing_rank(std::span<const ExactAxis> axes, const RVec& end_point) {
    const int d = static_cast<int>(end_point.size());
    std::vector<ExactExteriorVector> lines;
    for (int j = 0; j < d; ++j) {
        RVec u(d, Rational(0));
        u[j] = 1;
        lines.push_back(line_plucker(end_point, u));
    }
    std::vector<RVec> rows;
    for (const auto& a : axes) {
        if (a.dim != d) throw DimensionError("hinge and end point differ in dimension");
        const auto alpha = axis_plucker(a);
        RVec row;
        for (int j = 0; j < d; ++j) row.push_back(top_pairing(lines[j], alpha));
        rows.push_back(std::move(row));
    }
    // Kernel vectors of the pairing matrix are directions of incident lines.
    RankCertificate cert;
    cert.exact = true;
    cert.expected_rank = d;
    cert.coefficient_dim = d;
    const auto er = exact_rank(rows, d, true);
    cert.rank = er.rank;
    cert.deficient = er.rank < d;
    if (cert.deficient && er.kernel_vector) {
        cert.exact_conull = er.kernel_vector;
        Vec f(d);
        for (int j = 0; j < d; ++j) f(j) = (*er.kernel_vector)[j].get_d();
        cert.conull = f.normalized();
    }
    return cert;
}

Mat skew_from_bivector(const Vec& f, int m) {
    if (static_cast<std::size_t>(f.size()) != binomial(m, 2)) throw DimensionError("functional is not on Lambda^2");
    Mat a = Mat::Zero(m, m);
    for (Eigen::Index s = 0; s < f.size(); ++s) {
        const auto ij = subset_at(m, 2, static_cast<std::size_t>(s));
        a(ij[0], ij[1]) = f(s);
        a(ij[1], ij[0]) = -f(s);
    }
    return a;
}

} // namespace hingekit

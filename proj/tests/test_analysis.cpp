#include <doctest.h>

#include <cmath>

#include "hingekit/analysis.hpp"
#include "hingekit/classical.hpp"
#include "hingekit/errors.hpp"
#include "support.hpp"

using namespace hingekit;

namespace {

Vec v(std::initializer_list<double> xs) {
    Vec out(xs.size());
    int i = 0;
    for (double x : xs) out(i++) = x;
    return out;
}

Chain planar_arm3() {
    std::vector<Axis> axes;
    for (int i = 0; i < 3; ++i) axes.push_back(make_axis(2, v({double(i), 0}), std::vector<Vec>{}));
    return make_chain(2, axes, Frame{2, v({3, 0}), {}});
}

Isometry random_isometry(Rng& rng, int d) {
    Eigen::HouseholderQR<Mat> qr(Mat(rng.normal_vec(d * d).reshaped(d, d)));
    Mat q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) = -q.col(0);
    return {q, rng.normal_vec(d)};
}

double lifted_form(const Mat& a, const Vec& p, const Vec& q) {
    return oracle::lift(p, 1.0).dot(a * oracle::lift(q, 1.0));
}

} // namespace

TEST_CASE("collinear arm is end-point singular") {
    const auto ver = endpoint_singularity(planar_arm3(), Configuration::zeros(3));
    CHECK(ver.singular);
    CHECK(ver.rank == 1);
    CHECK(ver.full_rank == 2);
    REQUIRE(ver.witness_lines.size() == 1);
    const auto& w = ver.witness_lines.front();
    CHECK((w.point - v({3, 0})).norm() < 1e-14);
    CHECK(std::abs(w.dir(1)) < 1e-14);
    CHECK(std::abs(std::abs(w.dir(0)) - 1.0) < 1e-14);
}

TEST_CASE("random chains are generically regular") {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = fixtures::random_chain(rng, 3, 5);
        const auto ver = endpoint_singularity(c, {fixtures::random_angles(rng, 4)});
        CHECK_FALSE(ver.singular);
        CHECK(ver.rank == 3);
        CHECK(ver.witness_lines.empty());
    }
}

TEST_CASE("constructed singular chains expose their common line") {
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = trial % 2 ? 3 : 2;
        const Vec theta = fixtures::random_angles(rng, 4);
        const auto c = fixtures::singular_chain(rng, d, 5, theta);
        const auto ver = endpoint_singularity(c, {theta});
        CHECK(ver.singular);
        REQUIRE_FALSE(ver.witness_lines.empty());
        const auto p = forward_kinematics(c, {theta});
        // the constructed line runs from e through the first hinge point
        const Vec u = (p.axes_at[0].origin - p.frame_at.origin).normalized();
        bool recovered = false;
        for (const auto& w : ver.witness_lines) {
            CHECK((w.point - p.frame_at.origin).norm() < 1e-9);
            for (const auto& a : p.axes_at) CHECK(incident(line_plucker(w), axis_plucker(a), 1e-8));
            recovered |= std::abs(std::abs(w.dir.dot(u)) - 1.0) < 1e-8;
        }
        if (ver.witness_lines.size() == 1) CHECK(recovered);
    }
}

TEST_CASE("grid-found incident directions lie in the left null space") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = trial % 2 ? 3 : 2;
        const Vec theta = fixtures::random_angles(rng, 3);
        const auto c = fixtures::singular_chain(rng, d, 4, theta);
        const auto placed = oracle::placed_axes(c, theta);
        const auto found = oracle::IncidentLineSearch(placed, oracle::endpoint(c, theta)).search();
        REQUIRE(found.residual < 1e-6);
        const Mat j = endpoint_jacobian(c, {theta});
        CHECK((j.transpose() * found.direction).norm() <= 1e-5 * std::max(1.0, j.norm()));
    }
}

TEST_CASE("stabilizers") {
    Rng rng(44);
    for (int d = 2; d <= 6; ++d) {
        for (int k = 0; k <= d; ++k) {
            const auto f = fixtures::random_frame(rng, d, k);
            const auto s = stabilizer_pluckers(f);
            CHECK(s.size() == (k <= d - 2 ? binomial(d - k, 2) : 0));
            for (const auto& p : s) {
                // every stabilizer axis passes through the frame origin and contains the frame
                CHECK(incident(line_plucker(f.origin, rng.normal_vec(d)), p, 1e-9));
            }
            std::vector<ExteriorVector> coords;
            for (const auto& p : s) coords.push_back(p.coords);
            if (!coords.empty()) CHECK(rank_of_span(coords, static_cast<int>(coords.size())).rank == int(coords.size()));
        }
    }
    // k = d - 2: the axis spanned by the frame itself
    const auto f = fixtures::random_frame(rng, 4, 2);
    const auto s = stabilizer_pluckers(f);
    REQUIRE(s.size() == 1);
    const auto own = axis_plucker(make_axis(4, f.origin, f.vecs));
    CHECK((as_vec(s[0].coords) - as_vec(own.coords)).norm() < 1e-10);
}

TEST_CASE("frame verdict with k = 0 matches the end-point verdict") {
    Rng rng(45);
    int singular = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int d = static_cast<int>(rng.integer(2, 4));
        const int bodies = static_cast<int>(rng.integer(2, 9));
        const Vec theta = fixtures::random_angles(rng, bodies - 1);
        const auto c = trial % 3 == 0 ? fixtures::singular_chain(rng, d, bodies, theta)
                                      : fixtures::random_chain(rng, d, bodies);
        const auto e = endpoint_singularity(c, {theta});
        const auto f = frame_singularity(c, {theta});
        CHECK(e.singular == f.singular);
        CHECK(e.rank == f.rank);
        singular += e.singular;
    }
    CHECK(singular > 50);
}

TEST_CASE("frame verdict full ranks") {
    Rng rng(46);
    const auto c = fixtures::random_chain(rng, 3, 8, 1);
    const auto ver = frame_singularity(c, {fixtures::random_angles(rng, 7)});
    CHECK(ver.full_rank == 5);
    CHECK(ver.rank == 5);
    CHECK_FALSE(ver.singular);
    const auto few = fixtures::random_chain(rng, 4, 4, 2);
    const auto fv = frame_singularity(few, {fixtures::random_angles(rng, 3)});
    CHECK(fv.full_rank == 9);
    CHECK(fv.rank == 3);
    CHECK(fv.singular);
    REQUIRE(fv.hyperplane.has_value());
}

TEST_CASE("cycle mobility examples") {
    const auto bricard = cycle_mobility(bricard_symmetric_six(1).axes);
    CHECK(bricard.rank <= 5);
    CHECK(*bricard.mobility >= 1);
    const auto rigid = generic_cycle(3, 6, 3);
    CHECK(cycle_mobility(rigid.axes).rank == 6);
    CHECK(cycle_mobility(rigid.exact_axes()).rank == 6);
    CHECK(*cycle_mobility(rigid.axes).mobility == 0);
    CHECK(*cycle_mobility(generic_cycle(3, 7, 3).axes).mobility == 1);
}

TEST_CASE("cycle mobility invariances") {
    Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(rng.integer(4, 8));
        auto axes = generic_cycle(3, n, 100 + trial).axes;
        if (trial % 2) {
            // a repeated hinge, so the rank is not always full
            axes[2] = make_axis(3, axes[1].origin + 0.5 * axes[1].dirs[0], axes[1].dirs);
        }
        const int r = cycle_mobility(axes).rank;
        auto shuffled = axes;
        std::reverse(shuffled.begin(), shuffled.end());
        std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
        CHECK(cycle_mobility(shuffled).rank == r);
        const auto g = random_isometry(rng, 3);
        std::vector<Axis> moved;
        for (const auto& a : axes) moved.push_back(apply(g, a));
        CHECK(cycle_mobility(moved).rank == r);
        std::vector<Axis> rescaled;
        for (const auto& a : axes) {
            // another origin on the axis and a flipped direction: a different representative
            rescaled.push_back(make_axis(3, a.origin + rng.normal() * a.dirs[0], std::vector<Vec>{-2.0 * a.dirs[0]}));
        }
        CHECK(cycle_mobility(rescaled).rank == r);
    }
}

TEST_CASE("bricard half-turn argument") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto s = bricard_symmetric_six(seed);
        const auto ex = s.exact_axes();
        std::vector<std::vector<mpq_class>> sums;
        for (int i = 0; i < 3; ++i) {
            const auto l = axis_plucker(ex[i]);
            const auto tl = half_turn_z(l);
            // the partner hinge is the image of hinge i
            CHECK(axis_plucker(ex[i + 3]) == tl);
            sums.push_back((l + tl).coeffs());
        }
        CHECK(oracle::exact_rank(sums) <= 2);
    }
}

TEST_CASE("platform examples") {
    const auto des = desargues(0);
    const auto flex = platform_flexibility(des.platform());
    CHECK(flex.singular);
    CHECK(flex.rank == 2);
    REQUIRE(flex.hyperplane.has_value());
    const Mat a = skew_from_bivector(*flex.hyperplane, 3);
    CHECK((a + a.transpose()).norm() < 1e-14);
    for (const auto& leg : des.platform().legs) CHECK(std::abs(lifted_form(a, leg.p, leg.q)) < 1e-10);
    CHECK(platform_flexibility(des.exact_platform()).rank == 2);

    const auto off = desargues(Rational(1, 1000));
    CHECK(platform_flexibility(off.exact_platform()).rank == 3);
    CHECK_FALSE(platform_flexibility(off.platform()).singular);

    Rng rng(48);
    for (int trial = 0; trial < 10; ++trial) {
        Platform pf{3, {}};
        for (int i = 0; i < 6; ++i) pf.legs.push_back({rng.normal_vec(3), rng.normal_vec(3)});
        const auto ver = platform_flexibility(pf);
        CHECK(ver.rank == 6);
        CHECK_FALSE(ver.singular);
    }
}

TEST_CASE("platform errors") {
    Platform few{3, {{v({0, 0, 0}), v({1, 0, 0})}}};
    CHECK_THROWS_AS(platform_flexibility(few), SemanticError);
    Platform same{2, {{v({0, 0}), v({1, 0})}, {v({1, 1}), v({1, 1})}, {v({0, 2}), v({3, 1})}}};
    CHECK_THROWS_AS(platform_flexibility(same), DegenerateLineError);
}

TEST_CASE("pairing matrix rank equals the jacobian rank") {
    Rng rng(49);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = static_cast<int>(rng.integer(2, 5));
        const int bodies = static_cast<int>(rng.integer(2, 8));
        const Vec theta = fixtures::random_angles(rng, bodies - 1);
        const auto c = trial % 2 ? fixtures::singular_chain(rng, d, bodies, theta) : fixtures::random_chain(rng, d, bodies);
        CHECK(matrix_rank(endpoint_pairing_matrix(c, {theta})).rank == matrix_rank(endpoint_jacobian(c, {theta})).rank);
    }
    const auto arm = planar_arm(std::vector<Rational>{1, 1, 1});
    const auto exact = endpoint_pairing_rank(arm.exact_axes(), *arm.frame_spec->origin.exact);
    CHECK(exact.rank == 1);
    CHECK(exact.exact);
}

namespace {

double distance_to_line(const Vec& x, const Line& l) {
    const Vec r = x - l.point;
    return (r - r.dot(l.dir.normalized()) * l.dir.normalized()).norm();
}

// Point shared by two coplanar, non-parallel lines.
Vec meet(const Axis& a, const Axis& b) {
    Mat m(3, 2);
    m << a.dirs[0], -b.dirs[0];
    const Vec st = m.colPivHouseholderQr().solve(b.origin - a.origin);
    return a.origin + st(0) * a.dirs[0];
}

} // namespace

TEST_CASE("panel chains: witness lines pass through the panel vertex or lie in the panel") {
    Rng rng(50);
    int through = 0, inside = 0;
    for (int trial = 0; trial < 20; ++trial) {
        // L = e + t u; hinges 2j+1, 2j+2 cross at a point of L, hinges 2j+2, 2j+3 span a plane holding L
        const Vec e = rng.normal_vec(3), u = rng.normal_vec(3).normalized();
        std::vector<Axis> axes;
        double t = 1.0;
        while (axes.size() < 6) {
            const Vec y = e + t * u;
            t += rng.uniform(0.5, 1.5);
            if (axes.empty()) {
                axes.push_back(make_axis(3, y, std::vector<Vec>{rng.normal_vec(3)}));
            } else {
                const Axis& prev = axes.back();
                const Vec p = prev.origin + rng.uniform(-2.0, 2.0) * prev.dirs[0];
                axes.push_back(make_axis(3, y, std::vector<Vec>{p - y}));
            }
            axes.push_back(make_axis(3, y, std::vector<Vec>{rng.normal_vec(3)}));
        }
        axes.resize(6);
        const auto c = make_chain(3, axes, Frame{3, e, {}}, true);
        const auto ver = endpoint_singularity(c, Configuration::zeros(6));
        REQUIRE(ver.singular);
        REQUIRE_FALSE(ver.witness_lines.empty());
        for (const auto& w : ver.witness_lines) {
            for (std::size_t i = 0; i + 1 < axes.size(); ++i) {
                const Vec x = meet(axes[i], axes[i + 1]);
                const Vec n = Eigen::Vector3d(axes[i].dirs[0]).cross(Eigen::Vector3d(axes[i + 1].dirs[0])).normalized();
                const bool via_vertex = distance_to_line(x, w) < 1e-8;
                const bool in_panel = std::abs(n.dot(w.dir.normalized())) < 1e-8 && std::abs(n.dot(w.point - x)) < 1e-8;
                CHECK((via_vertex || in_panel));
                through += via_vertex;
                inside += in_panel && !via_vertex;
            }
        }
    }
    CHECK(through > 0);
    CHECK(inside > 0);
}

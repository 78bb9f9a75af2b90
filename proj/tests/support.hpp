#pragma once

// Test oracles. Nothing here calls the library's exterior algebra, rank code
// or kinematics; they are rebuilt from determinants, matrix exponentials and
// plain Gaussian elimination so the tests compare two independent routes.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "hingekit/chain.hpp"
#include "hingekit/random.hpp"

namespace oracle {

using hingekit::Mat;
using hingekit::Vec;

// Leibniz expansion; fine up to 8x8.
inline double leibniz_det(const Mat& a) {
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    double total = 0.0;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inversions;
        double term = inversions % 2 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) term *= a(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// All k-subsets of {0..m-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(k);
    std::iota(s.begin(), s.end(), 0);
    if (k > m) return out;
    while (true) {
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && s[i] == m - k + i) --i;
        if (i < 0) break;
        ++s[i];
        for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

// Coefficients of v_1 ^ .. ^ v_j as the minors of [v_1 .. v_j].
inline Vec wedge(const std::vector<Vec>& vs) {
    const int m = static_cast<int>(vs.front().size());
    const int k = static_cast<int>(vs.size());
    const auto subs = subsets(m, k);
    Vec out(subs.size());
    for (std::size_t s = 0; s < subs.size(); ++s) {
        Mat minor(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) minor(r, c) = vs[c](subs[s][r]);
        out(s) = leibniz_det(minor);
    }
    return out;
}

inline Vec lift(const Vec& x, double w) {
    Vec y(x.size() + 1);
    y.head(x.size()) = x;
    y(x.size()) = w;
    return y;
}

// Orthonormal u1, u2 spanning the complement of the axis directions, with
// det[dirs | u1 | u2] > 0.
inline std::pair<Vec, Vec> normal_plane(const hingekit::Axis& a) {
    const int d = a.dim;
    Mat dirs(d, a.dirs.size());
    for (std::size_t i = 0; i < a.dirs.size(); ++i) dirs.col(i) = a.dirs[i];
    const Mat ker = a.dirs.empty() ? Mat(Mat::Identity(d, d)) : Mat(dirs.transpose().fullPivLu().kernel());
    Eigen::HouseholderQR<Mat> qr(ker);
    Mat q = qr.householderQ() * Mat::Identity(d, 2);
    Mat full(d, d);
    full << dirs, q;
    if (full.determinant() < 0) q.col(1) = -q.col(1);
    return {q.col(0), q.col(1)};
}

// Rotation by `angle` about the axis as a homogeneous (d+1)x(d+1) matrix,
// from the exponential of the twist.
inline Mat homogeneous_rotation(const hingekit::Axis& a, double angle) {
    const int d = a.dim;
    const auto [u1, u2] = normal_plane(a);
    const Mat j = u2 * u1.transpose() - u1 * u2.transpose();
    Mat twist = Mat::Zero(d + 1, d + 1);
    twist.topLeftCorner(d, d) = angle * j;
    twist.topRightCorner(d, 1) = -angle * j * a.origin;
    return twist.exp();
}

// Body placements g_1..g_n by the product of exponentials.
inline std::vector<Mat> body_transforms(const hingekit::Chain& c, const Vec& theta) {
    std::vector<Mat> g{Mat::Identity(c.d + 1, c.d + 1)};
    for (int i = 0; i < c.joints(); ++i) g.push_back(g.back() * homogeneous_rotation(c.ref_axes[i], theta(i)));
    return g;
}

inline Vec apply(const Mat& g, const Vec& x) {
    const int d = static_cast<int>(x.size());
    return g.topLeftCorner(d, d) * x + g.topRightCorner(d, 1);
}

inline Vec endpoint(const hingekit::Chain& c, const Vec& theta) {
    return apply(body_transforms(c, theta).back(), c.end_frame.origin);
}

// (origin, e_1, .., e_k) of the placed end frame.
inline Vec frame(const hingekit::Chain& c, const Vec& theta) {
    const Mat g = body_transforms(c, theta).back();
    const int d = c.d;
    Vec out(d * (c.end_frame.k() + 1));
    out.head(d) = apply(g, c.end_frame.origin);
    for (int i = 0; i < c.end_frame.k(); ++i) out.segment(d * (i + 1), d) = g.topLeftCorner(d, d) * c.end_frame.vecs[i];
    return out;
}

template <class F>
Mat central_difference(F f, const Vec& theta, double h) {
    const Vec f0 = f(theta);
    Mat jac(f0.size(), theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        Vec tp = theta, tm = theta;
        tp(i) += h;
        tm(i) -= h;
        jac.col(i) = (f(tp) - f(tm)) / (2 * h);
    }
    return jac;
}

// Placed hinges: point and direction data carried by the bodies.
struct PlacedAxis {
    Vec origin;
    std::vector<Vec> dirs;
};

inline std::vector<PlacedAxis> placed_axes(const hingekit::Chain& c, const Vec& theta) {
    const auto g = body_transforms(c, theta);
    std::vector<PlacedAxis> out;
    for (int i = 0; i < c.joints(); ++i) {
        // Hinge i joins bodies i and i+1; body i carries it.
        PlacedAxis p;
        p.origin = apply(g[i], c.ref_axes[i].origin);
        for (const auto& v : c.ref_axes[i].dirs) p.dirs.push_back(g[i].topLeftCorner(c.d, c.d) * v);
        out.push_back(p);
    }
    return out;
}

// Plain Gaussian elimination over Q.
inline int exact_rank(std::vector<std::vector<mpq_class>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const mpq_class f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline int numeric_rank(const Mat& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

// Sphere-grid search for a line through e meeting every hinge (d = 2, 3).
// The residual of a direction u is the largest |sin| of the angle between u
// and the plane (d = 3) or line (d = 2) spanned by e and hinge i.
struct GridResult {
    double residual = 1.0;
    Vec direction;
};

class IncidentLineSearch {
public:
    IncidentLineSearch(const std::vector<PlacedAxis>& axes, const Vec& e) : d_(static_cast<int>(e.size())) {
        for (const auto& a : axes) {
            const Vec r = a.origin - e;
            Vec n;
            if (d_ == 2) {
                n = Vec(2);
                n << -r(1), r(0);
            } else {
                const Eigen::Vector3d w = a.dirs.front().normalized();
                n = Eigen::Vector3d(w.cross(Eigen::Vector3d(r)));
            }
            // e on the hinge: every line through e meets it.
            if (n.norm() <= 1e-12 * std::max(1.0, r.norm())) continue;
            normals_.push_back(n.normalized());
        }
    }

    double residual(const Vec& u) const {
        double worst = 0.0;
        for (const auto& n : normals_) worst = std::max(worst, std::abs(n.dot(u)));
        return worst;
    }

    Vec direction(double phi, double lambda) const {
        Vec u(d_);
        if (d_ == 2)
            u << std::cos(lambda), std::sin(lambda);
        else
            u << std::sin(phi) * std::cos(lambda), std::sin(phi) * std::sin(lambda), std::cos(phi);
        return u;
    }

    // 1 degree grid, then hierarchical refinement of the promising cells.
    GridResult search(double accept = 1e-6) const {
        const double deg = M_PI / 180.0;
        struct Cell {
            double r, phi, lambda;
        };
        std::vector<Cell> cells;
        const int nphi = d_ == 2 ? 1 : 181;
        for (int a = 0; a < nphi; ++a) {
            const double phi = d_ == 2 ? M_PI / 2 : a * deg;
            for (int b = 0; b < (d_ == 2 ? 180 : 360); ++b) {
                const double lambda = b * deg;
                cells.push_back({residual(direction(phi, lambda)), phi, lambda});
            }
        }
        std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.r < y.r; });
        GridResult best{cells.front().r, direction(cells.front().phi, cells.front().lambda)};
        if (normals_.empty()) return {0.0, best.direction};
        const std::size_t tries = std::min<std::size_t>(cells.size(), 40);
        for (std::size_t t = 0; t < tries && cells[t].r < 0.03; ++t) {
            double phi = cells[t].phi, lambda = cells[t].lambda, r = cells[t].r;
            double step = deg;
            for (int iter = 0; step > 1e-12 && iter < 2000; ++iter) {
                double bp = phi, bl = lambda;
                for (int i = -4; i <= 4; ++i) {
                    for (int j = -4; j <= 4; ++j) {
                        if (d_ == 2 && i != 0) continue;
                        const double p = phi + i * step / 2, l = lambda + j * step / 2;
                        const double rr = residual(direction(p, l));
                        if (rr < r) {
                            r = rr;
                            bp = p;
                            bl = l;
                        }
                    }
                }
                // compass search: shrink only once the centre is best
                if (bp == phi && bl == lambda) step /= 4;
                phi = bp;
                lambda = bl;
            }
            if (r < best.residual) best = {r, direction(phi, lambda)};
            if (best.residual < accept) break;
        }
        return best;
    }

private:
    int d_;
    std::vector<Vec> normals_;
};

} // namespace oracle

namespace fixtures {

using hingekit::Axis;
using hingekit::Chain;
using hingekit::Frame;
using hingekit::Rng;
using hingekit::Vec;

inline Axis random_axis(Rng& rng, int d, double spread = 2.0) {
    std::vector<Vec> dirs;
    for (int i = 0; i < d - 2; ++i) dirs.push_back(rng.normal_vec(d));
    return hingekit::make_axis(d, spread * rng.normal_vec(d), dirs);
}

inline Frame random_frame(Rng& rng, int d, int k) {
    Frame f{d, 2.0 * rng.normal_vec(d), {}};
    Eigen::HouseholderQR<hingekit::Mat> qr(hingekit::Mat(rng.normal_vec(d * d).reshaped(d, d)));
    const hingekit::Mat q = qr.householderQ();
    for (int i = 0; i < k; ++i) f.vecs.push_back(q.col(i));
    return f;
}

// Serial chain with `bodies` bodies and a k-frame on the last one.
inline Chain random_chain(Rng& rng, int d, int bodies, int k = 0) {
    while (true) {
        std::vector<Axis> axes;
        for (int i = 0; i + 1 < bodies; ++i) axes.push_back(random_axis(rng, d));
        try {
            return hingekit::make_chain(d, axes, random_frame(rng, d, k));
        } catch (const hingekit::Error&) {
            // end point on the last hinge; draw again
        }
    }
}

inline Vec random_angles(Rng& rng, int n) {
    Vec t(n);
    for (int i = 0; i < n; ++i) t(i) = rng.uniform(0.0, 2 * M_PI);
    return t;
}

// Chain whose placed hinges at `theta` all meet the line e + t u, built by
// choosing the placed hinges first and pulling them back to the reference.
inline Chain singular_chain(Rng& rng, int d, int bodies, const Vec& theta) {
    const Vec e = 2.0 * rng.normal_vec(d);
    const Vec u = rng.normal_vec(d).normalized();
    std::vector<Axis> placed;
    for (int i = 0; i + 1 < bodies; ++i) {
        double t = rng.uniform(0.3, 3.0);
        if (rng.uniform() < 0.5) t = -t;
        const Vec p = e + t * u;
        std::vector<Vec> dirs;
        for (int j = 0; j < d - 2; ++j) dirs.push_back(rng.normal_vec(d));
        placed.push_back(hingekit::make_axis(d, p, dirs));
    }
    std::vector<Axis> ref;
    hingekit::Isometry g = hingekit::Isometry::identity(d);
    for (std::size_t i = 0; i < placed.size(); ++i) {
        ref.push_back(hingekit::apply(g.inverse(), placed[i]));
        g = g * hingekit::rotate_about(ref.back(), theta(i));
    }
    Frame f{d, hingekit::apply(g.inverse(), e), {}};
    return hingekit::make_chain(d, ref, f);
}

} // namespace fixtures

#include "hingekit/classical.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "hingekit/errors.hpp"
#include "hingekit/linkage.hpp"
#include "hingekit/random.hpp"

namespace hingekit {

namespace {

AxisSpec exact_axis_spec(const RVec& origin, const std::vector<RVec>& dirs) {
    AxisSpec spec{point_spec(origin), {}};
    for (const auto& v : dirs) spec.dirs.push_back(point_spec(v));
    return spec;
}

AxisSpec float_axis_spec(const Vec& origin, const std::vector<Vec>& dirs) {
    AxisSpec spec{point_spec(origin), {}};
    for (const auto& v : dirs) spec.dirs.push_back(point_spec(v));
    return spec;
}

Scenario cycle_of(int d, std::vector<AxisSpec> specs, bool panel = false) {
    Scenario s;
    s.kind = ScenarioKind::Cycle;
    s.d = d;
    s.axis_specs = std::move(specs);
    s.panel = panel;
    validate(s);
    return s;
}

bool exact_independent(const RVec& origin, const std::vector<RVec>& dirs, int d) {
    return !axis_plucker(ExactAxis{d, origin, dirs}).is_zero();
}

ExactAxis random_exact_axis(Rng& rng, int d) {
    while (true) {
        RVec origin;
        for (int i = 0; i < d; ++i) origin.push_back(rng.rational(-2, 2, 16));
        std::vector<RVec> dirs(d - 2);
        for (auto& v : dirs)
            for (int i = 0; i < d; ++i) v.emplace_back(rng.integer(-8, 8));
        if (exact_independent(origin, dirs, d)) return {d, origin, dirs};
    }
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& args) {
    std::vector<Rational> out;
    for (const auto& a : args) out.push_back(parse_rational(a));
    return out;
}

int parse_int(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw InputError(std::string("expected an integer for ") + what + ", got '" + text + "'");
    }
}

} // namespace

Scenario twisted_cubic_tangents(const std::vector<Rational>& ts) {
    if (ts.size() < 2) throw InputError("twisted-cubic-tangents needs at least two parameters");
    std::set<Rational> seen;
    std::vector<AxisSpec> specs;
    for (const auto& t : ts) {
        if (!seen.insert(t).second) throw InputError("twisted-cubic-tangents: duplicate parameter " + t.get_str());
        const Rational t2 = t * t;
        specs.push_back(exact_axis_spec({t, t2, t2 * t}, {{Rational(1), 2 * t, 3 * t2}}));
    }
    return cycle_of(3, std::move(specs));
}

ExactExteriorVector half_turn_z(const ExactExteriorVector& line) {
    if (line.grade() != 2 || line.ambient() != 4) throw GradeError("half_turn_z acts on Lambda^2 R^4");
    // Basis e_i ^ e_j scales by s_i s_j with s = (-1, -1, 1, 1).
    const int sign[4] = {-1, -1, 1, 1};
    std::vector<Rational> c = line.coeffs();
    for (std::size_t s = 0; s < c.size(); ++s) {
        const auto ij = subset_at(4, 2, s);
        if (sign[ij[0]] * sign[ij[1]] < 0) c[s] = -c[s];
    }
    return ExactExteriorVector(2, 4, std::move(c));
}

Scenario bricard_symmetric_six(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ExactAxis> base;
    for (int i = 0; i < 3; ++i) base.push_back(random_exact_axis(rng, 3));
    std::vector<AxisSpec> specs;
    for (const auto& a : base) specs.push_back(exact_axis_spec(a.origin, a.dirs));
    for (const auto& a : base) {
        const RVec o{-a.origin[0], -a.origin[1], a.origin[2]};
        const RVec v{-a.dirs[0][0], -a.dirs[0][1], a.dirs[0][2]};
        specs.push_back(exact_axis_spec(o, {v}));
    }
    return cycle_of(3, std::move(specs));
}

Scenario cyclohexane_panels(const std::string& conformation) {
    // Ring atoms on a unit hexagon, lifted out of plane; hinges are the bond lines.
    const double h = 0.25;
    std::vector<double> z;
    if (conformation == "chair")
        z = {h, -h, h, -h, h, -h};
    else if (conformation == "boat")
        z = {h, 0.0, 0.0, h, 0.0, 0.0};
    else
        throw InputError("cyclohexane-panels: conformation must be 'chair' or 'boat'");
    std::vector<Vec> atoms;
    for (int j = 0; j < 6; ++j) {
        const double a = j * std::numbers::pi / 3.0;
        Vec p(3);
        p << std::cos(a), std::sin(a), z[j];
        atoms.push_back(p);
    }
    std::vector<AxisSpec> specs;
    for (int j = 0; j < 6; ++j) specs.push_back(float_axis_spec(atoms[j], {atoms[(j + 1) % 6] - atoms[j]}));
    return cycle_of(3, std::move(specs), true);
}

Scenario desargues(const Rational& offset) {
    const std::vector<RVec> p{{Rational(2), Rational(0)}, {Rational(0), Rational(2)}, {Rational(-2), Rational(-1)}};
    const std::vector<Rational> scale{Rational(3), Rational(2), Rational(5, 2)};
    Scenario s;
    s.kind = ScenarioKind::Platform;
    s.d = 2;
    for (int i = 0; i < 3; ++i) {
        RVec q{p[i][0] * scale[i], p[i][1] * scale[i]};
        if (i == 0) q[1] += offset;
        s.leg_specs.push_back({point_spec(p[i]), point_spec(q)});
    }
    validate(s);
    return s;
}

Scenario planar_arm(const std::vector<Rational>& lengths) {
    if (lengths.empty()) throw InputError("planar-arm needs at least one bar length");
    Scenario s;
    s.kind = ScenarioKind::Chain;
    s.d = 2;
    Rational x = 0;
    for (const auto& l : lengths) {
        if (l <= 0) throw InputError("planar-arm bar lengths must be positive");
        s.axis_specs.push_back(exact_axis_spec({x, Rational(0)}, {}));
        x += l;
    }
    s.frame_spec = FrameSpec{point_spec(RVec{x, Rational(0)}), {}};
    validate(s);
    return s;
}

Scenario generic_cycle(int d, int n, std::uint64_t seed) {
    if (d < 2 || d > 7) throw InputError("generic-cycle: d must lie in [2, 7]");
    if (n < 2) throw InputError("generic-cycle: n must be at least 2");
    Rng rng(seed);
    while (true) {
        std::vector<AxisSpec> specs;
        for (int i = 0; i < n; ++i) {
            const auto a = random_exact_axis(rng, d);
            specs.push_back(exact_axis_spec(a.origin, a.dirs));
        }
        auto s = cycle_of(d, std::move(specs));
        s.seed = seed;
        if (n < 3) return s;
        // coarse rational data can land on special position; draw again
        try {
            cycle_to_linkage(s.axes);
        } catch (const DegeneracyError&) {
            continue;
        }
        return s;
    }
}

const std::vector<std::string>& classical_names() {
    static const std::vector<std::string> names{"twisted-cubic-tangents", "bricard-symmetric-six", "cyclohexane-panels",
                                                "desargues",              "planar-arm",            "generic-cycle"};
    return names;
}

Scenario classical_scenario(const std::string& name, const std::vector<std::string>& args, std::uint64_t seed) {
    if (name == "twisted-cubic-tangents") {
        if (args.empty()) return twisted_cubic_tangents(parse_rationals({"0", "1", "-1", "2", "-2", "3"}));
        return twisted_cubic_tangents(parse_rationals(args));
    }
    if (name == "bricard-symmetric-six") {
        auto s = bricard_symmetric_six(seed);
        s.seed = seed;
        return s;
    }
    if (name == "cyclohexane-panels") return cyclohexane_panels(args.empty() ? "chair" : args.front());
    if (name == "desargues") return desargues(args.empty() ? Rational(0) : parse_rational(args.front()));
    if (name == "planar-arm") {
        if (args.empty()) return planar_arm({Rational(1), Rational(1), Rational(1)});
        return planar_arm(parse_rationals(args));
    }
    if (name == "generic-cycle") {
        const int d = args.size() > 0 ? parse_int(args[0], "d") : 3;
        const int n = args.size() > 1 ? parse_int(args[1], "n") : 7;
        return generic_cycle(d, n, seed);
    }
    std::string known;
    for (const auto& n : classical_names()) known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown example '" + name + "' (known: " + known + ")");
}

} // namespace hingekit

#include "hingekit/scenario.hpp"

#include <json.hpp>

#include "hingekit/errors.hpp"

namespace hingekit {

using json = nlohmann::json;

const char* to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::Chain: return "chain";
    case ScenarioKind::Cycle: return "cycle";
    case ScenarioKind::Platform: return "platform";
    }
    return "?";
}

PointSpec point_spec(const Vec& v) { return {v, std::nullopt}; }

PointSpec point_spec(const RVec& v) {
    Vec value(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) value(static_cast<Eigen::Index>(i)) = v[i].get_d();
    return {value, v};
}

bool operator==(const PointSpec& a, const PointSpec& b) {
    if (a.value.size() != b.value.size() || a.value != b.value) return false;
    return a.exact == b.exact;
}

bool Scenario::has_exact_axes() const {
    for (const auto& a : axis_specs) {
        if (!a.origin.exact) return false;
        for (const auto& v : a.dirs)
            if (!v.exact) return false;
    }
    return !axis_specs.empty();
}

bool Scenario::has_exact_legs() const {
    for (const auto& l : leg_specs)
        if (!l.p.exact || !l.q.exact) return false;
    return !leg_specs.empty();
}

std::vector<ExactAxis> Scenario::exact_axes() const {
    if (!has_exact_axes()) throw InputError("--exact needs every axis coordinate to be an integer or an \"a/b\" string");
    std::vector<ExactAxis> out;
    for (const auto& a : axis_specs) {
        ExactAxis e{d, *a.origin.exact, {}};
        for (const auto& v : a.dirs) e.dirs.push_back(*v.exact);
        out.push_back(std::move(e));
    }
    return out;
}

ExactPlatform Scenario::exact_platform() const {
    if (!has_exact_legs()) throw InputError("--exact needs every leg coordinate to be an integer or an \"a/b\" string");
    ExactPlatform pf{d, {}};
    for (const auto& l : leg_specs) pf.legs.push_back({*l.p.exact, *l.q.exact});
    return pf;
}

Platform Scenario::platform() const {
    if (kind != ScenarioKind::Platform) throw InputError("scenario is not a platform");
    Platform pf{d, {}};
    for (const auto& l : leg_specs) pf.legs.push_back({l.p.value, l.q.value});
    return pf;
}

Chain Scenario::chain() const {
    if (kind == ScenarioKind::Cycle) return make_cycle(axes, panel);
    if (kind == ScenarioKind::Chain) return make_chain(d, axes, *end_frame, panel);
    throw InputError("a platform scenario has no chain");
}

Configuration Scenario::configuration() const {
    const int joints = static_cast<int>(axes.size()) - (kind == ScenarioKind::Cycle ? 1 : 0);
    if (theta) return {*theta};
    return Configuration::zeros(joints);
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(join(path, key), "missing required field");
    return *it;
}

PointSpec parse_point(const json& j, int d, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
    if (static_cast<int>(j.size()) != d)
        throw ParseError(path, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(j.size()));
    PointSpec out;
    out.value.resize(d);
    RVec exact;
    bool all_exact = true;
    for (int i = 0; i < d; ++i) {
        const auto& x = j[static_cast<std::size_t>(i)];
        const auto p = join(path, static_cast<std::size_t>(i));
        if (x.is_number_integer()) {
            const auto text = x.dump();
            exact.emplace_back(text, 10);
            out.value(i) = exact.back().get_d();
        } else if (x.is_number()) {
            out.value(i) = x.get<double>();
            all_exact = false;
        } else if (x.is_string()) {
            try {
                exact.push_back(parse_rational(x.get<std::string>()));
            } catch (const InputError& e) {
                throw ParseError(p, e.what());
            }
            out.value(i) = exact.back().get_d();
        } else {
            throw ParseError(p, "expected a number or an \"a/b\" string");
        }
    }
    if (all_exact) out.exact = std::move(exact);
    return out;
}

std::vector<PointSpec> parse_points(const json& j, int d, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    std::vector<PointSpec> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_point(j[i], d, join(path, i)));
    return out;
}

json emit_point(const PointSpec& p) {
    json arr = json::array();
    if (p.exact) {
        for (const auto& q : *p.exact) arr.push_back(q.get_str());
    } else {
        for (Eigen::Index i = 0; i < p.value.size(); ++i) arr.push_back(p.value(i));
    }
    return arr;
}

} // namespace

void validate(Scenario& s) {
    const int d = s.d;
    if (d < 2 || d > 7) throw SemanticError("/d: dimension must lie in [2, 7]");
    s.axes.clear();
    s.end_frame.reset();
    for (std::size_t i = 0; i < s.axis_specs.size(); ++i) {
        const auto& spec = s.axis_specs[i];
        const auto path = "/axes/" + std::to_string(i);
        if (static_cast<int>(spec.dirs.size()) != d - 2)
            throw SemanticError(path + "/dirs: an axis in R^" + std::to_string(d) + " needs " + std::to_string(d - 2) +
                                " direction vector(s), got " + std::to_string(spec.dirs.size()));
        std::vector<Vec> raw;
        for (const auto& v : spec.dirs) raw.push_back(v.value);
        try {
            s.axes.push_back(make_axis(d, spec.origin.value, raw));
        } catch (const DegenerateAxisError&) {
            throw SemanticError(path + "/dirs: direction vectors are linearly dependent (an axis needs d-2 independent directions)");
        }
    }
    switch (s.kind) {
    case ScenarioKind::Chain: {
        if (s.axis_specs.empty()) throw SemanticError("/axes: a chain needs at least one hinge");
        if (!s.frame_spec) throw SemanticError("/end_frame: a chain needs an end frame");
        const auto& fs = *s.frame_spec;
        if (static_cast<int>(fs.vecs.size()) > d) throw SemanticError("/end_frame/vecs: more than d vectors");
        std::vector<Vec> raw;
        for (const auto& v : fs.vecs) raw.push_back(v.value);
        Frame f{d, fs.origin.value, {}};
        for (const auto& r : raw) {
            Vec v = r;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : f.vecs) v -= q.dot(v) * q;
            if (!(v.norm() > 1e-10 * r.norm())) throw SemanticError("/end_frame/vecs: frame vectors are linearly dependent");
            f.vecs.push_back(v.normalized());
        }
        s.end_frame = f;
        break;
    }
    case ScenarioKind::Cycle:
        if (s.axis_specs.size() < 2) throw SemanticError("/axes: a cycle needs at least two hinges");
        if (s.frame_spec) throw SemanticError("/end_frame: a cycle's end frame is its closing hinge; remove end_frame");
        break;
    case ScenarioKind::Platform:
        if (!s.axis_specs.empty()) throw SemanticError("/axes: platforms have legs, not axes");
        if (s.leg_specs.size() != binomial(d + 1, 2))
            throw SemanticError("/legs: a platform in R^" + std::to_string(d) + " needs exactly " +
                                std::to_string(binomial(d + 1, 2)) + " legs, got " + std::to_string(s.leg_specs.size()));
        break;
    }
    if (s.kind != ScenarioKind::Platform) {
        try {
            (void)s.chain();
        } catch (const SemanticError& e) {
            throw SemanticError(std::string("/axes: ") + e.what());
        }
        if (s.theta) {
            const auto joints = static_cast<Eigen::Index>(s.axes.size()) - (s.kind == ScenarioKind::Cycle ? 1 : 0);
            if (s.theta->size() != joints)
                throw SemanticError("/theta: expected " + std::to_string(joints) + " angles");
        }
    }
    if (s.tol && !(*s.tol > 0)) throw SemanticError("/tol: tolerance must be positive");
}

Scenario parse_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("", "scenario must be a JSON object");

    Scenario s;
    const auto& kind = member(doc, "kind", "");
    if (!kind.is_string()) throw ParseError("/kind", "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "chain")
        s.kind = ScenarioKind::Chain;
    else if (k == "cycle")
        s.kind = ScenarioKind::Cycle;
    else if (k == "platform")
        s.kind = ScenarioKind::Platform;
    else
        throw ParseError("/kind", "unknown kind '" + k + "' (chain, cycle, platform)");

    const auto& d = member(doc, "d", "");
    if (!d.is_number_integer()) throw ParseError("/d", "expected an integer");
    s.d = d.get<int>();
    if (s.d < 2 || s.d > 7) throw ParseError("/d", "dimension must lie in [2, 7]");

    if (auto it = doc.find("axes"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("/axes", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto path = join("/axes", i);
            const auto& a = (*it)[i];
            AxisSpec spec;
            spec.origin = parse_point(member(a, "origin", path), s.d, join(path, "origin"));
            spec.dirs = parse_points(member(a, "dirs", path), s.d, join(path, "dirs"));
            s.axis_specs.push_back(std::move(spec));
        }
    } else if (s.kind != ScenarioKind::Platform) {
        throw ParseError("/axes", "missing required field");
    }
    if (auto it = doc.find("end_frame"); it != doc.end() && !it->is_null()) {
        FrameSpec fs;
        fs.origin = parse_point(member(*it, "origin", "/end_frame"), s.d, "/end_frame/origin");
        if (auto v = it->find("vecs"); v != it->end()) fs.vecs = parse_points(*v, s.d, "/end_frame/vecs");
        s.frame_spec = std::move(fs);
    }
    if (auto it = doc.find("panel"); it != doc.end()) {
        if (!it->is_boolean()) throw ParseError("/panel", "expected a boolean");
        s.panel = it->get<bool>();
    }
    if (auto it = doc.find("legs"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("/legs", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto path = join("/legs", i);
            const auto& l = (*it)[i];
            s.leg_specs.push_back({parse_point(member(l, "p", path), s.d, join(path, "p")),
                                   parse_point(member(l, "q", path), s.d, join(path, "q"))});
        }
    } else if (s.kind == ScenarioKind::Platform) {
        throw ParseError("/legs", "missing required field");
    }
    if (auto it = doc.find("theta"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("/theta", "expected an array of angles");
        Vec th(static_cast<Eigen::Index>(it->size()));
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_number()) throw ParseError(join("/theta", i), "expected a number");
            th(static_cast<Eigen::Index>(i)) = (*it)[i].get<double>();
        }
        s.theta = th;
    }
    if (auto it = doc.find("seed"); it != doc.end()) {
        if (!it->is_number_unsigned()) throw ParseError("/seed", "expected a non-negative integer");
        s.seed = it->get<std::uint64_t>();
    }
    if (auto it = doc.find("tol"); it != doc.end()) {
        if (!it->is_number()) throw ParseError("/tol", "expected a number");
        s.tol = it->get<double>();
    }
    validate(s);
    return s;
}

std::string emit_scenario(const Scenario& s) {
    json doc;
    doc["kind"] = to_string(s.kind);
    doc["d"] = s.d;
    if (s.kind != ScenarioKind::Platform) {
        json axes = json::array();
        for (const auto& a : s.axis_specs) {
            json dirs = json::array();
            for (const auto& v : a.dirs) dirs.push_back(emit_point(v));
            axes.push_back({{"origin", emit_point(a.origin)}, {"dirs", dirs}});
        }
        doc["axes"] = axes;
    }
    if (s.frame_spec) {
        json vecs = json::array();
        for (const auto& v : s.frame_spec->vecs) vecs.push_back(emit_point(v));
        doc["end_frame"] = {{"origin", emit_point(s.frame_spec->origin)}, {"vecs", vecs}};
    }
    if (s.panel) doc["panel"] = true;
    if (!s.leg_specs.empty()) {
        json legs = json::array();
        for (const auto& l : s.leg_specs) legs.push_back({{"p", emit_point(l.p)}, {"q", emit_point(l.q)}});
        doc["legs"] = legs;
    }
    if (s.theta) {
        json th = json::array();
        for (Eigen::Index i = 0; i < s.theta->size(); ++i) th.push_back((*s.theta)(i));
        doc["theta"] = th;
    }
    if (s.seed) doc["seed"] = *s.seed;
    if (s.tol) doc["tol"] = *s.tol;
    return doc.dump(2) + "\n";
}

bool same_document(const Scenario& a, const Scenario& b) {
    auto same_axes = [](const AxisSpec& x, const AxisSpec& y) { return x.origin == y.origin && x.dirs == y.dirs; };
    if (a.kind != b.kind || a.d != b.d || a.panel != b.panel || a.seed != b.seed || a.tol != b.tol) return false;
    if (a.axis_specs.size() != b.axis_specs.size() || a.leg_specs.size() != b.leg_specs.size()) return false;
    for (std::size_t i = 0; i < a.axis_specs.size(); ++i)
        if (!same_axes(a.axis_specs[i], b.axis_specs[i])) return false;
    for (std::size_t i = 0; i < a.leg_specs.size(); ++i)
        if (!(a.leg_specs[i].p == b.leg_specs[i].p) || !(a.leg_specs[i].q == b.leg_specs[i].q)) return false;
    if (a.frame_spec.has_value() != b.frame_spec.has_value()) return false;
    if (a.frame_spec && (!(a.frame_spec->origin == b.frame_spec->origin) || a.frame_spec->vecs != b.frame_spec->vecs))
        return false;
    if (a.theta.has_value() != b.theta.has_value()) return false;
    return !a.theta || *a.theta == *b.theta;
}

} // namespace hingekit

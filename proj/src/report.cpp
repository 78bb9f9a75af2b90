#include "hingekit/report.hpp"

#include "hingekit/errors.hpp"
#include "hingekit/linkage.hpp"
#include "hingekit/sweep.hpp"

namespace hingekit {

using json = nlohmann::json;

json to_json(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json to_json(const RVec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(q.get_str());
    return a;
}

namespace {

json certificate_json(const RankCertificate& c) {
    json j;
    j["rank"] = c.rank;
    j["expected_rank"] = c.expected_rank;
    j["deficient"] = c.deficient;
    j["exact"] = c.exact;
    if (!c.exact) {
        j["singular_values"] = c.singular_values;
        j["threshold"] = c.threshold;
    }
    if (c.conull) j["conull"] = to_json(*c.conull);
    if (c.exact_conull) j["exact_conull"] = to_json(*c.exact_conull);
    return j;
}

json verdict_json(const Verdict& v) {
    json j;
    j["rank"] = v.rank;
    j["full_rank"] = v.full_rank;
    j["singular"] = v.singular;
    j["certificate"] = certificate_json(v.certificate);
    if (!v.witness_lines.empty()) {
        json lines = json::array();
        for (const auto& l : v.witness_lines) lines.push_back({{"point", to_json(l.point)}, {"dir", to_json(l.dir)}});
        j["witness_lines"] = lines;
    }
    if (v.hyperplane) j["hyperplane"] = to_json(*v.hyperplane);
    if (v.mobility) j["mobility"] = *v.mobility;
    return j;
}

bool theta_is_zero(const Scenario& s) { return !s.theta || s.theta->isZero(0.0); }

} // namespace

json analyze_chain_report(const Scenario& s, const ReportOptions& opt) {
    if (s.kind != ScenarioKind::Chain) throw InputError("analyze-chain needs a scenario of kind 'chain'");
    const Chain c = s.chain();
    const auto theta = s.configuration();
    json r;
    r["kind"] = "chain";
    r["d"] = c.d;
    r["bodies"] = c.bodies();
    r["k"] = c.end_frame.k();
    r["theta"] = to_json(theta.angles);
    r["tol"] = opt.tol;

    const Verdict fv = frame_singularity(c, theta, opt.tol);
    r["frame"] = verdict_json(fv);
    r["frame"]["span_rank"] = fv.certificate.rank;
    if (c.end_frame.k() == 0) {
        const Verdict ev = endpoint_singularity(c, theta, opt.tol);
        r["endpoint"] = verdict_json(ev);
        const auto pairing = matrix_rank(endpoint_pairing_matrix(c, theta), opt.tol);
        r["endpoint"]["pairing_rank"] = pairing.rank;
        r["verdicts_agree"] = ev.singular == fv.singular;
        if (opt.exact) {
            if (!theta_is_zero(s)) throw InputError("--exact analyzes the reference placement only (theta = 0)");
            if (!s.has_exact_axes() || !s.frame_spec->origin.exact)
                throw InputError("--exact needs rational hinge and end-point coordinates");
            r["endpoint"]["exact"] = certificate_json(endpoint_pairing_rank(s.exact_axes(), *s.frame_spec->origin.exact));
        }
    } else if (opt.exact) {
        throw InputError("--exact is available for end-point chains (k = 0)");
    }
    return r;
}

json analyze_cycle_report(const Scenario& s, const ReportOptions& opt) {
    if (s.kind != ScenarioKind::Cycle) throw InputError("analyze-cycle needs a scenario of kind 'cycle'");
    const Verdict v = cycle_mobility(s.axes, opt.tol);
    json r = verdict_json(v);
    r["kind"] = "cycle";
    r["d"] = s.d;
    r["hinges"] = s.axes.size();
    r["tol"] = opt.tol;
    r["flexible"] = *v.mobility > 0;
    const Chain c = s.chain();
    r["fiber_dimension"] = fiber_tangent(c, Configuration::zeros(c.joints()), opt.tol).cols();
    if (opt.exact) {
        const Verdict ex = cycle_mobility(s.exact_axes());
        r["exact"] = verdict_json(ex);
        r["exact_agrees"] = ex.rank == v.rank;
    }
    return r;
}

json analyze_platform_report(const Scenario& s, const ReportOptions& opt) {
    if (s.kind != ScenarioKind::Platform) throw InputError("analyze-platform needs a scenario of kind 'platform'");
    const Verdict v = platform_flexibility(s.platform(), opt.tol);
    json r = verdict_json(v);
    r["kind"] = "platform";
    r["d"] = s.d;
    r["tol"] = opt.tol;
    r["flexible"] = v.singular;
    if (v.hyperplane) {
        const Mat a = skew_from_bivector(*v.hyperplane, s.d + 1);
        json rows = json::array();
        for (Eigen::Index i = 0; i < a.rows(); ++i) rows.push_back(to_json(Vec(a.row(i).transpose())));
        r["skew_form"] = rows;
    }
    if (opt.exact) {
        const Verdict ex = platform_flexibility(s.exact_platform());
        r["exact"] = verdict_json(ex);
        r["exact_agrees"] = ex.rank == v.rank;
    }
    return r;
}

json convert_linkage_report(const Scenario& s, const ReportOptions&) {
    if (s.kind != ScenarioKind::Cycle) throw InputError("convert-linkage needs a scenario of kind 'cycle'");
    const Linkage lk = cycle_to_linkage(s.axes);
    json r = json::parse(linkage_to_json(lk));
    const Moduli m = moduli_invariants(lk);
    json mod;
    mod["independent"] = m.independent;
    mod["dependent"] = m.dependent;
    json ie = json::array(), de = json::array();
    for (const auto& [a, b] : m.independent_edges) ie.push_back({a, b});
    for (const auto& [a, b] : m.dependent_edges) de.push_back({a, b});
    mod["independent_edges"] = ie;
    mod["dependent_edges"] = de;
    mod["note"] = m.note;
    r["moduli"] = mod;
    return r;
}

json flex_report(const Scenario& s, const ReportOptions& opt, std::string& csv) {
    if (s.kind != ScenarioKind::Cycle) throw InputError("flex needs a scenario of kind 'cycle'");
    if (opt.steps < 0) throw InputError("--steps must be non-negative");
    const Chain c = s.chain();
    const auto path = flex_path(c, s.configuration(), opt.steps, opt.step_size, kFiberTol);
    json r;
    r["kind"] = "flex";
    r["steps"] = opt.steps;
    r["step_size"] = opt.step_size;
    double worst = 0.0;
    csv = "step";
    for (int i = 0; i < c.joints(); ++i) csv += ",theta_" + std::to_string(i + 1);
    csv += ",residual\n";
    for (std::size_t t = 0; t < path.size(); ++t) {
        const double res = closure_residual(c, path[t]).norm();
        worst = std::max(worst, res);
        csv += std::to_string(t);
        for (Eigen::Index i = 0; i < path[t].angles.size(); ++i) csv += "," + format_double(path[t].angles(i));
        csv += "," + format_double(res) + "\n";
    }
    r["max_residual"] = worst;
    r["final_theta"] = to_json(path.back().angles);
    if (s.d >= 3) {
        const auto inv = check_linkage_invariance(c, path);
        r["linkage"] = {{"max_length_discrepancy", inv.max_discrepancy},
                        {"worst_configuration", inv.worst_configuration},
                        {"orientations_constant", inv.orientations_constant}};
    }
    return r;
}

json sweep_report(const Scenario& s, const ReportOptions& opt, std::string& csv) {
    if (s.kind == ScenarioKind::Platform) throw InputError("sweep needs a chain or cycle scenario");
    const Chain c = s.chain();
    const auto rep = sweep(c, opt.samples, opt.seed, opt.tol, opt.threads);
    csv = sweep_csv(rep);
    json r;
    r["kind"] = "sweep";
    r["samples"] = rep.samples;
    r["singular_count"] = rep.singular_count;
    r["min_sigma"] = rep.min_sigma;
    r["mean_sigma"] = rep.mean_sigma;
    r["seed"] = rep.seed;
    r["test"] = (!c.is_cycle && c.end_frame.k() == 0) ? "endpoint" : "frame";
    return r;
}

} // namespace hingekit

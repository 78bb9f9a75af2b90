#include "hingekit/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <thread>

#include "hingekit/errors.hpp"
#include "hingekit/random.hpp"

namespace hingekit {

Configuration sample_configuration(int joints, std::uint64_t seed, std::uint64_t index) {
    auto rng = Rng::stream(seed, index);
    Configuration theta = Configuration::zeros(joints);
    for (int i = 0; i < joints; ++i) theta.angles(i) = 2.0 * std::numbers::pi * rng.uniform();
    return theta;
}

namespace {

SweepRow evaluate(const Chain& c, std::size_t index, std::uint64_t seed, double tol) {
    SweepRow row;
    row.index = index;
    const auto theta = sample_configuration(c.joints(), seed, index);
    row.theta = theta.angles;
    const bool endpoint = !c.is_cycle && c.end_frame.k() == 0;
    const Verdict v = endpoint ? endpoint_singularity(c, theta, tol) : frame_singularity(c, theta, tol);
    row.rank = v.rank;
    row.singular = v.singular;
    const int deciding = endpoint ? v.full_rank - 1 : static_cast<int>(binomial(c.d + 1, 2)) - 1;
    const auto& sv = v.certificate.singular_values;
    row.sigma_min = deciding < static_cast<int>(sv.size()) ? sv[deciding] : 0.0;
    return row;
}

} // namespace

SweepReport sweep(const Chain& c, std::size_t samples, std::uint64_t seed, double tol, unsigned threads) {
    if (samples < 1) throw InputError("sweep needs at least one sample");
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(samples)));
    SweepReport report;
    report.samples = samples;
    report.seed = seed;
    report.rows.resize(samples);

    // Contiguous blocks per worker; each row is written once, by index.
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        const std::size_t begin = samples * t / threads;
        const std::size_t end = samples * (t + 1) / threads;
        try {
            for (std::size_t i = begin; i < end; ++i) report.rows[i] = evaluate(c, i, seed, tol);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    double sum = 0.0;
    report.min_sigma = report.rows.front().sigma_min;
    for (const auto& r : report.rows) {
        if (r.singular) ++report.singular_count;
        sum += r.sigma_min;
        report.min_sigma = std::min(report.min_sigma, r.sigma_min);
    }
    report.mean_sigma = sum / static_cast<double>(samples);
    return report;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string sweep_csv(const SweepReport& report) {
    std::string out = "sample_index";
    const auto joints = report.rows.empty() ? 0 : report.rows.front().theta.size();
    for (Eigen::Index i = 0; i < joints; ++i) out += ",theta_" + std::to_string(i + 1);
    out += ",rank,sigma_min,singular\n";
    for (const auto& r : report.rows) {
        out += std::to_string(r.index);
        for (Eigen::Index i = 0; i < r.theta.size(); ++i) out += "," + format_double(r.theta(i));
        out += "," + std::to_string(r.rank) + "," + format_double(r.sigma_min) + "," + (r.singular ? "1" : "0") + "\n";
    }
    return out;
}

} // namespace hingekit

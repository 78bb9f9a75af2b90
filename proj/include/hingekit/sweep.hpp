#pragma once

// Seeded Monte Carlo scan of the configuration torus. Sample i draws its
// angles from Rng::stream(seed, i), so rows do not depend on how samples are
// split across threads.

#include <cstdint>
#include <string>
#include <vector>

#include "hingekit/analysis.hpp"

namespace hingekit {

struct SweepRow {
    std::size_t index = 0;
    Vec theta;
    int rank = 0;
    double sigma_min = 0.0;
    bool singular = false;
};

struct SweepReport {
    std::size_t samples = 0;
    std::size_t singular_count = 0;
    double min_sigma = 0.0;
    double mean_sigma = 0.0;
    std::uint64_t seed = 0;
    std::vector<SweepRow> rows;
};

/// sigma_min is the singular value that decides the verdict (position
/// full_rank - 1), or 0 when the test matrix has fewer.
SweepReport sweep(const Chain& c, std::size_t samples, std::uint64_t seed, double tol = kDefaultRankTol,
                  unsigned threads = 1);

Configuration sample_configuration(int joints, std::uint64_t seed, std::uint64_t index);

/// Header: sample_index,theta_1..theta_{n-1},rank,sigma_min,singular
std::string sweep_csv(const SweepReport& report);

std::string format_double(double x);

} // namespace hingekit

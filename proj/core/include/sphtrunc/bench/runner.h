#pragma once

#include "sphtrunc/bench/cases.h"

#include <span>

namespace sphtrunc::bench
{
struct PairResult
{
    PairReport report;
    CaseResult sw;
    CaseResult tw;
};

/**
 * Runs the case with the standard Wendland kernel and then with the truncated one, sequentially
 * and with identical seed and worker count. Legs write into out_dir/sw and out_dir/tw, the pair
 * summary into out_dir/pair.json. Either leg failing fails the pair.
 */
PairResult paired_run(const CaseConfig &config, const RunOptions &options = {});

/// Field and profile differences between the legs; TW is compared against SW.
MetricMap compare_legs(const CaseResult &sw, const CaseResult &tw);

/// max_t |z_a(t) - z_b(t)| over the sample times of a, with b interpolated linearly in time.
double trajectory_linf_difference(std::span<const TrajectorySample> a, std::span<const TrajectorySample> b);

/// ||a - b||_2 / ||a||_2 over paired values. Throws DomainError if a is zero.
double relative_l2(std::span<const double> a, std::span<const double> b);
} // namespace sphtrunc::bench

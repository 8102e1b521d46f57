#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "aoi/sample_path.hpp"

namespace aoi {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

struct EstimatorOptions {
    std::size_t warmup = 100;   ///< leading records discarded (clamped to n - 2)
    std::size_t batches = 100;  ///< batch-means batches for standard errors
};

/// Records [first, last] contribute; the horizon is (begin, end] with
/// begin = T_D(first - 1) and end = T_D(last).
struct EstimationWindow {
    std::size_t first = 0;
    std::size_t last = 0;
    double begin = 0.0;
    double end = 0.0;

    std::size_t count() const { return last - first + 1; }
    double length() const { return end - begin; }
};

EstimationWindow estimation_window(const SamplePath& path, const EstimatorOptions& opts = {});

/// Time the age spends above d between departures k-1 and k:
/// min{(A_peak - d)^+, T_D(k) - T_D(k-1)}.
double g_of_k(const PeakRecord& r, double d);

/// Lower bound min{(X_k + X_{k-1} + I_k - d)^+, X_k + I_k}. Needs the
/// previous record for W_{k-1}, since the peak is X_k + X_{k-1} + I_k + W_{k-1}.
double gamma_star(const PeakRecord& prev, const PeakRecord& r, double d);

/// Sum of rewards over sum of durations with a batch-means standard error
/// (per-batch ratio estimates over contiguous batches).
Estimate batch_ratio(std::span<const double> reward, std::span<const double> duration, std::size_t batches);

/// Fraction of the horizon with age above d: sum g(k) / T.
Estimate violation_estimate(const SamplePath& path, double d, const EstimatorOptions& opts = {});

/// nu_hat_path * mean g(k), nu_hat_path = peaks in window / horizon length.
Estimate renewal_reward_estimate(const SamplePath& path, double d, const EstimatorOptions& opts = {});

/// Time average of the piecewise-linear age over the horizon.
Estimate mean_aoi_estimate(const SamplePath& path, const EstimatorOptions& opts = {});

/// Path estimate of nu * E[gamma*(k)] as a function of d. For GG11 paths
/// this coincides with violation_estimate.
std::function<Estimate(double)> gamma_star_lower_bound(const SamplePath& path, const EstimatorOptions& opts = {});

struct SiidReport {
    std::size_t n = 0;
    double band = 0.0;  ///< 4 / sqrt(n)
    double lag2_corr_g = 0.0;
    double lag2_corr_inter_departure = 0.0;
    bool g_degenerate = false;
    bool inter_departure_degenerate = false;
    bool g_flagged = false;
    bool inter_departure_flagged = false;
};

/// Lag-2 sample correlations of g(k) and of inter-departure times.
/// Constant sequences are reported as correlation 0 and marked degenerate.
/// Throws std::invalid_argument for GG12STAR paths or fewer than 10^4 peaks.
SiidReport siid_diagnostic(const SamplePath& path, double d, const EstimatorOptions& opts = {});

/// Lag-`lag` Pearson correlation. Returns nullopt-like NaN when either side is constant.
double lag_correlation(std::span<const double> xs, std::size_t lag);

}  // namespace aoi

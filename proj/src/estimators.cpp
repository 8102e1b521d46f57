#include "aoi/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace aoi {

EstimationWindow estimation_window(const SamplePath& path, const EstimatorOptions& opts) {
    const std::size_t n = path.peaks.size();
    if (n < 2) throw std::invalid_argument("estimation needs at least 2 peaks");
    const std::size_t anchor = std::min(opts.warmup, n - 2);
    EstimationWindow w;
    w.first = anchor + 1;
    w.last = n - 1;
    w.begin = path.peaks[anchor].departure;
    w.end = path.peaks[n - 1].departure;
    return w;
}

double g_of_k(const PeakRecord& r, double d) {
    return std::min(std::max(r.peak_age - d, 0.0), r.inter_departure);
}

double gamma_star(const PeakRecord& prev, const PeakRecord& r, double d) {
    // X_k + I_k is the inter-departure time and X_k + X_{k-1} + I_k is the
    // peak minus W_{k-1}; the recorded values avoid re-summing components.
    const double busy_and_idle = r.inter_departure;
    return std::min(std::max(r.peak_age - prev.waiting - d, 0.0), busy_and_idle);
}

Estimate batch_ratio(std::span<const double> reward, std::span<const double> duration, std::size_t batches) {
    const std::size_t m = reward.size();
    Estimate e;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        num += reward[i];
        den += duration[i];
    }
    e.value = den > 0.0 ? num / den : 0.0;

    const std::size_t b = std::min(batches, m / 2);
    if (b < 2) return e;
    std::vector<double> ratios;
    ratios.reserve(b);
    std::size_t start = 0;
    for (std::size_t j = 0; j < b; ++j) {
        const std::size_t stop = (m * (j + 1)) / b;
        double bn = 0.0, bd = 0.0;
        for (std::size_t i = start; i < stop; ++i) {
            bn += reward[i];
            bd += duration[i];
        }
        ratios.push_back(bd > 0.0 ? bn / bd : 0.0);
        start = stop;
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(b);
    double ss = 0.0;
    for (double r : ratios) ss += (r - mean) * (r - mean);
    e.std_error = std::sqrt(ss / static_cast<double>(b - 1) / static_cast<double>(b));
    return e;
}

namespace {

template <class Reward>
Estimate window_ratio(const SamplePath& path, const EstimatorOptions& opts, Reward&& reward) {
    const EstimationWindow w = estimation_window(path, opts);
    std::vector<double> num(w.count()), den(w.count());
    for (std::size_t i = w.first; i <= w.last; ++i) {
        num[i - w.first] = reward(i);
        den[i - w.first] = path.peaks[i].inter_departure;
    }
    Estimate e = batch_ratio(num, den, opts.batches);
    // Horizon length computed from the departure times, not the summed durations.
    double total = 0.0;
    for (double v : num) total += v;
    e.value = total / w.length();
    return e;
}

}  // namespace

Estimate violation_estimate(const SamplePath& path, double d, const EstimatorOptions& opts) {
    return window_ratio(path, opts, [&](std::size_t i) { return g_of_k(path.peaks[i], d); });
}

Estimate renewal_reward_estimate(const SamplePath& path, double d, const EstimatorOptions& opts) {
    const EstimationWindow w = estimation_window(path, opts);
    const double m = static_cast<double>(w.count());
    const double nu_hat = m / w.length();
    double sum_g = 0.0;
    std::vector<double> g(w.count()), tau(w.count());
    for (std::size_t i = w.first; i <= w.last; ++i) {
        g[i - w.first] = g_of_k(path.peaks[i], d);
        tau[i - w.first] = path.peaks[i].inter_departure;
        sum_g += g[i - w.first];
    }
    Estimate e = batch_ratio(g, tau, opts.batches);
    e.value = nu_hat * (sum_g / m);
    return e;
}

Estimate mean_aoi_estimate(const SamplePath& path, const EstimatorOptions& opts) {
    return window_ratio(path, opts, [&](std::size_t i) {
        const PeakRecord& r = path.peaks[i];
        const double tau = r.inter_departure;
        return tau * (r.peak_age - 0.5 * tau);
    });
}

std::function<Estimate(double)> gamma_star_lower_bound(const SamplePath& path, const EstimatorOptions& opts) {
    // Validate eagerly so misuse fails at the call site.
    (void)estimation_window(path, opts);
    return [&path, opts](double d) {
        return window_ratio(path, opts,
                            [&](std::size_t i) { return gamma_star(path.peaks[i - 1], path.peaks[i], d); });
    };
}

double lag_correlation(std::span<const double> xs, std::size_t lag) {
    const std::size_t n = xs.size();
    if (n <= lag + 1) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t m = n - lag;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        ma += xs[i];
        mb += xs[i + lag];
    }
    ma /= static_cast<double>(m);
    mb /= static_cast<double>(m);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = xs[i] - ma;
        const double b = xs[i + lag] - mb;
        sab += a * b;
        saa += a * a;
        sbb += b * b;
    }
    const double scale_a = 1e-9 * std::max(1.0, std::abs(ma));
    const double scale_b = 1e-9 * std::max(1.0, std::abs(mb));
    if (std::sqrt(saa / m) <= scale_a || std::sqrt(sbb / m) <= scale_b) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return sab / std::sqrt(saa * sbb);
}

SiidReport siid_diagnostic(const SamplePath& path, double d, const EstimatorOptions& opts) {
    if (path.discipline == Discipline::gg12star) {
        throw std::invalid_argument("siid_diagnostic: structural independence is not claimed for gg12star");
    }
    if (path.peaks.size() < 10000) {
        throw std::invalid_argument("siid_diagnostic: needs at least 10^4 peaks");
    }
    const EstimationWindow w = estimation_window(path, opts);
    std::vector<double> g, tau;
    g.reserve(w.count());
    tau.reserve(w.count());
    for (std::size_t i = w.first; i <= w.last; ++i) {
        g.push_back(g_of_k(path.peaks[i], d));
        tau.push_back(path.peaks[i].inter_departure);
    }
    SiidReport rep;
    rep.n = w.count();
    rep.band = 4.0 / std::sqrt(static_cast<double>(rep.n));
    const double cg = lag_correlation(g, 2);
    const double ct = lag_correlation(tau, 2);
    rep.g_degenerate = std::isnan(cg);
    rep.inter_departure_degenerate = std::isnan(ct);
    rep.lag2_corr_g = rep.g_degenerate ? 0.0 : cg;
    rep.lag2_corr_inter_departure = rep.inter_departure_degenerate ? 0.0 : ct;
    rep.g_flagged = std::abs(rep.lag2_corr_g) > rep.band;
    rep.inter_departure_flagged = std::abs(rep.lag2_corr_inter_departure) > rep.band;
    return rep;
}

}  // namespace aoi

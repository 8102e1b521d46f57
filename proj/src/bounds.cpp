#include "aoi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aoi/rng.hpp"

namespace aoi::bounds {

double eta(double lambda, double mu, double nu) { return 1.0 / lambda + 1.0 / mu - 1.0 / nu; }

double worst_case_budget(double nu_hat, double eta_value) { return nu_hat * eta_value; }

double resolve_nu_hat(const NuHat& choice, double lambda, double mu) {
    switch (choice.mode) {
        case NuHat::Mode::min_rate: return std::min(lambda, mu);
        case NuHat::Mode::exact:
        case NuHat::Mode::user:
            if (!(choice.value > 0.0) || !std::isfinite(choice.value)) {
                throw std::invalid_argument("nu_hat must be finite and > 0");
            }
            return choice.value;
    }
    throw std::invalid_argument("unknown nu_hat mode");
}

double gamma1(double prev_service, double gap, double service, double d) {
    return std::min(std::max(prev_service + gap + service - d, 0.0), service + gap);
}

double gamma2(double prev_service, double gap, double service, double d) {
    return std::min(std::max(service + prev_service + gap - d, 0.0), service + std::max(gap - prev_service, 0.0));
}

namespace {

template <class Gamma>
std::vector<BoundReport> sweep(const Distribution& arrival, const Distribution& service, std::span<const double> ds,
                               const BoundConfig& cfg, Gamma&& gamma) {
    for (double d : ds) {
        if (!(d >= 0.0)) throw std::invalid_argument("d must be >= 0");
    }
    if (cfg.n_samples < 2) throw std::invalid_argument("n_samples must be >= 2");
    const double lambda = arrival.rate();
    const double mu = service.rate();
    const double nu_hat = resolve_nu_hat(cfg.nu_hat, lambda, mu);
    const double nu = cfg.nu_hat.mode == NuHat::Mode::exact ? nu_hat : cfg.nu.value_or(nu_hat);

    RngStream service_rng = RngStream::substream(cfg.seed, 0);
    RngStream gap_rng = RngStream::substream(cfg.seed, 1);

    // Welford accumulators per d.
    std::vector<double> mean(ds.size(), 0.0), m2(ds.size(), 0.0);
    for (std::size_t i = 0; i < cfg.n_samples; ++i) {
        const double prev = service.sample(service_rng);
        const double x = service.sample(service_rng);
        const double z = arrival.sample(gap_rng);
        const double count = static_cast<double>(i + 1);
        for (std::size_t j = 0; j < ds.size(); ++j) {
            const double v = gamma(prev, z, x, ds[j]);
            const double delta = v - mean[j];
            mean[j] += delta / count;
            m2[j] += delta * (v - mean[j]);
        }
    }

    std::vector<BoundReport> out;
    out.reserve(ds.size());
    const double n = static_cast<double>(cfg.n_samples);
    for (std::size_t j = 0; j < ds.size(); ++j) {
        BoundReport r;
        r.d = ds[j];
        r.nu_hat = nu_hat;
        r.nu = nu;
        r.phi = nu_hat * mean[j];
        r.phi_clamped = std::clamp(r.phi, 0.0, 1.0);
        r.std_error = nu_hat * std::sqrt(m2[j] / (n - 1.0) / n);
        r.eta = eta(lambda, mu, nu);
        r.worst_case_budget = worst_case_budget(nu_hat, r.eta);
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<BoundReport> phi1_sweep(const Distribution& arrival, const Distribution& service,
                                    std::span<const double> ds, const BoundConfig& cfg) {
    return sweep(arrival, service, ds, cfg, gamma1);
}

std::vector<BoundReport> phi2_sweep(const Distribution& arrival, const Distribution& service,
                                    std::span<const double> ds, const BoundConfig& cfg) {
    return sweep(arrival, service, ds, cfg, gamma2);
}

BoundReport phi1(const Distribution& arrival, const Distribution& service, double d, const BoundConfig& cfg) {
    const double ds[] = {d};
    return phi1_sweep(arrival, service, ds, cfg).front();
}

BoundReport phi2(const Distribution& arrival, const Distribution& service, double d, const BoundConfig& cfg) {
    const double ds[] = {d};
    return phi2_sweep(arrival, service, ds, cfg).front();
}

GuaranteeReport guarantee_check(const BoundReport& phi, const Estimate& violation, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
    const double scale = phi.nu_hat / nu;
    GuaranteeReport g;
    g.phi = phi.phi;
    g.violation = violation.value;
    g.gap = phi.phi - violation.value;
    const double sigma = std::hypot(phi.std_error, scale * violation.std_error);
    // Re-base eta on the supplied nu: eta = 1/lambda + 1/mu - 1/nu.
    const double eta_at_nu = phi.eta + 1.0 / phi.nu - 1.0 / nu;
    g.ceiling = scale * violation.value + phi.nu_hat * eta_at_nu + 3.0 * sigma;
    g.passed = g.phi <= g.ceiling;
    return g;
}

}  // namespace aoi::bounds

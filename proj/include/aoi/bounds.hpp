#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aoi/distribution.hpp"
#include "aoi/estimators.hpp"

namespace aoi::bounds {

/// Choice of the departure-rate overestimate nu_hat >= nu.
struct NuHat {
    enum class Mode { exact, min_rate, user };
    Mode mode = Mode::min_rate;
    double value = 0.0;  ///< used by exact and user

    static NuHat exact(double nu) { return {Mode::exact, nu}; }
    static NuHat min_rate() { return {Mode::min_rate, 0.0}; }
    static NuHat user(double nu_hat) { return {Mode::user, nu_hat}; }
};

struct BoundConfig {
    NuHat nu_hat = NuHat::min_rate();
    std::size_t n_samples = 1'000'000;
    std::uint64_t seed = 1;
    /// True departure rate for the budget eta when known and the mode is not
    /// exact. Without it eta is evaluated at nu_hat.
    std::optional<double> nu = std::nullopt;
};

struct BoundReport {
    double d = 0.0;
    double phi = 0.0;          ///< raw nu_hat * E[Gamma]; may exceed 1
    double phi_clamped = 0.0;  ///< phi clamped to [0, 1]
    double nu_hat = 0.0;
    double nu = 0.0;           ///< departure rate used for eta
    double eta = 0.0;          ///< 1/lambda + 1/mu - 1/nu
    double worst_case_budget = 0.0;  ///< nu_hat * eta
    double std_error = 0.0;    ///< of phi
};

/// 1/lambda + 1/mu - 1/nu
double eta(double lambda, double mu, double nu);
double worst_case_budget(double nu_hat, double eta);

/// Resolves nu_hat for given arrival and service rates. Throws
/// std::invalid_argument for non-positive exact/user values.
double resolve_nu_hat(const NuHat& choice, double lambda, double mu);

/// GI/GI/1/1 bound nu_hat * E[min{(X' + Z + X - d)^+, X + Z}] with X', X
/// from the service law and Z from the inter-arrival law, all independent.
BoundReport phi1(const Distribution& arrival, const Distribution& service, double d, const BoundConfig& cfg);

/// GI/GI/1/2* bound nu_hat * E[min{(X + X' + Z - d)^+, X + (Z - X')^+}].
BoundReport phi2(const Distribution& arrival, const Distribution& service, double d, const BoundConfig& cfg);

/// Same samples reused across all d (common random numbers), so the curves
/// are non-increasing in d.
std::vector<BoundReport> phi1_sweep(const Distribution& arrival, const Distribution& service,
                                    std::span<const double> ds, const BoundConfig& cfg);
std::vector<BoundReport> phi2_sweep(const Distribution& arrival, const Distribution& service,
                                    std::span<const double> ds, const BoundConfig& cfg);

/// Per-sample bound values; exposed for tests.
double gamma1(double prev_service, double gap, double service, double d);
double gamma2(double prev_service, double gap, double service, double d);

struct GuaranteeReport {
    bool passed = false;
    double phi = 0.0;
    double violation = 0.0;
    double gap = 0.0;       ///< phi - violation
    double ceiling = 0.0;   ///< (nu_hat/nu) P + nu_hat eta + 3 combined std error
};

/// Checks phi <= (nu_hat/nu) * P + nu_hat * eta + 3 sigma, with sigma the
/// combined standard error of phi and the scaled violation estimate.
GuaranteeReport guarantee_check(const BoundReport& phi, const Estimate& violation, double nu);

}  // namespace aoi::bounds

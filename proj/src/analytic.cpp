#include "aoi/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "aoi/quadrature.hpp"

namespace aoi::analytic {
namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite and > 0");
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
}

void require_existence(double lambda, double d) {
    if (d < (1.0 / lambda) * (1.0 - 1e-12)) {
        throw ExistenceError("violation probability does not exist for periodic arrivals with d < 1/lambda (d = " +
                             std::to_string(d) + ", 1/lambda = " + std::to_string(1.0 / lambda) + ")");
    }
}

// lambda * d with values within rounding of an integer snapped onto it; the
// slotted closed form is continuous there.
double slots(double lambda, double d) {
    const double k = lambda * d;
    const double r = std::round(k);
    return std::abs(k - r) <= 1e-12 * std::max(1.0, k) ? r : k;
}

// sum_{n>=2} eps^{n-2} d^n / n!, valid for |eps d| <= 1
double expm1_second_order_series(double eps, double d) {
    double term = d * d / 2.0;
    double sum = term;
    for (int n = 3; n < 60; ++n) {
        term *= eps * d / n;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

std::vector<double> slot_boundaries(double lambda, const Distribution& service) {
    const double top = quad::tail_point(service, 1e-17);
    const double count = std::min(std::ceil(top * lambda), 200000.0);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (double m = 1.0; m <= count; m += 1.0) out.push_back(m / lambda);
    return out;
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quadrature: return "quadrature";
        case Method::monte_carlo_integral: return "monte_carlo_integral";
    }
    return "?";
}

AnalyticResult mm11_violation(double lambda, double mu, double d) {
    require_positive(lambda, "lambda");
    require_positive(mu, "mu");
    require_nonnegative(d, "d");
    const double nu = 1.0 / (1.0 / lambda + 1.0 / mu);
    const double eps = mu - lambda;
    const double rel = std::abs(eps) / mu;
    const double decay = std::exp(-mu * d);

    double expected_g = 0.0;
    if (rel < 1e-9) {
        expected_g = 0.5 * mu * decay * (d + 2.0 / mu) * (d + 2.0 / mu);
    } else if (rel < 1e-4 && std::abs(eps * d) <= 1.0) {
        const double series = expm1_second_order_series(eps, d);
        expected_g = decay * (d * (mu + lambda) / lambda + (mu * mu / lambda) * series + 1.0 / lambda + 1.0 / mu);
    } else {
        expected_g = mu * mu * (std::exp(-lambda * d) - decay) / (lambda * eps * eps) +
                     decay * (1.0 / lambda + 1.0 / mu - lambda * d / eps);
    }
    return {std::clamp(nu * expected_g, 0.0, 1.0), Method::closed_form, 0.0};
}

AnalyticResult mm11_expected_aoi(double lambda, double mu) {
    require_positive(lambda, "lambda");
    require_positive(mu, "mu");
    return {1.0 / lambda + 2.0 / mu - 1.0 / (mu + lambda), Method::closed_form, 0.0};
}

double dm11_departure_rate(double lambda, double mu) {
    require_positive(lambda, "lambda");
    require_positive(mu, "mu");
    return -lambda * std::expm1(-mu / lambda);
}

AnalyticResult dm11_violation(double lambda, double mu, double d) {
    require_positive(lambda, "lambda");
    require_positive(mu, "mu");
    require_nonnegative(d, "d");
    require_existence(lambda, d);
    const double k = slots(lambda, d);
    const double up = std::ceil(k) / lambda;
    const double down = std::floor(k);
    const double one_minus = -std::expm1(-mu / lambda);
    const double nu = lambda * one_minus;

    const double expected_g = std::exp(-mu * up) / (lambda * one_minus) +
                              std::exp(-mu * down / lambda) * (up - d + 1.0 / mu) +
                              std::exp(-mu * d) / mu * (std::expm1(mu / lambda) * down - 1.0);
    return {std::clamp(nu * expected_g, 0.0, 1.0), Method::closed_form, 0.0};
}

AnalyticResult zero_wait_exp_violation(double mu, double d) {
    require_positive(mu, "mu");
    require_nonnegative(d, "d");
    return {(1.0 + mu * d) * std::exp(-mu * d), Method::closed_form, 0.0};
}

double ceil_mean_exponential(double lambda, double mu) {
    require_positive(lambda, "lambda");
    require_positive(mu, "mu");
    return -1.0 / std::expm1(-mu / lambda);
}

double ceil_mean(double lambda, const Distribution& service) {
    require_positive(lambda, "lambda");
    double sum = 0.0;
    for (double m = 0.0;; m += 1.0) {
        const double p = service.complementary_cdf(m / lambda);
        sum += p;
        if (p < 1e-17 && m / lambda > service.mean()) break;
    }
    return sum;
}

double gg11_departure_rate(double lambda, const Distribution& service, IdleModel idle) {
    require_positive(lambda, "lambda");
    switch (idle) {
        case IdleModel::exponential: return 1.0 / (1.0 / lambda + service.mean());
        case IdleModel::ceil_slotted: return lambda / ceil_mean(lambda, service);
    }
    throw std::invalid_argument("unsupported idle model");
}

double gk_tail_gg11(double lambda, const Distribution& service, IdleModel idle, double y, double d) {
    require_positive(lambda, "lambda");
    require_nonnegative(y, "y");
    require_nonnegative(d, "d");
    const double kink[] = {d};

    switch (idle) {
        case IdleModel::exponential: {
            // P(X_k + I_k > s) with I_k ~ Exp(lambda) independent of X_k.
            auto busy_or_idle_tail = [&](double s) {
                const double at[] = {s};
                return quad::expect(
                           service,
                           [&](double u) { return u >= s ? 1.0 : std::exp(-lambda * (s - u)); }, at)
                    .value;
            };
            return quad::expect(service, [&](double x) { return busy_or_idle_tail(y + std::max(d - x, 0.0)); }, kink)
                .value;
        }
        case IdleModel::ceil_slotted: {
            std::vector<double> breaks = slot_boundaries(lambda, service);
            breaks.push_back(d);
            auto conditional = [&](double x) {
                const double idle_x = std::ceil(slots(lambda, x)) / lambda - x;
                return service.complementary_cdf(y + std::max(d - x, 0.0) - idle_x);
            };
            return quad::expect(service, conditional, breaks).value;
        }
    }
    throw std::invalid_argument("unsupported idle model");
}

AnalyticResult general_violation(double lambda, const Distribution& service, IdleModel idle, double d) {
    require_positive(lambda, "lambda");
    require_nonnegative(d, "d");
    if (idle == IdleModel::ceil_slotted) require_existence(lambda, d);
    const double nu = gg11_departure_rate(lambda, service, idle);
    const quad::Result r = quad::integrate_to_infinity(
        [&](double y) { return gk_tail_gg11(lambda, service, idle, y, d); }, 0.0, 1.0 / nu);
    return {std::clamp(nu * r.value, 0.0, 1.0), Method::quadrature, nu * r.abs_error};
}

}  // namespace aoi::analytic

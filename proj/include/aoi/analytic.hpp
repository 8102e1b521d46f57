#pragma once

#include <stdexcept>
#include <string_view>

#include "aoi/distribution.hpp"

namespace aoi::analytic {

enum class Method { closed_form, quadrature, monte_carlo_integral };

std::string_view to_string(Method m);

struct AnalyticResult {
    double value = 0.0;
    Method method = Method::closed_form;
    double abs_error_bound = 0.0;
};

/// The steady-state violation probability does not exist for the requested
/// parameters (deterministic arrivals with d < 1/lambda).
class ExistenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Law of the idle period I_k preceding each service in a GI/GI/1/1 system.
enum class IdleModel {
    exponential,   ///< Poisson arrivals: I_k ~ Exp(lambda), independent of X_{k-1}
    ceil_slotted,  ///< periodic arrivals: I_k = ceil(lambda X_{k-1}) / lambda - X_{k-1}
};

/// M/M/1/1 violation probability nu * E[g(k)], 1/nu = 1/lambda + 1/mu.
/// When |lambda - mu| / mu < 1e-9 the equal-rate form is used; below 1e-4
/// the unequal-rate form is evaluated through a series to avoid the
/// cancellation around its (mu - lambda)^2 denominator.
AnalyticResult mm11_violation(double lambda, double mu, double d);

/// 1/lambda + 2/mu - 1/(mu + lambda)
AnalyticResult mm11_expected_aoi(double lambda, double mu);

/// D/M/1/1 violation probability. Throws ExistenceError when d < 1/lambda.
AnalyticResult dm11_violation(double lambda, double mu, double d);

/// Departure rate of D/M/1/1: lambda (1 - e^{-mu/lambda}).
double dm11_departure_rate(double lambda, double mu);

/// Zero-wait policy with Exp(mu) service: (1 + mu d) e^{-mu d}.
AnalyticResult zero_wait_exp_violation(double mu, double d);

/// E[ceil(lambda X)] for X ~ Exp(mu): 1 / (1 - e^{-mu/lambda}).
double ceil_mean_exponential(double lambda, double mu);

/// E[ceil(lambda X)] for an arbitrary service law, as sum_{m>=0} P(X > m/lambda).
double ceil_mean(double lambda, const Distribution& service);

/// Departure rate 1/(E[X] + E[I]) of a GI/GI/1/1 system under the idle model.
double gg11_departure_rate(double lambda, const Distribution& service, IdleModel idle);

/// P(g(k) > y) for a GI/GI/1/1 system, by quadrature over X_{k-1} = x:
/// E_x[ P(X_k + I_k > y + (d - x)^+ | X_{k-1} = x) ].
double gk_tail_gg11(double lambda, const Distribution& service, IdleModel idle, double y, double d);

/// nu * integral_0^inf P(g(k) > y) dy. Throws ExistenceError for the slotted
/// idle model when d < 1/lambda.
AnalyticResult general_violation(double lambda, const Distribution& service, IdleModel idle, double d);

}  // namespace aoi::analytic

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "aoi/distribution.hpp"

namespace aoi::quad {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) on [a, b], split at every breakpoint that
/// falls strictly inside the interval. Breakpoints need not be sorted.
Result integrate(const Integrand& f, double a, double b, std::span<const double> breaks = {});

/// Integral over [a, inf). Panels [a, a+L], then the truncation point is
/// doubled (measured from a) until both the last panel and the integrand at
/// the truncation point times the panel width fall below 1e-15 of the total.
Result integrate_to_infinity(const Integrand& f, double a, double initial_length,
                             std::span<const double> breaks = {});

/// E[h(X)] for X ~ dist. Point masses are evaluated exactly; densities are
/// integrated over the support with the given breakpoints.
Result expect(const Distribution& dist, const Integrand& h, std::span<const double> breaks = {});

/// Smallest x with P(X > x) < threshold, found by doubling. Used to bound
/// generated breakpoint grids.
double tail_point(const Distribution& dist, double threshold);

}  // namespace aoi::quad

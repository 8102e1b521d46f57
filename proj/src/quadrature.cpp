#include "aoi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace aoi::quad {
namespace {

constexpr unsigned kMaxDepth = 18;
constexpr double kRelTol = 1e-11;
constexpr double kTailRel = 1e-15;
constexpr int kZeroDoublings = 8;
constexpr int kMaxDoublings = 64;

// Boost reports a relative error estimate. Node placement on a short panel
// far from the origin carries roundoff of order eps * |x| / (b - a), so the
// tolerance is relaxed to that level instead of bisecting forever.
Result panel(const Integrand& f, double a, double b, unsigned depth) {
    double rel_err = 0.0, l1 = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, kRelTol, &rel_err, &l1);
    const double scale = std::max(std::abs(a), std::abs(b));
    const double tol = std::max(kRelTol, 1e3 * std::numeric_limits<double>::epsilon() * scale / (b - a));
    if (depth == 0 || rel_err <= tol || l1 == 0.0) return {v, rel_err * l1};
    const double m = 0.5 * (a + b);
    const Result left = panel(f, a, m, depth - 1);
    const Result right = panel(f, m, b, depth - 1);
    return {left.value + right.value, left.abs_error + right.abs_error};
}

Result panel(const Integrand& f, double a, double b) {
    if (!(b > a)) return {};
    return panel(f, a, b, kMaxDepth);
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, std::span<const double> breaks) {
    if (!(b > a)) return {};
    std::vector<double> cuts{a};
    for (double x : breaks) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Result total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Result r = panel(f, cuts[i], cuts[i + 1]);
        total.value += r.value;
        total.abs_error += r.abs_error;
    }
    return total;
}

Result integrate_to_infinity(const Integrand& f, double a, double initial_length, std::span<const double> breaks) {
    double length = initial_length > 0.0 ? initial_length : 1.0;
    double lo = a;
    double hi = a + length;
    Result total;
    for (int i = 0; i < kMaxDoublings; ++i) {
        const Result r = integrate(f, lo, hi, breaks);
        total.value += r.value;
        total.abs_error += r.abs_error;
        // Relative stopping rule: nested integrals may be tiny in absolute terms.
        const double scale = std::abs(total.value);
        const double width = hi - lo;
        const bool small_tail = std::abs(f(hi)) * width <= kTailRel * scale;
        const bool stable = std::abs(r.value) <= kTailRel * scale;
        if (scale > 0.0 && small_tail && stable) break;
        if (scale == 0.0 && r.value == 0.0 && i >= kZeroDoublings) break;
        lo = hi;
        length *= 2.0;
        hi = a + length;
    }
    return total;
}

Result expect(const Distribution& dist, const Integrand& h, std::span<const double> breaks) {
    if (const auto* d = std::get_if<Deterministic>(&dist.law())) {
        return {h(d->value), 0.0};
    }
    const Integrand weighted = [&](double x) {
        const double p = dist.pdf(x);
        return p == 0.0 ? 0.0 : h(x) * p;
    };
    return integrate_to_infinity(weighted, dist.support_min(), dist.mean(), breaks);
}

double tail_point(const Distribution& dist, double threshold) {
    double x = std::max(dist.mean(), 1e-300);
    while (dist.complementary_cdf(x) >= threshold && std::isfinite(x)) x *= 2.0;
    return x;
}

}  // namespace aoi::quad

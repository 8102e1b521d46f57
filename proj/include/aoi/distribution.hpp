#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "aoi/rng.hpp"

namespace aoi {

struct Deterministic {
    double value;
};

struct Exponential {
    double rate;
};

/// shift + Exp(rate)
struct ShiftedExponential {
    double shift;
    double rate;
};

/// Sum of `shape` independent Exp(rate) variables.
struct Erlang {
    int shape;
    double rate;
};

/// Inter-arrival or service-time law. Construct through the factory
/// functions below, which validate parameters; every value obtained that
/// way has a finite positive mean.
class Distribution {
public:
    using Law = std::variant<Deterministic, Exponential, ShiftedExponential, Erlang>;

    static Distribution deterministic(double value);
    static Distribution exponential(double rate);
    static Distribution shifted_exponential(double shift, double rate);
    static Distribution erlang(int shape, double rate);

    /// Shifted exponential with the given total mean: rate = 1 / (mean - shift).
    static Distribution shifted_exponential_with_mean(double shift, double mean);
    /// Erlang with the given mean: rate = shape / mean.
    static Distribution erlang_with_mean(int shape, double mean);

    const Law& law() const noexcept { return law_; }

    bool is_deterministic() const noexcept { return std::holds_alternative<Deterministic>(law_); }
    bool is_exponential() const noexcept { return std::holds_alternative<Exponential>(law_); }

    double mean() const;
    /// 1 / mean
    double rate() const { return 1.0 / mean(); }
    double cdf(double x) const;
    double complementary_cdf(double x) const;
    /// Lebesgue density. Zero everywhere for Deterministic (a point mass).
    double pdf(double x) const;
    /// Infimum of the support.
    double support_min() const;

    double sample(RngStream& rng) const;

    /// Grammar form, e.g. "sexp(0.11,1.12359551)". Round-trips through parse().
    std::string to_string() const;
    /// Parses `deterministic(v)`, `exp(rate)`, `sexp(shift,rate)`, `erlang(k,rate)`.
    /// Throws std::invalid_argument on malformed text or invalid parameters.
    static Distribution parse(std::string_view text);

    friend bool operator==(const Distribution& a, const Distribution& b);

private:
    explicit Distribution(Law law) : law_(law) {}
    Law law_;
};

bool operator==(const Deterministic& a, const Deterministic& b);
bool operator==(const Exponential& a, const Exponential& b);
bool operator==(const ShiftedExponential& a, const ShiftedExponential& b);
bool operator==(const Erlang& a, const Erlang& b);

}  // namespace aoi

#include "aoi/distribution.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace aoi {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

double exp_sample(double rate, RngStream& rng) { return -std::log(rng.uniform_open()) / rate; }

// P(Erlang(k, rate) > x) = sum_{n<k} e^{-rx} (rx)^n / n!
double erlang_tail(int shape, double rate, double x) {
    if (x <= 0.0) return 1.0;
    const double rx = rate * x;
    double term = std::exp(-rx);
    double sum = term;
    for (int n = 1; n < shape; ++n) {
        term *= rx / n;
        sum += term;
    }
    return std::min(1.0, sum);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_number(const std::string& s) {
    const std::string t = trim(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + t + "'");
    }
    if (used != t.size()) throw std::invalid_argument("not a number: '" + t + "'");
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

Distribution Distribution::deterministic(double value) {
    require(finite_positive(value), "deterministic value must be finite and > 0");
    return Distribution(Deterministic{value});
}

Distribution Distribution::exponential(double rate) {
    require(finite_positive(rate), "exponential rate must be finite and > 0");
    return Distribution(Exponential{rate});
}

Distribution Distribution::shifted_exponential(double shift, double rate) {
    require(std::isfinite(shift) && shift >= 0.0, "shift must be finite and >= 0");
    require(finite_positive(rate), "shifted-exponential rate must be finite and > 0");
    return Distribution(ShiftedExponential{shift, rate});
}

Distribution Distribution::erlang(int shape, double rate) {
    require(shape >= 1, "erlang shape must be a positive integer");
    require(finite_positive(rate), "erlang rate must be finite and > 0");
    return Distribution(Erlang{shape, rate});
}

Distribution Distribution::shifted_exponential_with_mean(double shift, double mean) {
    require(std::isfinite(mean) && mean > shift, "mean must exceed the shift");
    return shifted_exponential(shift, 1.0 / (mean - shift));
}

Distribution Distribution::erlang_with_mean(int shape, double mean) {
    require(finite_positive(mean), "erlang mean must be finite and > 0");
    return erlang(shape, shape / mean);
}

double Distribution::mean() const {
    return std::visit(overloaded{
                          [](const Deterministic& d) { return d.value; },
                          [](const Exponential& e) { return 1.0 / e.rate; },
                          [](const ShiftedExponential& s) { return s.shift + 1.0 / s.rate; },
                          [](const Erlang& e) { return e.shape / e.rate; },
                      },
                      law_);
}

double Distribution::complementary_cdf(double x) const {
    return std::visit(overloaded{
                          [x](const Deterministic& d) { return x < d.value ? 1.0 : 0.0; },
                          [x](const Exponential& e) { return x <= 0.0 ? 1.0 : std::exp(-e.rate * x); },
                          [x](const ShiftedExponential& s) {
                              return x <= s.shift ? 1.0 : std::exp(-s.rate * (x - s.shift));
                          },
                          [x](const Erlang& e) { return erlang_tail(e.shape, e.rate, x); },
                      },
                      law_);
}

double Distribution::cdf(double x) const {
    return std::visit(overloaded{
                          [x](const Deterministic& d) { return x < d.value ? 0.0 : 1.0; },
                          [x](const Exponential& e) { return x <= 0.0 ? 0.0 : -std::expm1(-e.rate * x); },
                          [x](const ShiftedExponential& s) {
                              return x <= s.shift ? 0.0 : -std::expm1(-s.rate * (x - s.shift));
                          },
                          [x](const Erlang& e) { return 1.0 - erlang_tail(e.shape, e.rate, x); },
                      },
                      law_);
}

double Distribution::pdf(double x) const {
    return std::visit(overloaded{
                          [](const Deterministic&) { return 0.0; },
                          [x](const Exponential& e) { return x < 0.0 ? 0.0 : e.rate * std::exp(-e.rate * x); },
                          [x](const ShiftedExponential& s) {
                              return x < s.shift ? 0.0 : s.rate * std::exp(-s.rate * (x - s.shift));
                          },
                          [x](const Erlang& e) {
                              if (x < 0.0) return 0.0;
                              if (x == 0.0) return e.shape == 1 ? e.rate : 0.0;
                              const double log_f = e.shape * std::log(e.rate) + (e.shape - 1) * std::log(x) -
                                                   e.rate * x - std::lgamma(static_cast<double>(e.shape));
                              return std::exp(log_f);
                          },
                      },
                      law_);
}

double Distribution::support_min() const {
    return std::visit(overloaded{
                          [](const Deterministic& d) { return d.value; },
                          [](const Exponential&) { return 0.0; },
                          [](const ShiftedExponential& s) { return s.shift; },
                          [](const Erlang&) { return 0.0; },
                      },
                      law_);
}

double Distribution::sample(RngStream& rng) const {
    return std::visit(overloaded{
                          [](const Deterministic& d) { return d.value; },
                          [&rng](const Exponential& e) { return exp_sample(e.rate, rng); },
                          [&rng](const ShiftedExponential& s) { return s.shift + exp_sample(s.rate, rng); },
                          [&rng](const Erlang& e) {
                              double acc = 0.0;
                              for (int i = 0; i < e.shape; ++i) acc -= std::log(rng.uniform_open());
                              return acc / e.rate;
                          },
                      },
                      law_);
}

std::string Distribution::to_string() const {
    return std::visit(overloaded{
                          [](const Deterministic& d) { return "deterministic(" + fmt(d.value) + ")"; },
                          [](const Exponential& e) { return "exp(" + fmt(e.rate) + ")"; },
                          [](const ShiftedExponential& s) {
                              return "sexp(" + fmt(s.shift) + "," + fmt(s.rate) + ")";
                          },
                          [](const Erlang& e) { return "erlang(" + std::to_string(e.shape) + "," + fmt(e.rate) + ")"; },
                      },
                      law_);
}

Distribution Distribution::parse(std::string_view text) {
    const std::string s = trim(text);
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') {
        throw std::invalid_argument("expected name(args): '" + s + "'");
    }
    const std::string name = trim(s.substr(0, open));
    std::vector<std::string> args;
    {
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) args.push_back(item);
    }
    auto want = [&](std::size_t n) {
        if (args.size() != n) {
            throw std::invalid_argument(name + " takes " + std::to_string(n) + " argument(s): '" + s + "'");
        }
    };
    if (name == "deterministic") {
        want(1);
        return deterministic(parse_number(args[0]));
    }
    if (name == "exp") {
        want(1);
        return exponential(parse_number(args[0]));
    }
    if (name == "sexp") {
        want(2);
        return shifted_exponential(parse_number(args[0]), parse_number(args[1]));
    }
    if (name == "erlang") {
        want(2);
        const double k = parse_number(args[0]);
        if (k != std::floor(k) || k < 1 || k > std::numeric_limits<int>::max()) {
            throw std::invalid_argument("erlang shape must be a positive integer: '" + s + "'");
        }
        return erlang(static_cast<int>(k), parse_number(args[1]));
    }
    throw std::invalid_argument("unknown distribution '" + name + "'");
}

bool operator==(const Deterministic& a, const Deterministic& b) { return a.value == b.value; }
bool operator==(const Exponential& a, const Exponential& b) { return a.rate == b.rate; }
bool operator==(const ShiftedExponential& a, const ShiftedExponential& b) {
    return a.shift == b.shift && a.rate == b.rate;
}
bool operator==(const Erlang& a, const Erlang& b) { return a.shape == b.shape && a.rate == b.rate; }
bool operator==(const Distribution& a, const Distribution& b) { return a.law_ == b.law_; }

}  // namespace aoi

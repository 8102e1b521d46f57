#include "aoi/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "aoi/rng.hpp"

namespace aoi {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

std::uint64_t to_count(const std::string& s) {
    // Accept 1e6-style literals as long as they are whole numbers.
    const double v = to_double(s);
    if (v < 0 || v != std::floor(v) || v > 1e18) throw std::invalid_argument("not a whole number: '" + s + "'");
    std::uint64_t out = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc{} && p == s.data() + s.size()) return out;
    return static_cast<std::uint64_t>(v);
}

std::vector<double> to_list(const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        throw std::invalid_argument("expected a list like [1, 2, 3]");
    }
    std::vector<double> out;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) throw std::invalid_argument("empty list element");
        out.push_back(to_double(t));
    }
    return out;
}

// Strips a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

}  // namespace

LawTemplate LawTemplate::parse(std::string_view text) {
    const std::string s = trim(text);
    LawTemplate t;
    if (s == "deterministic") {
        t.kind_ = Kind::deterministic;
        return t;
    }
    if (s == "exp") {
        t.kind_ = Kind::exponential;
        return t;
    }
    const auto open = s.find('(');
    if (open != std::string::npos && s.back() == ')' && s.find(',') == std::string::npos) {
        const std::string name = trim(s.substr(0, open));
        const std::string arg = trim(s.substr(open + 1, s.size() - open - 2));
        if (name == "erlang") {
            const double k = to_double(arg);
            if (k < 1 || k != std::floor(k) || k > 1e6) {
                throw std::invalid_argument("erlang shape must be a positive integer: '" + s + "'");
            }
            t.kind_ = Kind::erlang;
            t.shape_ = static_cast<int>(k);
            return t;
        }
        if (name == "sexp") {
            t.kind_ = Kind::shifted_exponential;
            t.shift_ = to_double(arg);
            if (!(t.shift_ >= 0.0)) throw std::invalid_argument("sexp shift must be >= 0: '" + s + "'");
            return t;
        }
    }
    return of(Distribution::parse(s));
}

LawTemplate LawTemplate::of(Distribution law) {
    LawTemplate t;
    t.kind_ = Kind::fixed;
    t.law_ = std::move(law);
    return t;
}

Distribution LawTemplate::at_rate(double rate) const {
    if (kind_ == Kind::fixed) return *law_;
    if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("rate must be finite and > 0");
    const double mean = 1.0 / rate;
    switch (kind_) {
        case Kind::deterministic: return Distribution::deterministic(mean);
        case Kind::exponential: return Distribution::exponential(rate);
        case Kind::erlang: return Distribution::erlang_with_mean(shape_, mean);
        case Kind::shifted_exponential: return Distribution::shifted_exponential_with_mean(shift_, mean);
        case Kind::fixed: break;
    }
    return *law_;
}

std::string LawTemplate::to_string() const {
    switch (kind_) {
        case Kind::fixed: return law_->to_string();
        case Kind::deterministic: return "deterministic";
        case Kind::exponential: return "exp";
        case Kind::erlang: return "erlang(" + std::to_string(shape_) + ")";
        case Kind::shifted_exponential: {
            std::ostringstream os;
            os.precision(17);
            os << "sexp(" << shift_ << ")";
            return os.str();
        }
    }
    return "?";
}

std::string_view to_string(SweepKind s) { return s == SweepKind::lambda ? "lambda" : "d"; }

ScenarioError::ScenarioError(std::size_t line, const std::string& what, const std::string& source)
    : std::runtime_error((source.empty() ? "" : source + ": ") + (line ? "line " + std::to_string(line) + ": " : "") +
                         what),
      line_(line),
      detail_(what) {}

bounds::NuHat parse_nu_hat(std::string_view text) {
    const std::string s = unquote(trim(text));
    if (s == "exact") return bounds::NuHat::exact(0.0);
    if (s == "min-rate") return bounds::NuHat::min_rate();
    const double v = to_double(s);
    if (!(v > 0.0)) throw std::invalid_argument("nu_hat must be > 0");
    return bounds::NuHat::user(v);
}

void Scenario::validate() const {
    auto fail = [](const std::string& why) { throw ScenarioError(0, why); };
    if (values.empty()) fail("values must not be empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && !(values[i] > values[i - 1])) fail("values must be strictly increasing");
        if (sweep == SweepKind::lambda ? !(values[i] > 0.0) : !(values[i] >= 0.0)) {
            fail("values must be positive");
        }
    }
    if (peaks < 2) fail("peaks must be >= 2");
    if (replications < 1) fail("replications must be >= 1");
    if (bound_samples < 2) fail("bound_samples must be >= 2");
    if (!(mu > 0.0)) fail("mu must be > 0");

    if (system == Discipline::zero_wait) {
        if (arrival) fail("zero-wait systems take no arrival law");
        if (sweep == SweepKind::lambda) fail("zero-wait systems cannot sweep lambda");
        if (lambda) fail("zero-wait systems take no lambda");
        return;
    }
    if (!arrival) fail(std::string(to_string(system)) + " requires an arrival law");
    if (sweep == SweepKind::lambda) {
        if (arrival->is_fixed()) fail("sweeping lambda needs an arrival family such as 'deterministic' or 'exp'");
        if (!d) fail("sweeping lambda needs a fixed d");
        if (lambda) fail("lambda is swept; remove the fixed lambda");
        if (!(*d >= 0.0)) fail("d must be >= 0");
    } else {
        if (arrival->is_fixed() && lambda) fail("arrival law is fully specified; remove lambda");
        if (!arrival->is_fixed() && !lambda) fail("arrival family '" + arrival->to_string() + "' needs lambda");
        if (lambda && !(*lambda > 0.0)) fail("lambda must be > 0");
        if (d) fail("d is swept; remove the fixed d");
    }
}

double Scenario::lambda_at(std::size_t i) const {
    if (system == Discipline::zero_wait) return std::numeric_limits<double>::infinity();
    if (sweep == SweepKind::lambda) return values.at(i);
    return lambda ? *lambda : arrival->at_rate(1.0).rate();
}

double Scenario::d_at(std::size_t i) const { return sweep == SweepKind::d ? values.at(i) : *d; }

SystemSpec Scenario::system_at(std::size_t i) const {
    const Distribution s = service.at_rate(mu);
    if (system == Discipline::zero_wait) return SystemSpec::zero_wait(s);
    return SystemSpec::make(system, arrival->at_rate(lambda_at(i)), s);
}

std::uint64_t Scenario::replication_seed(std::size_t i, std::size_t rep) const {
    return RngStream::substream(seed, i * 1'000'003ULL + rep).next_u64();
}

Scenario parse_scenario(std::istream& is) {
    static const std::set<std::string> known{"name",  "system", "arrival", "service", "lambda",
                                             "mu",    "d",      "sweep",   "values",  "peaks",
                                             "replications", "seed", "nu_hat", "bound_samples"};
    Scenario sc;
    std::map<std::string, std::size_t> seen;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ScenarioError(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (!known.contains(key)) throw ScenarioError(lineno, "unknown key '" + key + "'");
        if (seen.contains(key)) {
            throw ScenarioError(lineno, "duplicate key '" + key + "' (first set on line " +
                                            std::to_string(seen[key]) + ")");
        }
        seen[key] = lineno;
        if (value.empty()) throw ScenarioError(lineno, "empty value for '" + key + "'");
        try {
            if (key == "name") {
                sc.name = value;
            } else if (key == "system") {
                sc.system = parse_discipline(value);
            } else if (key == "arrival") {
                sc.arrival = LawTemplate::parse(value);
            } else if (key == "service") {
                sc.service = LawTemplate::parse(value);
            } else if (key == "lambda") {
                sc.lambda = to_double(value);
            } else if (key == "mu") {
                sc.mu = to_double(value);
            } else if (key == "d") {
                sc.d = to_double(value);
            } else if (key == "sweep") {
                if (value == "lambda") {
                    sc.sweep = SweepKind::lambda;
                } else if (value == "d") {
                    sc.sweep = SweepKind::d;
                } else {
                    throw std::invalid_argument("sweep must be 'lambda' or 'd'");
                }
            } else if (key == "values") {
                sc.values = to_list(value);
            } else if (key == "peaks") {
                sc.peaks = to_count(value);
            } else if (key == "replications") {
                sc.replications = to_count(value);
            } else if (key == "seed") {
                sc.seed = to_count(value);
            } else if (key == "nu_hat") {
                sc.nu_hat = parse_nu_hat(value);
            } else if (key == "bound_samples") {
                sc.bound_samples = to_count(value);
            }
        } catch (const ScenarioError&) {
            throw;
        } catch (const std::exception& e) {
            throw ScenarioError(lineno, key + ": " + e.what());
        }
    }
    for (const char* required : {"system", "sweep", "values"}) {
        if (!seen.contains(required)) throw ScenarioError(0, std::string("missing key '") + required + "'");
    }
    sc.validate();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
    try {
        return parse_scenario(in);
    } catch (const ScenarioError& e) {
        throw ScenarioError(e.line(), e.detail(), path.string());
    }
}

}  // namespace aoi

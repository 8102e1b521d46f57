#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/bounds.hpp"
#include "aoi/distribution.hpp"
#include "aoi/sample_path.hpp"

namespace aoi {

/// A law given either in full ("exp(2)") or as a family whose mean is the
/// reciprocal of a rate supplied later ("exp", "deterministic", "erlang(2)",
/// "sexp(0.11)").
class LawTemplate {
public:
    enum class Kind { fixed, deterministic, exponential, erlang, shifted_exponential };

    static LawTemplate parse(std::string_view text);
    static LawTemplate of(Distribution law);

    bool is_fixed() const { return kind_ == Kind::fixed; }
    Kind kind() const { return kind_; }
    /// The law with mean 1/rate; the fixed law is returned unchanged.
    Distribution at_rate(double rate) const;
    std::string to_string() const;

private:
    Kind kind_ = Kind::fixed;
    std::optional<Distribution> law_;
    int shape_ = 1;
    double shift_ = 0.0;
};

enum class SweepKind { lambda, d };

std::string_view to_string(SweepKind s);

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::size_t line, const std::string& what, const std::string& source = "");
    std::size_t line() const { return line_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string detail_;
};

struct Scenario {
    std::string name;
    Discipline system = Discipline::gg11;
    std::optional<LawTemplate> arrival;
    LawTemplate service = LawTemplate::parse("exp");
    std::optional<double> lambda;  ///< fixed arrival rate when sweeping d
    double mu = 1.0;               ///< rate for a service family
    std::optional<double> d;       ///< fixed age limit when sweeping lambda
    SweepKind sweep = SweepKind::d;
    std::vector<double> values;
    std::size_t peaks = 1'000'000;
    std::size_t replications = 5;
    std::uint64_t seed = 1;
    bounds::NuHat nu_hat = bounds::NuHat::min_rate();
    std::size_t bound_samples = 1'000'000;

    /// Throws ScenarioError (line 0) on inconsistent settings.
    void validate() const;

    double lambda_at(std::size_t i) const;
    double d_at(std::size_t i) const;
    SystemSpec system_at(std::size_t i) const;
    /// Seed of replication `rep` at sweep point `i`.
    std::uint64_t replication_seed(std::size_t i, std::size_t rep) const;
};

/// `key = value` lines; `#` starts a comment; strings may be quoted; lists
/// are written `[a, b, c]`. Keys: name, system, arrival, service, lambda, mu,
/// d, sweep, values, peaks, replications, seed, nu_hat, bound_samples.
Scenario parse_scenario(std::istream& is);
Scenario load_scenario(const std::filesystem::path& path);

/// "exact", "min-rate" or a positive number.
bounds::NuHat parse_nu_hat(std::string_view text);

}  // namespace aoi

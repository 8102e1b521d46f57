#include <sstream>
#include <stdexcept>

#include "aoi/scenario.hpp"
#include "doctest.h"

using aoi::Discipline;
using aoi::LawTemplate;
using aoi::Scenario;
using aoi::ScenarioError;
using aoi::SweepKind;

namespace {

Scenario parse(const std::string& text) {
    std::istringstream in(text);
    return aoi::parse_scenario(in);
}

}  // namespace

TEST_CASE("law templates") {
    CHECK(LawTemplate::parse("deterministic").at_rate(0.4).mean() == doctest::Approx(2.5));
    CHECK(LawTemplate::parse("exp").at_rate(2.0).is_exponential());
    const auto se = LawTemplate::parse("sexp(0.11)").at_rate(1.0);
    CHECK(se.mean() == doctest::Approx(1.0));
    CHECK(se.support_min() == doctest::Approx(0.11));
    CHECK(LawTemplate::parse("erlang(2)").at_rate(0.5).mean() == doctest::Approx(2.0));
    const auto fixed = LawTemplate::parse("sexp(0.5, 2)");
    CHECK(fixed.is_fixed());
    CHECK(fixed.at_rate(123.0).mean() == doctest::Approx(1.0));
    CHECK(LawTemplate::parse("erlang(3)").to_string() == "erlang(3)");
    CHECK_THROWS_AS(LawTemplate::parse("erlang(0.5)"), std::invalid_argument);
    CHECK_THROWS_AS(LawTemplate::parse("uniform"), std::invalid_argument);
}

TEST_CASE("a lambda sweep") {
    const auto sc = parse(R"(
# D/M/1/1
name = "dm11"
system = gg11
arrival = "deterministic"
service = exp(1)
d = 5
sweep = lambda
values = [0.2, 0.4, 1e0]   # trailing comment
peaks = 1e5
replications = 2
seed = 42
nu_hat = exact
bound_samples = 1000
)");
    CHECK(sc.name == "dm11");
    CHECK(sc.system == Discipline::gg11);
    CHECK(sc.sweep == SweepKind::lambda);
    REQUIRE(sc.values.size() == 3);
    CHECK(sc.values[2] == 1.0);
    CHECK(sc.peaks == 100000);
    CHECK(sc.replications == 2);
    CHECK(sc.seed == 42);
    CHECK(sc.nu_hat.mode == aoi::bounds::NuHat::Mode::exact);
    CHECK(sc.lambda_at(1) == 0.4);
    CHECK(sc.d_at(2) == 5.0);
    const auto spec = sc.system_at(1);
    CHECK(spec.arrival()->is_deterministic());
    CHECK(spec.arrival_rate() == doctest::Approx(0.4));
    CHECK(sc.replication_seed(0, 0) != sc.replication_seed(0, 1));
    CHECK(sc.replication_seed(1, 0) != sc.replication_seed(0, 1));
}

TEST_CASE("a d sweep with defaults") {
    const auto sc = parse("system = gg12star\narrival = erlang(2)\nlambda = 0.45\nservice = deterministic\n"
                          "sweep = d\nvalues = [3]\n");
    CHECK(sc.peaks == 1'000'000);
    CHECK(sc.replications == 5);
    CHECK(sc.bound_samples == 1'000'000);
    CHECK(sc.nu_hat.mode == aoi::bounds::NuHat::Mode::min_rate);
    CHECK(sc.system_at(0).service().is_deterministic());
    CHECK(sc.system_at(0).service().mean() == 1.0);
    CHECK(sc.lambda_at(0) == 0.45);

    const auto zw = parse("system = zero-wait\nservice = exp(2)\nsweep = d\nvalues = [0, 1]\nnu_hat = 0.3\n");
    CHECK(zw.system_at(1).discipline() == Discipline::zero_wait);
    CHECK(zw.nu_hat.value == 0.3);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse(text);
        } catch (const ScenarioError& e) {
            return e.line();
        }
        return 9999;
    };
    CHECK(line_of("system = gg11\nbogus = 1\n") == 2);
    CHECK(line_of("system = gg11\n\nsystem = gg12star\n") == 3);
    CHECK(line_of("system = gg11\nno equals sign\n") == 2);
    CHECK(line_of("system = gg11\narrival = exp\nlambda = fast\n") == 3);
    CHECK(line_of("system = mm1\n") == 1);
    CHECK(line_of("system = gg11\nvalues = 1, 2\n") == 2);
    CHECK(line_of("system = gg11\npeaks = 2.5\n") == 2);
    CHECK(line_of("system = gg11\nnu_hat = -1\n") == 2);
    CHECK(line_of("system = gg11\nsweep = mu\n") == 2);
    try {
        parse("system = gg11\nbogus = 1\n");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("inconsistent scenarios are rejected") {
    const std::string base = "system = gg11\nservice = exp(1)\n";
    CHECK_THROWS_AS(parse(base + "arrival = exp\nsweep = d\nvalues = [1]\n"), ScenarioError);  // lambda missing
    CHECK_THROWS_AS(parse(base + "arrival = exp(2)\nlambda = 2\nsweep = d\nvalues = [1]\n"), ScenarioError);
    CHECK_THROWS_AS(parse(base + "arrival = exp(2)\nsweep = lambda\nd = 1\nvalues = [1]\n"), ScenarioError);
    CHECK_THROWS_AS(parse(base + "arrival = exp\nsweep = lambda\nvalues = [1]\n"), ScenarioError);  // d missing
    CHECK_THROWS_AS(parse(base + "arrival = exp\nlambda = 1\nsweep = d\nvalues = [2, 1]\n"), ScenarioError);
    CHECK_THROWS_AS(parse(base + "arrival = exp\nlambda = 1\nsweep = d\nvalues = []\n"), ScenarioError);
    CHECK_THROWS_AS(parse(base + "arrival = exp\nd = 1\nsweep = lambda\nvalues = [0, 1]\n"), ScenarioError);
    CHECK_THROWS_AS(parse(base + "sweep = d\nvalues = [1]\n"), ScenarioError);  // arrival missing
    CHECK_THROWS_AS(parse(base + "arrival = exp\nlambda = 1\nsweep = d\nvalues = [1]\npeaks = 1\n"), ScenarioError);
    CHECK_THROWS_AS(parse("system = zero-wait\narrival = exp(1)\nsweep = d\nvalues = [1]\n"), ScenarioError);
    CHECK_THROWS_AS(parse("system = zero-wait\nsweep = lambda\nd = 1\nvalues = [1]\n"), ScenarioError);
    CHECK_THROWS_AS(parse("system = gg11\narrival = exp\nlambda = 1\nvalues = [1]\n"), ScenarioError);  // no sweep
}

TEST_CASE("nu_hat text") {
    CHECK(aoi::parse_nu_hat("min-rate").mode == aoi::bounds::NuHat::Mode::min_rate);
    CHECK(aoi::parse_nu_hat("exact").mode == aoi::bounds::NuHat::Mode::exact);
    CHECK(aoi::parse_nu_hat("0.25").value == 0.25);
    CHECK_THROWS(aoi::parse_nu_hat("0"));
    CHECK_THROWS(aoi::parse_nu_hat("fast"));
}

TEST_CASE("missing scenario file") {
    CHECK_THROWS_AS(aoi::load_scenario("/nonexistent/path.scn"), std::runtime_error);
}

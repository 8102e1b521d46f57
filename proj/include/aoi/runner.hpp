#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aoi/analytic.hpp"
#include "aoi/scenario.hpp"

namespace aoi {

/// One sweep point. Quantities that are not available are NaN.
struct ResultRow {
    double sweep_value = 0.0;
    double lambda = 0.0;
    double d = 0.0;
    double sim_p = 0.0;
    double sim_stderr = 0.0;
    double analytic_p = 0.0;
    double phi = 0.0;
    double lower_bound = 0.0;
    double eta = 0.0;
    double nu_hat_eta = 0.0;
    double oracle_p = 0.0;
    std::string status = "ok";  ///< "ok" or "nonexistent"
};

struct ResultTable {
    std::string title;
    SweepKind sweep = SweepKind::d;
    std::string bound_label;  ///< "phi1", "phi2" or empty
    std::vector<ResultRow> rows;
};

struct RunOptions {
    unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Departure rate when it is known in closed form or by quadrature:
/// Poisson or periodic arrivals in gg11, any zero-wait system.
std::optional<double> known_departure_rate(const SystemSpec& spec);

/// Exact violation probability when available (gg11 with Poisson or
/// periodic arrivals, zero-wait with exponential service). Throws
/// analytic::ExistenceError for periodic arrivals with d < 1/lambda.
std::optional<analytic::AnalyticResult> analytic_violation(const SystemSpec& spec, double d);

/// Runs every sweep point: simulation replications, analytic value, bound,
/// lower bound and oracle. Deterministic given the scenario seed.
ResultTable run(const Scenario& scenario, const RunOptions& opts = {});

/// Header `sweep_value,sim_p,sim_stderr,analytic_p,phi,lower_bound,eta,nu_hat_eta,oracle_p,status`;
/// numbers with 9 significant digits, missing values empty.
void write_csv(std::ostream& os, const ResultTable& table);

std::string format_number(double v);

}  // namespace aoi

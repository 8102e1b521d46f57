#include "aoi/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <thread>

#include "aoi/estimators.hpp"
#include "aoi/oracle.hpp"

namespace aoi {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct ReplicationResult {
    double p = nan;
    double se = nan;
    double lower = nan;
    double oracle = nan;
};

bool periodic_arrivals(const SystemSpec& spec) { return spec.arrival() && spec.arrival()->is_deterministic(); }

bool nonexistent(const SystemSpec& spec, double d) {
    return periodic_arrivals(spec) && d < (1.0 / spec.arrival_rate()) * (1.0 - 1e-12);
}

ReplicationResult replicate(const SystemSpec& spec, std::size_t peaks, std::uint64_t seed, double d) {
    const SamplePath path = simulate(spec, peaks, seed, LogDetail::served);
    ReplicationResult r;
    const Estimate e = violation_estimate(path, d);
    r.p = e.value;
    r.se = e.std_error;
    if (spec.discipline() != Discipline::zero_wait) r.lower = gamma_star_lower_bound(path)(d).value;
    const EstimationWindow w = estimation_window(path);
    r.oracle = time_above(trajectory_from_log(path.log), d, w.begin, w.end);
    return r;
}

template <class Task>
void run_parallel(std::size_t n, unsigned threads, Task&& task) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

std::optional<double> known_departure_rate(const SystemSpec& spec) {
    if (spec.discipline() == Discipline::zero_wait) return 1.0 / spec.service().mean();
    if (spec.discipline() != Discipline::gg11) return std::nullopt;
    const double lambda = spec.arrival_rate();
    if (spec.arrival()->is_exponential()) {
        return analytic::gg11_departure_rate(lambda, spec.service(), analytic::IdleModel::exponential);
    }
    if (spec.arrival()->is_deterministic()) {
        return analytic::gg11_departure_rate(lambda, spec.service(), analytic::IdleModel::ceil_slotted);
    }
    return std::nullopt;
}

std::optional<analytic::AnalyticResult> analytic_violation(const SystemSpec& spec, double d) {
    const Distribution& service = spec.service();
    if (spec.discipline() == Discipline::zero_wait) {
        if (service.is_exponential()) return analytic::zero_wait_exp_violation(service.rate(), d);
        return std::nullopt;
    }
    if (spec.discipline() != Discipline::gg11) return std::nullopt;
    const double lambda = spec.arrival_rate();
    if (spec.arrival()->is_exponential()) {
        if (service.is_exponential()) return analytic::mm11_violation(lambda, service.rate(), d);
        return analytic::general_violation(lambda, service, analytic::IdleModel::exponential, d);
    }
    if (spec.arrival()->is_deterministic()) {
        if (service.is_exponential()) return analytic::dm11_violation(lambda, service.rate(), d);
        return analytic::general_violation(lambda, service, analytic::IdleModel::ceil_slotted, d);
    }
    return std::nullopt;
}

ResultTable run(const Scenario& sc, const RunOptions& opts) {
    sc.validate();
    const std::size_t points = sc.values.size();
    const std::size_t reps = sc.replications;

    ResultTable table;
    table.sweep = sc.sweep;
    table.title = sc.name.empty() ? std::string(to_string(sc.system)) : sc.name;
    if (sc.system == Discipline::gg11) table.bound_label = "phi1";
    if (sc.system == Discipline::gg12star) table.bound_label = "phi2";
    table.rows.resize(points);

    std::vector<SystemSpec> specs;
    std::vector<bool> skip(points);
    for (std::size_t i = 0; i < points; ++i) {
        specs.push_back(sc.system_at(i));
        skip[i] = nonexistent(specs[i], sc.d_at(i));
        if (sc.nu_hat.mode == bounds::NuHat::Mode::exact && sc.system != Discipline::zero_wait &&
            !known_departure_rate(specs[i])) {
            throw std::invalid_argument("nu_hat = exact needs a known departure rate (gg11 with exp or "
                                        "deterministic arrivals); use min-rate or a value");
        }
    }

    // Tasks: points * reps simulations, then one bound/analytic task per point.
    std::vector<ReplicationResult> sims(points * reps);
    const std::size_t n_tasks = points * reps + points;
    run_parallel(n_tasks, opts.threads, [&](std::size_t t) {
        if (t < points * reps) {
            const std::size_t i = t / reps;
            const std::size_t rep = t % reps;
            if (skip[i]) return;
            sims[t] = replicate(specs[i], sc.peaks, sc.replication_seed(i, rep), sc.d_at(i));
            return;
        }
        const std::size_t i = t - points * reps;
        ResultRow& row = table.rows[i];
        row.sweep_value = sc.values[i];
        row.lambda = sc.lambda_at(i);
        row.d = sc.d_at(i);
        row.analytic_p = row.phi = row.eta = row.nu_hat_eta = nan;
        if (skip[i]) {
            row.status = "nonexistent";
            return;
        }
        if (const auto a = analytic_violation(specs[i], row.d)) row.analytic_p = a->value;
        if (sc.system == Discipline::zero_wait) return;

        const auto nu = known_departure_rate(specs[i]);
        bounds::BoundConfig cfg;
        cfg.n_samples = sc.bound_samples;
        cfg.seed = sc.seed;
        cfg.nu = nu;
        cfg.nu_hat = sc.nu_hat.mode == bounds::NuHat::Mode::exact ? bounds::NuHat::exact(*nu) : sc.nu_hat;
        const Distribution& arrival = *specs[i].arrival();
        const auto b = sc.system == Discipline::gg11 ? bounds::phi1(arrival, specs[i].service(), row.d, cfg)
                                                     : bounds::phi2(arrival, specs[i].service(), row.d, cfg);
        row.phi = b.phi;
        row.eta = b.eta;
        row.nu_hat_eta = b.worst_case_budget;
    });

    for (std::size_t i = 0; i < points; ++i) {
        ResultRow& row = table.rows[i];
        if (skip[i]) {
            row.sim_p = row.sim_stderr = row.lower_bound = row.oracle_p = nan;
            continue;
        }
        double p = 0.0, var = 0.0, lower = 0.0, oracle = 0.0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const ReplicationResult& r = sims[i * reps + rep];
            p += r.p;
            var += r.se * r.se;
            lower += r.lower;
            oracle += r.oracle;
        }
        const double n = static_cast<double>(reps);
        row.sim_p = p / n;
        row.sim_stderr = std::sqrt(var) / n;
        row.lower_bound = lower / n;
        row.oracle_p = oracle / n;
    }
    return table;
}

std::string format_number(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_csv(std::ostream& os, const ResultTable& table) {
    os << "sweep_value,sim_p,sim_stderr,analytic_p,phi,lower_bound,eta,nu_hat_eta,oracle_p,status\n";
    for (const ResultRow& r : table.rows) {
        os << format_number(r.sweep_value) << ',' << format_number(r.sim_p) << ',' << format_number(r.sim_stderr)
           << ',' << format_number(r.analytic_p) << ',' << format_number(r.phi) << ','
           << format_number(r.lower_bound) << ',' << format_number(r.eta) << ',' << format_number(r.nu_hat_eta)
           << ',' << format_number(r.oracle_p) << ',' << r.status << '\n';
    }
}

}  // namespace aoi

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aoi/oracle.hpp"
#include "aoi/plot.hpp"
#include "aoi/runner.hpp"
#include "aoi/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Age-of-information violation probability experiments"};
    std::string scenario_path, out_csv, out_svg, out_log, nu_hat, system;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> peaks, replications, bound_samples;
    unsigned threads = 0;

    app.add_option("--scenario", scenario_path, "scenario file")->required()->check(CLI::ExistingFile);
    app.add_option("--out-csv", out_csv, "result table (stdout when omitted)");
    app.add_option("--out-svg", out_svg, "plot of the result table");
    app.add_option("--out-log", out_log, "event log CSV of the first sweep point, first replication");
    app.add_option("--seed", seed, "override the scenario seed");
    app.add_option("--peaks", peaks, "override peaks per replication")->check(CLI::Range(2ul, 1'000'000'000ul));
    app.add_option("--replications", replications, "override the replication count")
        ->check(CLI::Range(1ul, 10'000ul));
    app.add_option("--bound-samples", bound_samples, "override bound Monte-Carlo samples")
        ->check(CLI::Range(2ul, 10'000'000'000ul));
    app.add_option("--nu-hat", nu_hat, "exact | min-rate | <value>");
    app.add_option("--system", system, "gg11 | gg12star | zero-wait");
    app.add_option("--threads", threads, "worker threads (0: all cores)");
    CLI11_PARSE(app, argc, argv);

    try {
        aoi::Scenario sc = aoi::load_scenario(scenario_path);
        if (seed) sc.seed = *seed;
        if (peaks) sc.peaks = *peaks;
        if (replications) sc.replications = *replications;
        if (bound_samples) sc.bound_samples = *bound_samples;
        if (!nu_hat.empty()) sc.nu_hat = aoi::parse_nu_hat(nu_hat);
        if (!system.empty()) {
            sc.system = aoi::parse_discipline(system);
            if (sc.system == aoi::Discipline::zero_wait) {
                sc.arrival.reset();
                sc.lambda.reset();
            }
        }
        sc.validate();

        const aoi::ResultTable table = aoi::run(sc, {threads});
        if (out_csv.empty()) {
            aoi::write_csv(std::cout, table);
        } else {
            std::ofstream os(out_csv, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open " + out_csv + " for writing");
            aoi::write_csv(os, table);
            if (!os.flush()) throw std::runtime_error("failed writing " + out_csv);
        }
        if (!out_svg.empty()) aoi::plot(table, out_svg);
        if (!out_log.empty()) {
            const auto path = aoi::simulate(sc.system_at(0), sc.peaks, sc.replication_seed(0, 0));
            std::ofstream os(out_log, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open " + out_log + " for writing");
            aoi::write_event_log_csv(os, path.log);
        }
    } catch (const std::exception& e) {
        std::cerr << "aoi: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

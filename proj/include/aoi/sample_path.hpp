#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "aoi/distribution.hpp"

namespace aoi {

enum class Discipline {
    gg11,      ///< bufferless: arrivals during service are discarded
    gg12star,  ///< unit buffer holding only the freshest waiting packet
    zero_wait  ///< a new packet is generated at every departure
};

std::string_view to_string(Discipline d);
/// Accepts "gg11", "gg12star", "zero-wait" (case-sensitive).
Discipline parse_discipline(std::string_view text);

class SystemSpec {
public:
    static SystemSpec gg11(Distribution arrival, Distribution service);
    static SystemSpec gg12star(Distribution arrival, Distribution service);
    static SystemSpec zero_wait(Distribution service);
    /// Throws std::invalid_argument when `arrival` presence disagrees with the discipline.
    static SystemSpec make(Discipline d, std::optional<Distribution> arrival, Distribution service);

    Discipline discipline() const noexcept { return discipline_; }
    const std::optional<Distribution>& arrival() const noexcept { return arrival_; }
    const Distribution& service() const noexcept { return service_; }

    /// 1/E[Z]; infinite for zero-wait.
    double arrival_rate() const;
    double service_rate() const { return service_.rate(); }

private:
    SystemSpec(Discipline d, std::optional<Distribution> a, Distribution s)
        : discipline_(d), arrival_(std::move(a)), service_(std::move(s)) {}
    Discipline discipline_;
    std::optional<Distribution> arrival_;
    Distribution service_;
};

/// One information-update departure (every departure in the three systems).
///
/// Record 0 follows a virtual packet generated and delivered at t = 0 with
/// zero service and waiting time, so the first peak is T_D(0).
struct PeakRecord {
    std::size_t k = 0;
    std::uint64_t packet_id = 0;  ///< arrival sequence number
    double arrival = 0.0;         ///< T_A(k)
    double departure = 0.0;       ///< T_D(k)
    double service = 0.0;         ///< X_k
    double idle = 0.0;            ///< I_k, idle time just before service of k
    double waiting = 0.0;         ///< W_k
    double peak_age = 0.0;        ///< A_peak(k) = T_D(k) - T_A(k-1)
    double inter_departure = 0.0; ///< T_D(k) - T_D(k-1)
    double prev_gap = 0.0;        ///< gap from the previous arrival to packet k
    double next_gap = 0.0;        ///< gap from packet k to the next arrival
};

enum class EventKind { arrival, service_start, departure, drop, replace };

std::string_view to_string(EventKind k);
EventKind parse_event_kind(std::string_view text);

struct Event {
    EventKind kind;
    double time;
    std::uint64_t packet_id;
};

enum class LogDetail {
    none,    ///< no event log
    served,  ///< arrival, service_start and departure of served packets only
    full     ///< every event, including drops and replacements
};

struct SamplePath {
    Discipline discipline = Discipline::gg11;
    std::vector<PeakRecord> peaks;
    std::vector<Event> log;  ///< time-sorted; empty for LogDetail::none

    /// Departure time of the last record.
    double end_time() const { return peaks.empty() ? 0.0 : peaks.back().departure; }
};

/// Event-driven simulation producing exactly `n_peaks` records.
/// Simultaneous departure and arrival: the departure is processed first.
/// Throws std::invalid_argument when n_peaks < 2.
SamplePath simulate(const SystemSpec& spec, std::size_t n_peaks, std::uint64_t seed,
                    LogDetail detail = LogDetail::served);

}  // namespace aoi

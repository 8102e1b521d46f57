#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "aoi/sample_path.hpp"

namespace aoi {

/// Age right after an information-update departure.
struct AgeBreakpoint {
    double time = 0.0;       ///< departure instant
    double age = 0.0;        ///< system delay of the departing packet
    double generated = 0.0;  ///< its arrival (generation) time
};

/// Age process reconstructed from an event log: between consecutive
/// breakpoints the age grows with slope one. Defined on [first breakpoint, horizon].
struct AoiTrajectory {
    std::vector<AgeBreakpoint> breakpoints;
    double horizon = 0.0;  ///< last departure time

    double start() const { return breakpoints.empty() ? 0.0 : breakpoints.front().time; }
};

class MalformedLog : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds the age process from arrival/departure pairs, keeping only
/// departures that carry a fresher packet than the last delivered one.
/// Throws MalformedLog for non-monotone times, departures or service starts
/// without a prior arrival, and duplicate arrival ids.
AoiTrajectory trajectory_from_log(std::span<const Event> log);

/// Time in [t_begin, t_end] during which the age exceeds d (exact per segment).
double time_above_duration(const AoiTrajectory& traj, double d, double t_begin, double t_end);
/// Fraction of [t_begin, t_end] with age above d.
double time_above(const AoiTrajectory& traj, double d, double t_begin, double t_end);
/// Fraction over the whole trajectory.
double time_above(const AoiTrajectory& traj, double d);

/// Exact time average of the age over [t_begin, t_end].
double mean_age(const AoiTrajectory& traj, double t_begin, double t_end);
double mean_age(const AoiTrajectory& traj);

/// `event,time,packet_id` CSV with a header row.
void write_event_log_csv(std::ostream& os, std::span<const Event> log);
/// Throws MalformedLog with the offending line number.
std::vector<Event> read_event_log_csv(std::istream& is);

}  // namespace aoi

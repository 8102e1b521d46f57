#include "aoi/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

namespace aoi {

AoiTrajectory trajectory_from_log(std::span<const Event> log) {
    AoiTrajectory traj;
    std::unordered_map<std::uint64_t, double> pending;  // id -> arrival time
    double last_time = -std::numeric_limits<double>::infinity();
    double freshest = -std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < log.size(); ++i) {
        const Event& ev = log[i];
        if (ev.time < last_time) {
            throw MalformedLog("event " + std::to_string(i) + ": time goes backwards");
        }
        last_time = ev.time;
        switch (ev.kind) {
            case EventKind::arrival:
                if (!pending.emplace(ev.packet_id, ev.time).second) {
                    throw MalformedLog("event " + std::to_string(i) + ": duplicate arrival of packet " +
                                       std::to_string(ev.packet_id));
                }
                break;
            case EventKind::service_start:
                if (!pending.contains(ev.packet_id)) {
                    throw MalformedLog("event " + std::to_string(i) + ": service start without arrival of packet " +
                                       std::to_string(ev.packet_id));
                }
                break;
            case EventKind::drop:
            case EventKind::replace:
                pending.erase(ev.packet_id);
                break;
            case EventKind::departure: {
                const auto it = pending.find(ev.packet_id);
                if (it == pending.end()) {
                    throw MalformedLog("event " + std::to_string(i) + ": departure without arrival of packet " +
                                       std::to_string(ev.packet_id));
                }
                const double generated = it->second;
                pending.erase(it);
                if (generated > freshest) {
                    freshest = generated;
                    traj.breakpoints.push_back({ev.time, ev.time - generated, generated});
                }
                traj.horizon = ev.time;
                break;
            }
        }
    }
    return traj;
}

double time_above_duration(const AoiTrajectory& traj, double d, double t_begin, double t_end) {
    const auto& bps = traj.breakpoints;
    if (bps.empty() || !(t_end > t_begin)) return 0.0;
    t_begin = std::max(t_begin, bps.front().time);
    t_end = std::min(t_end, traj.horizon);
    // Segment i covers [bps[i].time, bps[i+1].time).
    auto it = std::upper_bound(bps.begin(), bps.end(), t_begin,
                               [](double t, const AgeBreakpoint& b) { return t < b.time; });
    std::size_t i = static_cast<std::size_t>(std::distance(bps.begin(), it)) - 1;
    double total = 0.0;
    for (; i < bps.size(); ++i) {
        const double seg_lo = std::max(bps[i].time, t_begin);
        const double seg_hi = std::min(i + 1 < bps.size() ? bps[i + 1].time : traj.horizon, t_end);
        if (seg_lo >= t_end) break;
        if (seg_hi <= seg_lo) continue;
        const double crossing = bps[i].generated + d;
        total += std::max(0.0, seg_hi - std::max(seg_lo, crossing));
    }
    return total;
}

double time_above(const AoiTrajectory& traj, double d, double t_begin, double t_end) {
    const double lo = std::max(t_begin, traj.start());
    const double hi = std::min(t_end, traj.horizon);
    if (!(hi > lo)) return 0.0;
    return time_above_duration(traj, d, lo, hi) / (hi - lo);
}

double time_above(const AoiTrajectory& traj, double d) { return time_above(traj, d, traj.start(), traj.horizon); }

double mean_age(const AoiTrajectory& traj, double t_begin, double t_end) {
    const auto& bps = traj.breakpoints;
    if (bps.empty()) return 0.0;
    t_begin = std::max(t_begin, bps.front().time);
    t_end = std::min(t_end, traj.horizon);
    if (!(t_end > t_begin)) return 0.0;
    double area = 0.0;
    for (std::size_t i = 0; i < bps.size(); ++i) {
        const double lo = std::max(bps[i].time, t_begin);
        const double hi = std::min(i + 1 < bps.size() ? bps[i + 1].time : traj.horizon, t_end);
        if (hi <= lo) continue;
        area += (hi - lo) * (0.5 * (lo + hi) - bps[i].generated);
    }
    return area / (t_end - t_begin);
}

double mean_age(const AoiTrajectory& traj) { return mean_age(traj, traj.start(), traj.horizon); }

void write_event_log_csv(std::ostream& os, std::span<const Event> log) {
    os << "event,time,packet_id\n";
    const auto old = os.precision(17);
    for (const Event& ev : log) {
        os << to_string(ev.kind) << ',' << ev.time << ',' << ev.packet_id << '\n';
    }
    os.precision(old);
}

std::vector<Event> read_event_log_csv(std::istream& is) {
    std::vector<Event> out;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& why) {
        throw MalformedLog("line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "event,time,packet_id") fail("expected header 'event,time,packet_id'");
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) fail("expected 3 fields");
        Event ev{};
        try {
            ev.kind = parse_event_kind(line.substr(0, c1));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        const std::string ts = line.substr(c1 + 1, c2 - c1 - 1);
        std::size_t used = 0;
        try {
            ev.time = std::stod(ts, &used);
        } catch (const std::exception&) {
            fail("bad time '" + ts + "'");
        }
        if (used != ts.size()) fail("bad time '" + ts + "'");
        const std::string ids = line.substr(c2 + 1);
        const auto [p, ec] = std::from_chars(ids.data(), ids.data() + ids.size(), ev.packet_id);
        if (ec != std::errc{} || p != ids.data() + ids.size()) fail("bad packet_id '" + ids + "'");
        out.push_back(ev);
    }
    return out;
}

}  // namespace aoi

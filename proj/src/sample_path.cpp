#include "aoi/sample_path.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "aoi/rng.hpp"

namespace aoi {

std::string_view to_string(Discipline d) {
    switch (d) {
        case Discipline::gg11: return "gg11";
        case Discipline::gg12star: return "gg12star";
        case Discipline::zero_wait: return "zero-wait";
    }
    return "?";
}

Discipline parse_discipline(std::string_view text) {
    if (text == "gg11") return Discipline::gg11;
    if (text == "gg12star") return Discipline::gg12star;
    if (text == "zero-wait") return Discipline::zero_wait;
    throw std::invalid_argument("unknown system '" + std::string(text) + "' (expected gg11|gg12star|zero-wait)");
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::arrival: return "arrival";
        case EventKind::service_start: return "service_start";
        case EventKind::departure: return "departure";
        case EventKind::drop: return "drop";
        case EventKind::replace: return "replace";
    }
    return "?";
}

EventKind parse_event_kind(std::string_view text) {
    if (text == "arrival") return EventKind::arrival;
    if (text == "service_start") return EventKind::service_start;
    if (text == "departure") return EventKind::departure;
    if (text == "drop") return EventKind::drop;
    if (text == "replace") return EventKind::replace;
    throw std::invalid_argument("unknown event '" + std::string(text) + "'");
}

SystemSpec SystemSpec::gg11(Distribution arrival, Distribution service) {
    return SystemSpec(Discipline::gg11, std::move(arrival), std::move(service));
}

SystemSpec SystemSpec::gg12star(Distribution arrival, Distribution service) {
    return SystemSpec(Discipline::gg12star, std::move(arrival), std::move(service));
}

SystemSpec SystemSpec::zero_wait(Distribution service) {
    return SystemSpec(Discipline::zero_wait, std::nullopt, std::move(service));
}

SystemSpec SystemSpec::make(Discipline d, std::optional<Distribution> arrival, Distribution service) {
    if (d == Discipline::zero_wait && arrival) {
        throw std::invalid_argument("zero-wait systems carry no arrival law");
    }
    if (d != Discipline::zero_wait && !arrival) {
        throw std::invalid_argument(std::string(to_string(d)) + " requires an arrival law");
    }
    return SystemSpec(d, std::move(arrival), std::move(service));
}

double SystemSpec::arrival_rate() const {
    return arrival_ ? arrival_->rate() : std::numeric_limits<double>::infinity();
}

namespace {

struct Packet {
    std::uint64_t id = 0;
    double arrival = 0.0;
    double prev_gap = 0.0;
    double next_gap = 0.0;
    double start = 0.0;
    double service = 0.0;
    double idle = 0.0;
};

class Simulator {
public:
    Simulator(const SystemSpec& spec, std::size_t n, std::uint64_t seed, LogDetail detail)
        : spec_(spec),
          n_(n),
          detail_(detail),
          arrivals_rng_(RngStream::substream(seed, 0)),
          service_rng_(RngStream::substream(seed, 1)) {
        path_.discipline = spec.discipline();
        path_.peaks.reserve(n);
    }

    SamplePath run() {
        if (spec_.discipline() == Discipline::zero_wait) {
            run_zero_wait();
        } else {
            run_queue();
        }
        if (detail_ == LogDetail::served) {
            std::stable_sort(path_.log.begin(), path_.log.end(),
                             [](const Event& a, const Event& b) { return a.time < b.time; });
        }
        return std::move(path_);
    }

private:
    void log(EventKind kind, double t, std::uint64_t id) {
        if (detail_ == LogDetail::full) path_.log.push_back({kind, t, id});
    }

    void log_served_start(const Packet& p) {
        if (detail_ == LogDetail::served) {
            path_.log.push_back({EventKind::arrival, p.arrival, p.id});
            path_.log.push_back({EventKind::service_start, p.start, p.id});
        } else {
            log(EventKind::service_start, p.start, p.id);
        }
    }

    void start_service(Packet& p, double now, double idle) {
        p.start = now;
        p.idle = idle;
        p.service = spec_.service().sample(service_rng_);
        log_served_start(p);
    }

    void depart(const Packet& p, double td) {
        PeakRecord r;
        r.k = path_.peaks.size();
        r.packet_id = p.id;
        r.arrival = p.arrival;
        r.departure = td;
        r.service = p.service;
        r.idle = p.idle;
        r.waiting = p.start - p.arrival;
        r.peak_age = td - last_delivered_arrival_;
        r.inter_departure = td - last_departure_;
        r.prev_gap = p.prev_gap;
        r.next_gap = p.next_gap;
        path_.peaks.push_back(r);
        if (detail_ != LogDetail::none) path_.log.push_back({EventKind::departure, td, p.id});
        last_departure_ = td;
        last_delivered_arrival_ = p.arrival;
    }

    void run_queue() {
        const Distribution& arrival_law = *spec_.arrival();
        const bool keep_one = spec_.discipline() == Discipline::gg12star;

        Packet in_service, queued;
        bool busy = false, has_queued = false;
        double departure_time = 0.0;

        // First arrival at t = 0.
        Packet next;
        next.id = 0;
        next.arrival = 0.0;
        next.prev_gap = 0.0;

        while (path_.peaks.size() < n_) {
            if (busy && departure_time <= next.arrival) {
                const double td = departure_time;
                depart(in_service, td);
                busy = false;
                if (has_queued) {
                    in_service = queued;
                    busy = true;
                    has_queued = false;
                    start_service(in_service, td, 0.0);
                    departure_time = td + in_service.service;
                }
                continue;
            }

            Packet p = next;
            p.next_gap = arrival_law.sample(arrivals_rng_);
            next = Packet{};
            next.id = p.id + 1;
            next.arrival = p.arrival + p.next_gap;
            next.prev_gap = p.next_gap;
            log(EventKind::arrival, p.arrival, p.id);

            if (!busy) {
                in_service = p;
                busy = true;
                start_service(in_service, p.arrival, p.arrival - last_departure_);
                departure_time = p.arrival + in_service.service;
            } else if (!keep_one) {
                log(EventKind::drop, p.arrival, p.id);
            } else {
                if (has_queued) log(EventKind::replace, p.arrival, queued.id);
                queued = p;
                has_queued = true;
            }
        }
    }

    void run_zero_wait() {
        double t = 0.0;
        double prev_service = 0.0;
        for (std::uint64_t id = 0; path_.peaks.size() < n_; ++id) {
            Packet p;
            p.id = id;
            p.arrival = t;
            p.prev_gap = prev_service;
            log(EventKind::arrival, t, id);
            start_service(p, t, 0.0);
            p.next_gap = p.service;
            t = t + p.service;
            depart(p, t);
            prev_service = p.service;
        }
    }

    const SystemSpec& spec_;
    std::size_t n_;
    LogDetail detail_;
    RngStream arrivals_rng_;
    RngStream service_rng_;
    SamplePath path_;
    double last_departure_ = 0.0;
    double last_delivered_arrival_ = 0.0;
};

}  // namespace

SamplePath simulate(const SystemSpec& spec, std::size_t n_peaks, std::uint64_t seed, LogDetail detail) {
    if (n_peaks < 2) throw std::invalid_argument("simulate: n_peaks must be >= 2");
    return Simulator(spec, n_peaks, seed, detail).run();
}

}  // namespace aoi

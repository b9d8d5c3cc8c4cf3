#include "evtwin/ev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "evtwin/errors.hpp"

namespace evtwin {

namespace {

ChargeSubstate substate_for(double soc, double capacity, std::span<const ScheduledTour> tours,
                            std::size_t next_tour) {
    if (soc >= capacity) return ChargeSubstate::full;
    if (next_tour < tours.size() && soc < tours[next_tour].energy_kwh) return ChargeSubstate::must_charge;
    return ChargeSubstate::may_charge;
}

}  // namespace

void validate(const EvParams& p) {
    if (!(p.battery_capacity_kwh > 0.0)) throw ConfigError("ev.battery_capacity_kwh must be > 0");
    if (!(p.consumption_kwh_per_km > 0.0)) throw ConfigError("ev.consumption_kwh_per_km must be > 0");
    if (!(p.station_power_kw >= 0.0)) throw ConfigError("ev.station_power_kw must be >= 0");
    if (!(p.connect_threshold_soc >= 0.0 && p.connect_threshold_soc <= 1.0)) {
        throw ConfigError("ev.connect_threshold_soc must lie in [0, 1]");
    }
    double sum = 0.0;
    for (double w : p.plug_interval_probabilities) {
        if (!(w >= 0.0)) throw ConfigError("ev.plug_interval_probabilities must be >= 0");
        sum += w;
    }
    if (p.plug_interval_probabilities.empty() || std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("ev.plug_interval_probabilities must sum to 1");
    }
}

Horizon year_horizon(int year) { return {year_start(year), hours_in_year(year)}; }

double tour_energy(double distance_km, double consumption_kwh_per_km) {
    return distance_km * consumption_kwh_per_km;
}

int sample_plug_interval(const EvParams& p, Rng& rng) {
    return static_cast<int>(sample_index(rng, p.plug_interval_probabilities)) + 1;
}

bool connection_decision(const EvState& state, const EvParams& p, int plug_interval) {
    if (state.soc_kwh / p.battery_capacity_kwh < p.connect_threshold_soc) return true;
    return state.arrivals_since_last_plug + 1 >= plug_interval;
}

std::vector<ScheduledTour> tile_weekly_tours(std::span<const Tour> weekly, const Horizon& horizon,
                                             double consumption_kwh_per_km) {
    using std::chrono::duration_cast;
    const auto day_start = std::chrono::floor<std::chrono::days>(horizon.start);
    const Minutes offset = weekday_index(horizon.start) * kMinutesPerDay +
                           duration_cast<Minutes>(horizon.start - day_start);
    const Minutes end = duration_cast<Minutes>(std::chrono::hours(horizon.hours));

    std::vector<ScheduledTour> out;
    for (const auto& tour : weekly) {
        for (Minutes shift = -offset; tour.departure() + shift < end; shift += kMinutesPerWeek) {
            const Minutes dep = tour.departure() + shift;
            const Minutes arr = tour.arrival() + shift;
            if (dep < Minutes{0} || arr > end) continue;
            out.push_back({dep, arr, tour.total_distance_km(),
                           tour_energy(tour.total_distance_km(), consumption_kwh_per_km)});
        }
    }
    std::sort(out.begin(), out.end(), [](const ScheduledTour& a, const ScheduledTour& b) {
        return a.departure < b.departure;
    });
    return out;
}

EvStep step_ev(const EvState& state, std::size_t hour, std::span<const ScheduledTour> tours,
               const EvParams& params, int plug_interval, EvTrace* trace) {
    const double capacity = params.battery_capacity_kwh;
    EvStep out;
    EvState s = state;
    const Minutes h0 = std::chrono::hours(hour);
    const Minutes h1 = h0 + std::chrono::hours(1);
    constexpr Minutes never = Minutes::max();

    Minutes now = h0;
    while (now < h1) {
        if (s.mode == EvMode::driving) {
            const auto& tour = tours[s.next_tour];
            const Minutes seg_end = std::min(h1, tour.arrival);
            const double share = static_cast<double>((seg_end - now).count()) /
                                 static_cast<double>((tour.arrival - tour.departure).count());
            const double demand = tour.energy_kwh * share;
            const double drawn = std::min(demand, s.soc_kwh);
            const double soc_before = s.soc_kwh;
            out.unserved_kwh += demand - drawn;
            out.consumed_kwh += drawn;
            s.soc_kwh = std::max(0.0, s.soc_kwh - drawn);
            if (trace) trace->segments.push_back({now, seg_end, s.mode, soc_before, s.soc_kwh, 0.0, drawn});
            now = seg_end;
            if (now == tour.arrival) {
                ++s.next_tour;
                ++out.arrivals;
                const bool by_interval = s.arrivals_since_last_plug + 1 >= plug_interval;
                const bool connect = connection_decision(s, params, plug_interval);
                if (connect) {
                    ++out.plug_ins;
                    if (!by_interval) ++out.forced_plug_ins;
                    s.arrivals_since_last_plug = 0;
                    s.mode = EvMode::parked_connected;
                    s.substate = substate_for(s.soc_kwh, capacity, tours, s.next_tour);
                } else {
                    ++s.arrivals_since_last_plug;
                    s.mode = EvMode::parked_disconnected;
                    s.substate.reset();
                }
                if (trace) trace->arrivals.push_back({now, s.soc_kwh, connect, connect && !by_interval});
            }
            continue;
        }

        const Minutes departure = s.next_tour < tours.size() ? tours[s.next_tour].departure : never;
        const Minutes seg_end = std::min(h1, departure);
        if (seg_end > now) {
            const double soc_before = s.soc_kwh;
            double charged = 0.0;
            if (s.mode == EvMode::parked_connected) {
                const double offer = params.station_power_kw * static_cast<double>((seg_end - now).count()) / 60.0;
                const double headroom = capacity - s.soc_kwh;
                if (offer >= headroom) {
                    charged = std::max(0.0, headroom);
                    s.soc_kwh = capacity;
                } else {
                    charged = offer;
                    s.soc_kwh += offer;
                }
                s.substate = substate_for(s.soc_kwh, capacity, tours, s.next_tour);
            }
            out.charged_kwh += charged;
            if (trace) trace->segments.push_back({now, seg_end, s.mode, soc_before, s.soc_kwh, charged, 0.0});
            now = seg_end;
        }
        if (now == departure) {
            s.mode = EvMode::driving;
            s.substate.reset();
        }
    }
    out.state = s;
    return out;
}

EvResult simulate_ev(const Vehicle& vehicle, const EvParams& params, const Horizon& horizon,
                     Rng& rng, EvTrace* trace) {
    EvParams p = params;
    if (vehicle.battery_capacity_kwh > 0.0) p.battery_capacity_kwh = vehicle.battery_capacity_kwh;
    validate(p);

    EvResult result;
    result.plug_interval = sample_plug_interval(p, rng);
    const auto tours = tile_weekly_tours(vehicle.tours, horizon, p.consumption_kwh_per_km);
    for (const auto& t : tours) result.driven_km += t.distance_km;

    EvState state;
    state.soc_kwh = p.battery_capacity_kwh;
    result.soc_start_kwh = state.soc_kwh;

    std::vector<double> charging(horizon.hours, 0.0);
    double unserved_kwh = 0.0;
    for (std::size_t h = 0; h < horizon.hours; ++h) {
        const EvStep step = step_ev(state, h, tours, p, result.plug_interval, trace);
        state = step.state;
        charging[h] = step.charged_kwh;
        result.charged_kwh += step.charged_kwh;
        result.consumed_kwh += step.consumed_kwh;
        unserved_kwh += step.unserved_kwh;
        result.arrivals += step.arrivals;
        result.plug_in_events += step.plug_ins;
        result.forced_plug_ins += step.forced_plug_ins;
    }
    result.unserved_km = unserved_kwh / p.consumption_kwh_per_km;
    result.soc_end_kwh = state.soc_kwh;
    result.charging = TimeSeries(horizon.start, std::move(charging));
    return result;
}

}  // namespace evtwin

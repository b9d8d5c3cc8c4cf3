#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "evtwin/domain.hpp"
#include "evtwin/random.hpp"
#include "evtwin/time_series.hpp"

namespace evtwin {

struct EvParams {
    double battery_capacity_kwh = 60.0;
    double consumption_kwh_per_km = 0.20;
    double station_power_kw = 11.0;
    // Below this state-of-charge fraction the car is always plugged in.
    double connect_threshold_soc = 0.35;
    // Entry k is the probability that the owner plugs in on every (k+1)-th
    // arrival.
    std::vector<double> plug_interval_probabilities{1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5};

    bool operator==(const EvParams&) const = default;
};

void validate(const EvParams& p);

enum class EvMode { driving, parked_connected, parked_disconnected };
enum class ChargeSubstate { full, must_charge, may_charge };

struct EvState {
    EvMode mode = EvMode::parked_disconnected;
    std::optional<ChargeSubstate> substate;  // set iff parked_connected
    double soc_kwh = 0.0;
    int arrivals_since_last_plug = 0;
    std::size_t next_tour = 0;  // first tour not yet finished

    bool operator==(const EvState&) const = default;
};

// A tour placed on the simulation clock: minutes since the horizon start.
struct ScheduledTour {
    Minutes departure{0};
    Minutes arrival{0};
    double distance_km = 0.0;
    double energy_kwh = 0.0;
};

struct Horizon {
    HourStamp start{};
    std::size_t hours = 0;
};

Horizon year_horizon(int year);

double tour_energy(double distance_km, double consumption_kwh_per_km);

int sample_plug_interval(const EvParams& p, Rng& rng);

// Evaluated once per arrival, before the counter is updated.
bool connection_decision(const EvState& state, const EvParams& p, int plug_interval);

// Repeats the weekly tours over the horizon, aligned by weekday. Tours not
// entirely inside the horizon are left out.
std::vector<ScheduledTour> tile_weekly_tours(std::span<const Tour> weekly, const Horizon& horizon,
                                             double consumption_kwh_per_km);

// Piece of one hour during which mode and connection did not change.
struct EvSegment {
    Minutes begin{0};
    Minutes end{0};
    EvMode mode = EvMode::parked_disconnected;
    double soc_begin_kwh = 0.0;
    double soc_end_kwh = 0.0;
    double charged_kwh = 0.0;
    double consumed_kwh = 0.0;
};

struct EvArrival {
    Minutes at{0};
    double soc_kwh = 0.0;
    bool connected = false;
    bool forced = false;
};

struct EvTrace {
    std::vector<EvSegment> segments;
    std::vector<EvArrival> arrivals;
};

struct EvStep {
    EvState state;
    double charged_kwh = 0.0;  // equals the hour's mean charging power in kW
    double consumed_kwh = 0.0;
    double unserved_kwh = 0.0;
    int arrivals = 0;
    int plug_ins = 0;
    int forced_plug_ins = 0;
};

// Advances the machine through hour `hour` of the horizon with immediate
// charging. `params.battery_capacity_kwh` is the vehicle's capacity.
EvStep step_ev(const EvState& state, std::size_t hour, std::span<const ScheduledTour> tours,
               const EvParams& params, int plug_interval, EvTrace* trace = nullptr);

struct EvResult {
    TimeSeries charging;  // P_CS, kW
    double unserved_km = 0.0;
    int arrivals = 0;
    int plug_in_events = 0;
    // Plug-ins only caused by the state-of-charge threshold.
    int forced_plug_ins = 0;
    int plug_interval = 1;
    double charged_kwh = 0.0;
    double consumed_kwh = 0.0;
    double driven_km = 0.0;
    double soc_start_kwh = 0.0;
    double soc_end_kwh = 0.0;
};

// Full-horizon simulation starting with a full battery.
EvResult simulate_ev(const Vehicle& vehicle, const EvParams& params, const Horizon& horizon,
                     Rng& rng, EvTrace* trace = nullptr);

}  // namespace evtwin

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "evtwin/domain.hpp"
#include "evtwin/time_series.hpp"

namespace evtwin {

// Orientation -> normalised generation profile in kW per kWp.
using PvProfileLibrary = std::map<Orientation, TimeSeries>;

struct PvParams {
    double density_kwp_per_m2 = 0.172;
    double cap_kwp = 30.0;
    PvProfileLibrary profiles;

    bool operator==(const PvParams&) const = default;
};

double size_pv(double roof_area_m2, const PvParams& params);

// Throws LookupError when the orientation has no profile.
TimeSeries pv_series(double kwp, Orientation orientation, const PvProfileLibrary& library);

// Battery capacity in kWh equal to the annual demand in MWh, at most 20 kWh.
double size_bess(double annual_demand_mwh);
inline constexpr double kBessCapKwh = 20.0;

// Power-energy battery model without self-discharge. The round-trip
// efficiency is the product of charge and discharge efficiency.
struct Bess {
    double capacity_kwh = 0.0;
    double charge_efficiency = 0.0;
    double discharge_efficiency = 0.0;
    double power_rating_kw = 0.0;
    double soc_kwh = 0.0;

    bool operator==(const Bess&) const = default;
};

struct BessSettings {
    double round_trip_efficiency = 0.90;
    // power rating = capacity * c_rate
    double c_rate = 0.5;
    double initial_soc_fraction = 0.0;

    bool operator==(const BessSettings&) const = default;
};

// Efficiency split evenly between charging and discharging.
Bess make_bess(double capacity_kwh, const BessSettings& settings);

struct BessStep {
    Bess bess;
    double p_bat_act_kw = 0.0;  // > 0 charging, < 0 discharging
};

// Rule-based self-consumption dispatch for one hour. `surplus_kw` is
// P_PV - (P_build + P_CS).
BessStep step_bess(const Bess& b, double surplus_kw);

// min(P_build + P_CS, P_PV - P_Bat_act); throws InvariantError when the
// local production term is negative.
double self_consumed(double p_build, double p_cs, double p_pv, double p_bat_act);

struct BuildingEnergyResult {
    std::vector<double> p_build;
    std::vector<double> p_cs;
    std::vector<double> p_pv;
    std::vector<double> p_bat_act;
    std::vector<double> p_self_cons;
    std::vector<double> grid_import;
    std::vector<double> feed_in;
    std::vector<double> bess_soc;  // end-of-hour state of charge, empty without a battery

    double bess_charged_kwh = 0.0;    // drawn from PV
    double bess_delivered_kwh = 0.0;  // supplied to the building
    double bess_initial_soc_kwh = 0.0;

    HourStamp start{};
    std::size_t size() const { return p_build.size(); }
};

// Hour loop: battery dispatch, self-consumption, grid exchange. Missing
// charging-station or PV series count as zero.
BuildingEnergyResult simulate_building(const TimeSeries& demand, const TimeSeries* cs_demand,
                                       const TimeSeries* pv, std::optional<Bess> bess);

}  // namespace evtwin

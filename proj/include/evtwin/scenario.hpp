#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evtwin/der.hpp"
#include "evtwin/ev.hpp"
#include "evtwin/town.hpp"

namespace evtwin {

enum class ScenarioId { cs, ev, pv, pv_bs, ev_pv, ev_pv_bs };

struct Scenario {
    ScenarioId id = ScenarioId::cs;
    bool add_ev = false;
    bool add_pv = false;
    bool add_bess = false;
};

Scenario make_scenario(ScenarioId id);
std::string_view to_string(ScenarioId id);
// Accepts CS, EV, PV, PV+BS, EV+PV, EV+PV+BS; throws ConfigError otherwise.
ScenarioId parse_scenario(std::string_view label);
inline constexpr std::array<ScenarioId, 6> kAllScenarios{
    ScenarioId::cs, ScenarioId::ev, ScenarioId::pv, ScenarioId::pv_bs, ScenarioId::ev_pv,
    ScenarioId::ev_pv_bs};

struct ScenarioConfig {
    EvParams ev;
    PvParams pv;
    BessSettings bess;
};

struct BuildingReport {
    std::string building_id;
    int vehicles = 0;
    double pv_kwp = 0.0;
    double bess_kwh = 0.0;
    double demand_kwh = 0.0;
    double cs_kwh = 0.0;
    double pv_kwh = 0.0;
    double self_consumed_kwh = 0.0;
    double grid_import_kwh = 0.0;
    double feed_in_kwh = 0.0;
    double driven_km = 0.0;
    double unserved_km = 0.0;
    std::optional<double> scr;
    std::optional<double> ssr;
    std::array<double, 12> monthly_peak_import_kw{};
};

struct ScenarioReport {
    Scenario scenario;
    std::uint64_t seed = 0;
    int year = 0;
    std::vector<BuildingReport> buildings;  // eligible buildings only
    std::size_t excluded_buildings = 0;     // residential with PV or EV, or non-residential

    // Sums over `buildings`, in kWh.
    double demand_kwh = 0.0;
    double cs_kwh = 0.0;
    double pv_kwh = 0.0;
    double self_consumed_kwh = 0.0;
    double grid_import_kwh = 0.0;
    double feed_in_kwh = 0.0;
    // Sum over buildings of each building's monthly maximum grid import.
    std::array<double, 12> monthly_peak_sum_kw{};
    // Monthly maximum of the summed grid import of all buildings.
    std::array<double, 12> monthly_coincident_peak_kw{};
    std::optional<double> mean_scr;
    std::optional<double> mean_ssr;
};

// Runs scenarios on one town. EV charging profiles do not depend on the
// scenario and are simulated once, on first use.
class ScenarioRunner {
public:
    ScenarioRunner(const Town& town, ScenarioConfig config, std::uint64_t seed);

    ScenarioReport run(ScenarioId id);

    // Residential buildings without existing PV or EV.
    const std::vector<std::size_t>& eligible_buildings() const { return eligible_; }
    BuildingEnergyResult simulate_building_in(std::size_t building_index, const Scenario& s);
    // Summed P_CS of the building's vehicles; zero series when it has none.
    const TimeSeries& charging_profile(std::size_t building_index);
    const std::vector<EvResult>& ev_results();

private:
    void ensure_ev();

    const Town& town_;
    ScenarioConfig config_;
    std::uint64_t seed_;
    Horizon horizon_;
    std::vector<std::size_t> eligible_;
    bool ev_done_ = false;
    std::vector<EvResult> ev_results_;      // by vehicle id
    std::vector<std::optional<TimeSeries>> cs_profiles_;  // by building index
    TimeSeries zero_profile_;
    std::vector<int> vehicle_counts_;       // by building index
    std::vector<double> driven_km_;
    std::vector<double> unserved_km_;
};

ScenarioReport run_scenario(const Town& town, ScenarioId id, const ScenarioConfig& config,
                            std::uint64_t seed);

}  // namespace evtwin

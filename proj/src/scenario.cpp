#include "evtwin/scenario.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

#include "evtwin/errors.hpp"
#include "evtwin/metrics.hpp"

namespace evtwin {

namespace {

constexpr std::array<std::string_view, 6> kScenarioLabels{"CS", "EV", "PV", "PV+BS", "EV+PV",
                                                          "EV+PV+BS"};

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

Scenario make_scenario(ScenarioId id) {
    switch (id) {
        case ScenarioId::cs: return {id, false, false, false};
        case ScenarioId::ev: return {id, true, false, false};
        case ScenarioId::pv: return {id, false, true, false};
        case ScenarioId::pv_bs: return {id, false, true, true};
        case ScenarioId::ev_pv: return {id, true, true, false};
        case ScenarioId::ev_pv_bs: return {id, true, true, true};
    }
    return {};
}

std::string_view to_string(ScenarioId id) { return kScenarioLabels[static_cast<std::size_t>(id)]; }

ScenarioId parse_scenario(std::string_view label) {
    for (std::size_t i = 0; i < kScenarioLabels.size(); ++i) {
        if (kScenarioLabels[i] == label) return static_cast<ScenarioId>(i);
    }
    throw ConfigError("unknown scenario '" + std::string(label) +
                      "' (expected CS, EV, PV, PV+BS, EV+PV or EV+PV+BS)");
}

ScenarioRunner::ScenarioRunner(const Town& town, ScenarioConfig config, std::uint64_t seed)
    : town_(town), config_(std::move(config)), seed_(seed), horizon_(year_horizon(town.year)) {
    validate(config_.ev);
    std::unordered_map<std::string, std::size_t> households_per_building;
    for (const auto& h : town_.population.households) ++households_per_building[h.building_id];
    for (std::size_t i = 0; i < town_.buildings.size(); ++i) {
        const auto& b = town_.buildings[i];
        if (b.demand.start() != horizon_.start || b.demand.size() != horizon_.hours) {
            throw AlignmentError("demand series of building " + b.id +
                                 " does not cover the simulation year");
        }
        const bool residential = households_per_building.contains(b.id);
        if (residential && !b.has_pv && !b.has_ev) eligible_.push_back(i);
    }
}

void ScenarioRunner::ensure_ev() {
    if (ev_done_) return;
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < town_.buildings.size(); ++i) index.emplace(town_.buildings[i].id, i);

    std::vector<std::vector<double>> sums(town_.buildings.size());
    vehicle_counts_.assign(town_.buildings.size(), 0);
    driven_km_.assign(town_.buildings.size(), 0.0);
    unserved_km_.assign(town_.buildings.size(), 0.0);
    ev_results_.clear();
    ev_results_.reserve(town_.vehicles.size());
    for (const auto& v : town_.vehicles) {
        Rng rng = substream(seed_, "ev.vehicle", v.id);
        ev_results_.push_back(simulate_ev(v, config_.ev, horizon_, rng));
        const auto it = index.find(v.home_building_id);
        if (it == index.end()) {
            throw LookupError("vehicle " + std::to_string(v.id) + " has unknown home building " +
                              v.home_building_id);
        }
        auto& acc = sums[it->second];
        if (acc.empty()) acc.assign(horizon_.hours, 0.0);
        const auto& r = ev_results_.back();
        for (std::size_t h = 0; h < horizon_.hours; ++h) acc[h] += r.charging[h];
        ++vehicle_counts_[it->second];
        driven_km_[it->second] += r.driven_km;
        unserved_km_[it->second] += r.unserved_km;
    }
    zero_profile_ = TimeSeries::zeros(horizon_.start, horizon_.hours);
    cs_profiles_.clear();
    cs_profiles_.resize(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (!sums[i].empty()) cs_profiles_[i] = TimeSeries(horizon_.start, std::move(sums[i]));
    }
    ev_done_ = true;
}

const TimeSeries& ScenarioRunner::charging_profile(std::size_t building_index) {
    ensure_ev();
    const auto& p = cs_profiles_.at(building_index);
    return p ? *p : zero_profile_;
}

const std::vector<EvResult>& ScenarioRunner::ev_results() {
    ensure_ev();
    return ev_results_;
}

BuildingEnergyResult ScenarioRunner::simulate_building_in(std::size_t building_index,
                                                          const Scenario& s) {
    const auto& b = town_.buildings.at(building_index);
    const TimeSeries* cs = s.add_ev ? &charging_profile(building_index) : nullptr;
    std::optional<TimeSeries> pv;
    if (s.add_pv) pv = pv_series(size_pv(b.roof_area_m2, config_.pv), b.roof_orientation, config_.pv.profiles);
    std::optional<Bess> bess;
    if (s.add_bess) bess = make_bess(size_bess(b.demand.sum() / 1000.0), config_.bess);
    return simulate_building(b.demand, cs, pv ? &*pv : nullptr, bess);
}

ScenarioReport ScenarioRunner::run(ScenarioId id) {
    const Scenario s = make_scenario(id);
    if (s.add_ev) ensure_ev();
    ScenarioReport rep;
    rep.scenario = s;
    rep.seed = seed_;
    rep.year = town_.year;
    rep.excluded_buildings = town_.buildings.size() - eligible_.size();

    std::vector<double> town_import(horizon_.hours, 0.0);
    const auto months = month_of_hour(horizon_.start, horizon_.hours);
    double scr_sum = 0.0;
    double ssr_sum = 0.0;
    std::size_t scr_n = 0;
    std::size_t ssr_n = 0;

    for (auto i : eligible_) {
        const auto& b = town_.buildings[i];
        const BuildingEnergyResult r = simulate_building_in(i, s);
        BuildingReport br;
        br.building_id = b.id;
        if (s.add_ev) {
            br.vehicles = vehicle_counts_[i];
            br.driven_km = driven_km_[i];
            br.unserved_km = unserved_km_[i];
        }
        br.pv_kwp = s.add_pv ? size_pv(b.roof_area_m2, config_.pv) : 0.0;
        br.bess_kwh = s.add_bess ? size_bess(b.demand.sum() / 1000.0) : 0.0;
        br.demand_kwh = sum(r.p_build);
        br.cs_kwh = sum(r.p_cs);
        br.pv_kwh = sum(r.p_pv);
        br.self_consumed_kwh = sum(r.p_self_cons);
        br.grid_import_kwh = sum(r.grid_import);
        br.feed_in_kwh = sum(r.feed_in);
        br.scr = scr(r);
        if (br.demand_kwh + br.cs_kwh > 0.0) br.ssr = ssr(r);
        for (std::size_t h = 0; h < r.size(); ++h) {
            auto& peak = br.monthly_peak_import_kw[static_cast<std::size_t>(months[h])];
            peak = std::max(peak, r.grid_import[h]);
            town_import[h] += r.grid_import[h];
        }

        rep.demand_kwh += br.demand_kwh;
        rep.cs_kwh += br.cs_kwh;
        rep.pv_kwh += br.pv_kwh;
        rep.self_consumed_kwh += br.self_consumed_kwh;
        rep.grid_import_kwh += br.grid_import_kwh;
        rep.feed_in_kwh += br.feed_in_kwh;
        for (std::size_t m = 0; m < 12; ++m) rep.monthly_peak_sum_kw[m] += br.monthly_peak_import_kw[m];
        if (br.scr) {
            scr_sum += *br.scr;
            ++scr_n;
        }
        if (br.ssr) {
            ssr_sum += *br.ssr;
            ++ssr_n;
        }
        rep.buildings.push_back(std::move(br));
    }
    for (std::size_t h = 0; h < town_import.size(); ++h) {
        auto& peak = rep.monthly_coincident_peak_kw[static_cast<std::size_t>(months[h])];
        peak = std::max(peak, town_import[h]);
    }
    if (scr_n > 0) rep.mean_scr = scr_sum / static_cast<double>(scr_n);
    if (ssr_n > 0) rep.mean_ssr = ssr_sum / static_cast<double>(ssr_n);
    return rep;
}

ScenarioReport run_scenario(const Town& town, ScenarioId id, const ScenarioConfig& config,
                            std::uint64_t seed) {
    ScenarioRunner runner(town, config, seed);
    return runner.run(id);
}

}  // namespace evtwin

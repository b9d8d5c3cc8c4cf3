#include "evtwin/pipeline.hpp"

#include "evtwin/errors.hpp"
#include "evtwin/io.hpp"
#include "evtwin/random.hpp"
#include "evtwin/synthetic_town.hpp"

namespace evtwin {

TownInputs load_inputs(const RunConfig& cfg) {
    TownInputs in;
    if (!cfg.data) {
        auto bundle = generate_synthetic_town(cfg.synthetic_town, cfg.year, cfg.seed);
        in.buildings = std::move(bundle.buildings);
        in.pv_profiles = std::move(bundle.pv_profiles);
        in.diaries = std::move(bundle.diaries);
        in.labeled = std::move(bundle.labeled_examples);
        in.synthetic = true;
        return in;
    }
    const auto& d = *cfg.data;
    in.buildings = read_buildings_csv(d.buildings);
    join_demand_csv(in.buildings, d.demand, cfg.year);
    in.pv_profiles = read_pv_profiles_csv(d.pv_profiles, cfg.year);
    in.diaries = read_diaries_json(d.diaries);
    if (d.labeled_buildings) in.labeled = read_labeled_csv(*d.labeled_buildings);
    return in;
}

Town build_town(const RunConfig& cfg, const TownInputs& inputs) {
    Town town;
    town.year = cfg.year;
    town.buildings = inputs.buildings;

    if (!inputs.labeled.empty()) {
        const auto tree = train_tree(inputs.labeled, cfg.classifier);
        town.classifier_training_accuracy = training_accuracy(tree, inputs.labeled);
        for (const auto& b : town.buildings) town.building_types.push_back(classify_building(tree, b));
    } else {
        for (const auto& b : town.buildings) town.building_types.push_back(classify_by_meter_rule(b));
    }

    for (std::size_t i = 0; i < town.buildings.size(); ++i) {
        const auto& b = town.buildings[i];
        town.flats.push_back({b.id, town.building_types[i],
                              estimate_flats(b, town.building_types[i],
                                             cfg.population.residential_meter_fraction)});
    }
    if (cfg.population.census_flat_total > 0) {
        town.flats = calibrate_flats(std::move(town.flats), cfg.population.census_flat_total);
    }

    Rng household_rng = substream(cfg.seed, "population.households");
    town.population = sample_households(town.flats, cfg.population, household_rng);
    Rng vehicle_rng = substream(cfg.seed, "population.vehicles");
    town.vehicles = assign_vehicles(town.population, cfg.population, vehicle_rng);

    if (!inputs.diaries.empty()) {
        Rng diary_rng = substream(cfg.seed, "mobility.diaries");
        attach_diaries(town.population, inputs.diaries, cfg.diary_assignment == DiaryAssignment::by_id,
                       diary_rng);
    }
    const auto person_tours = build_person_tours(town.population.persons, &town.tour_diagnostics);
    assign_vehicle_tours(town.vehicles, person_tours, cfg.mode_choice, cfg.seed);
    for (const auto& [id, kwh] : cfg.ev_capacity_overrides) {
        if (id >= town.vehicles.size()) {
            throw ConfigError("ev.capacity_overrides: vehicle " + std::to_string(id) + " does not exist (" +
                              std::to_string(town.vehicles.size()) + " vehicles)");
        }
        town.vehicles[id].battery_capacity_kwh = kwh;
    }
    return town;
}

ScenarioConfig scenario_config(const RunConfig& cfg, const TownInputs& inputs) {
    ScenarioConfig sc;
    sc.ev = cfg.ev;
    sc.pv.density_kwp_per_m2 = cfg.pv_density_kwp_per_m2;
    sc.pv.cap_kwp = cfg.pv_cap_kwp;
    sc.pv.profiles = inputs.pv_profiles;
    sc.bess = cfg.bess;
    return sc;
}

}  // namespace evtwin

#pragma once

#include <vector>

#include "evtwin/config.hpp"
#include "evtwin/der.hpp"
#include "evtwin/mobility.hpp"
#include "evtwin/scenario.hpp"
#include "evtwin/town.hpp"

namespace evtwin {

// Everything read from disk (or generated) before synthesis starts.
struct TownInputs {
    std::vector<Building> buildings;
    PvProfileLibrary pv_profiles;
    std::vector<TripDiary> diaries;
    std::vector<LabeledBuildingExample> labeled;
    bool synthetic = false;
};

// Reads the data files named in the config, or generates the synthetic
// town when the config has no data section.
TownInputs load_inputs(const RunConfig& cfg);

// Building types, flats, households, vehicles and their weekly tours.
// Each stage draws from its own substream of cfg.seed.
Town build_town(const RunConfig& cfg, const TownInputs& inputs);

ScenarioConfig scenario_config(const RunConfig& cfg, const TownInputs& inputs);

}  // namespace evtwin

#pragma once

#include <vector>

#include "evtwin/decision_tree.hpp"
#include "evtwin/domain.hpp"
#include "evtwin/mobility.hpp"
#include "evtwin/population.hpp"

namespace evtwin {

// Fully synthesised town: buildings with their demand, the population
// living in them and the vehicles with their weekly tours.
struct Town {
    int year = 2021;
    std::vector<Building> buildings;
    std::vector<BuildingType> building_types;  // parallel to buildings
    std::vector<FlatEstimate> flats;           // parallel to buildings
    Population population;
    std::vector<Vehicle> vehicles;
    TourDiagnostics tour_diagnostics;
    double classifier_training_accuracy = -1.0;  // < 0 when the meter rule was used

    bool operator==(const Town&) const = default;
};

}  // namespace evtwin

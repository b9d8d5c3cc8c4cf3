#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "evtwin/der.hpp"
#include "evtwin/domain.hpp"

namespace evtwin {

// Self-consumption ratio: self-consumed PV energy over PV generation.
// Empty when the building generates nothing.
std::optional<double> scr(const BuildingEnergyResult& r);

// Self-sufficiency ratio: self-consumed PV energy over total demand
// (building plus charging station). Throws UndefinedMetricError when the
// total demand is zero.
double ssr(const BuildingEnergyResult& r);

struct MobilityValidation {
    // [weekday][hour], share of vehicles parked at home at the hour start
    std::array<std::array<double, 24>, 7> parked_at_home_share{};
    // hour of day over the whole week, normalised; all zero without tours
    std::array<double, 24> departure_histogram{};
    std::array<double, 24> arrival_histogram{};
    // share of vehicles used on 0..7 days of the week
    std::array<double, 8> usage_days_distribution{};
    double mean_usage_days = 0.0;
    std::size_t vehicle_count = 0;
    std::size_t tour_count = 0;
};

MobilityValidation mobility_validation(std::span<const Vehicle> vehicles);

}  // namespace evtwin

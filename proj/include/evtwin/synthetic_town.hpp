#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evtwin/decision_tree.hpp"
#include "evtwin/der.hpp"
#include "evtwin/domain.hpp"
#include "evtwin/mobility.hpp"
#include "evtwin/random.hpp"

namespace evtwin {

// Weekly activity templates used to synthesise trip diaries.
enum class CommutePattern { commuter, part_time, retiree, shift_worker };
inline constexpr std::size_t kCommutePatternCount = 4;
std::string_view to_string(CommutePattern p);
CommutePattern parse_commute_pattern(std::string_view label);

// Built-in normalised daily load shapes.
enum class DemandArchetype { standard, evening };
inline constexpr std::size_t kDemandArchetypeCount = 2;
std::string_view to_string(DemandArchetype a);
DemandArchetype parse_demand_archetype(std::string_view label);

// Parameters of the stand-in town that exercises the whole pipeline
// without proprietary smart-meter data.
struct SyntheticTownSpec {
    int building_count = 200;
    // single-family, two-family, apartment tower
    std::array<double, kBuildingTypeCount> type_mix{0.68, 0.20, 0.12};
    int tower_flats_min = 4;
    int tower_flats_max = 14;
    double roof_area_mean_m2 = 115.0;  // single-family; larger types scale up
    double roof_area_sd_m2 = 35.0;
    // S, E/W, N, flat
    std::array<double, 4> orientation_mix{0.35, 0.30, 0.15, 0.20};
    double annual_kwh_per_flat_mean = 2900.0;
    double annual_kwh_per_flat_sd = 900.0;
    double annual_kwh_per_flat_min = 700.0;
    std::array<double, kDemandArchetypeCount> archetype_mix{0.6, 0.4};
    double heat_pump_share = 0.06;
    double existing_pv_share = 0.0;
    double existing_ev_share = 0.0;
    std::array<double, kCommutePatternCount> commute_mix{0.55, 0.17, 0.18, 0.10};
    // Diaries in the pool; 0 sizes the pool at three per building.
    int diary_count = 0;
    // Share of buildings for which the true type is exported as a labelled example.
    double labeled_share = 0.2;
    double latitude_deg = 50.0;
    double pv_specific_yield_kwh_per_kwp = 1000.0;

    bool operator==(const SyntheticTownSpec&) const = default;
};

void validate(const SyntheticTownSpec& spec);

struct TownBundle {
    std::vector<Building> buildings;  // with demand series
    std::vector<BuildingType> true_types;
    PvProfileLibrary pv_profiles;
    std::vector<TripDiary> diaries;
    std::vector<LabeledBuildingExample> labeled_examples;
};

TownBundle generate_synthetic_town(const SyntheticTownSpec& spec, int year, std::uint64_t seed);

// Hourly demand for one year summing exactly to annual_kwh.
TimeSeries synthetic_demand(DemandArchetype archetype, double annual_kwh, int year, Rng& rng);

// Normalised PV profiles (kW per kWp) for all four orientations; the
// south profile sums to specific_yield over the year.
PvProfileLibrary synthetic_pv_profiles(int year, double latitude_deg, double specific_yield,
                                       Rng& rng);

TripDiary synthetic_diary(CommutePattern pattern, const std::string& person_id, Rng& rng);

}  // namespace evtwin

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evtwin/decision_tree.hpp"
#include "evtwin/domain.hpp"
#include "evtwin/random.hpp"

namespace evtwin {

struct FlatEstimate {
    std::string building_id;
    BuildingType type = BuildingType::single_family;
    int flats = 1;

    bool operator==(const FlatEstimate&) const = default;
};

// Household size distribution of one family type.
struct SizeDistribution {
    std::vector<int> sizes;
    std::vector<double> probabilities;

    bool operator==(const SizeDistribution&) const = default;
};

struct SynthesisConfig {
    // indexed by FamilyType
    std::array<double, kFamilyTypeCount> family_type_frequencies{};
    std::array<SizeDistribution, kFamilyTypeCount> members_by_family_type;
    // Probability that a child living in a family household is 18 or older.
    double adult_child_share = 0.25;
    // adult count -> probability of owning 0, 1, 2, ... vehicles; households
    // with more adults than the largest key use that key's row
    std::map<int, std::vector<double>> vehicles_per_adult_count;
    // Town total the drawn vehicle counts are reconciled to; unset keeps
    // the raw draws.
    std::optional<long> total_vehicles_target;
    // 0 disables the census calibration of flat counts
    long census_flat_total = 0;
    // Share of tower meters that belong to flats.
    double residential_meter_fraction = 0.85;

    bool operator==(const SynthesisConfig&) const = default;
};

// Documented defaults for a small German town; every value is configurable.
SynthesisConfig default_synthesis_config();

// Throws ConfigError naming the offending entry.
void validate(const SynthesisConfig& cfg);

// single-family -> 1, two-family -> 2, tower -> round(meters * fraction), at least 3.
int estimate_flats(const Building& b, BuildingType type, double residential_meter_fraction);

// Scales the tower flat counts by one common factor and rounds them with the
// largest-remainder method so that the town total hits census_flat_total.
// Single- and two-family buildings keep their counts.
std::vector<FlatEstimate> calibrate_flats(std::vector<FlatEstimate> flats, long census_flat_total);

struct Population {
    std::vector<Household> households;
    std::vector<Person> persons;

    bool operator==(const Population&) const = default;
};

// One household per flat with a family type, member count and adult/child split.
Population sample_households(std::span<const FlatEstimate> flats, const SynthesisConfig& cfg,
                             Rng& rng);

// Draws the vehicles per household, reconciles the total with
// cfg.total_vehicles_target and attaches drivers. Fills Household::vehicle_ids.
std::vector<Vehicle> assign_vehicles(Population& population, const SynthesisConfig& cfg, Rng& rng);

}  // namespace evtwin

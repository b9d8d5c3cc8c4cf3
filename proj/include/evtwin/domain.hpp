#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "evtwin/time_series.hpp"

namespace evtwin {

// Offsets inside the simulated week, measured from Monday 00:00.
using Minutes = std::chrono::minutes;
inline constexpr Minutes kMinutesPerDay{24 * 60};
inline constexpr Minutes kMinutesPerWeek{7 * 24 * 60};

enum class Orientation { south, east_west, north, flat };

std::string_view to_string(Orientation o);
// Accepts "S", "E/W", "N", "flat"; throws ValidationError otherwise.
Orientation parse_orientation(std::string_view label);

struct Building {
    std::string id;
    double roof_area_m2 = 0.0;
    Orientation roof_orientation = Orientation::south;
    double volume_m3 = 0.0;
    int meter_count = 1;
    bool has_pv = false;
    bool has_heat_pump = false;
    bool has_ev = false;
    TimeSeries demand;  // residential load P_build, kW

    bool operator==(const Building&) const = default;
};

// Throws ValidationError on negative roof area or a meter count below one.
void validate(const Building& b);

enum class FamilyType {
    one_person,
    couple_no_children,
    single_parent,
    couple_with_children,
    multi_person_no_nuclear_family,
};
inline constexpr std::size_t kFamilyTypeCount = 5;

std::string_view to_string(FamilyType t);
FamilyType parse_family_type(std::string_view label);

struct Household {
    std::size_t id = 0;
    std::string building_id;
    FamilyType family_type = FamilyType::one_person;
    int adults = 1;
    int children = 0;
    std::vector<std::size_t> person_ids;
    std::vector<std::size_t> vehicle_ids;

    bool operator==(const Household&) const = default;
};

// Times are offsets into the simulated week. A trip arriving after Sunday
// midnight has arrival > kMinutesPerWeek.
struct Trip {
    Minutes departure{0};
    Minutes arrival{0};
    double distance_km = 0.0;
    bool origin_is_home = false;
    bool destination_is_home = false;

    bool operator==(const Trip&) const = default;
};

// Arrival after departure, finite non-negative distance.
bool is_well_formed(const Trip& t);

struct Person {
    std::size_t id = 0;
    std::size_t household_id = 0;
    bool is_adult = true;
    std::vector<Trip> trips;

    bool operator==(const Person&) const = default;
};

// Home-centred chain of trips. Built only through from_trips, which checks
// that the chain leaves from and returns to home and is ordered in time.
class Tour {
public:
    static Tour from_trips(std::size_t owner_id, std::vector<Trip> trips);

    std::size_t owner_id() const { return owner_id_; }
    const std::vector<Trip>& trips() const { return trips_; }
    Minutes departure() const { return trips_.front().departure; }
    Minutes arrival() const { return trips_.back().arrival; }
    Minutes duration() const { return arrival() - departure(); }
    double total_distance_km() const { return total_distance_km_; }
    // Longest single trip, the distance fed to the mode-choice model.
    double longest_leg_km() const { return longest_leg_km_; }

    // Intervals are half-open [departure, arrival).
    bool overlaps(const Tour& other) const {
        return departure() < other.arrival() && other.departure() < arrival();
    }

    bool operator==(const Tour&) const = default;

private:
    Tour() = default;

    std::size_t owner_id_ = 0;
    std::vector<Trip> trips_;
    double total_distance_km_ = 0.0;
    double longest_leg_km_ = 0.0;
};

struct Vehicle {
    std::size_t id = 0;
    std::size_t household_id = 0;
    std::string home_building_id;
    std::size_t primary_driver_id = 0;
    std::vector<std::size_t> secondary_driver_ids;
    double battery_capacity_kwh = 0.0;  // 0 selects the configured default
    std::vector<Tour> tours;           // pairwise non-overlapping, sorted

    bool operator==(const Vehicle&) const = default;
};

}  // namespace evtwin

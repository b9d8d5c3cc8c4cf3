#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "evtwin/domain.hpp"
#include "evtwin/population.hpp"
#include "evtwin/random.hpp"

namespace evtwin {

// One week of trips of one person, grouped by the weekday of departure
// (0 = Monday). Trip times are offsets from Monday 00:00.
struct TripDiary {
    std::string person_id;
    std::array<std::vector<Trip>, 7> days;

    bool operator==(const TripDiary&) const = default;
};

struct TourDiagnostics {
    int malformed_trips = 0;     // non-positive duration, bad distance, chain overlap
    int orphan_trips = 0;        // trips outside any home-started chain
    int unfinished_tours = 0;    // chains that never returned home
    int wrapped_tours = 0;       // tours arriving after Sunday midnight
    int overlapping_tours = 0;   // removed in favour of an earlier tour

    TourDiagnostics& operator+=(const TourDiagnostics& o);
    bool operator==(const TourDiagnostics&) const = default;
};

// Merges the chronologically sorted trips into home-centred tours. Tours
// that never get home, cross the end of the week or overlap an earlier tour
// are dropped and counted in `diag`.
std::vector<Tour> build_tours(std::span<const Trip> trips, std::size_t owner_id,
                              TourDiagnostics* diag = nullptr);
std::vector<Tour> build_tours(const TripDiary& diary, std::size_t owner_id,
                              TourDiagnostics* diag = nullptr);

// Probability of driving a car as a function of the longest leg of a tour
// and whether the car is shared with other household members. Bins are
// half-open [edge_i, edge_i+1); the last bin is open-ended.
struct ModeChoiceTable {
    std::vector<double> bin_edges_km;
    std::vector<double> p_car_exclusive;
    std::vector<double> p_car_shared;

    bool operator==(const ModeChoiceTable&) const = default;
};

// Illustrative values for a rural town: low car share for very short
// trips, high share between 10 and 50 km.
ModeChoiceTable default_mode_choice_table();

// Throws ConfigError.
void validate(const ModeChoiceTable& table);

double mode_probability(const ModeChoiceTable& table, double d_trip_km, bool shared);

// Decides which of the drivers' tours the vehicle executes. The primary
// driver's tours are sampled with the exclusive-use probabilities, the
// secondary drivers' tours with the shared ones. An accepted secondary tour
// overlapping an already kept tour is dropped; the primary driver always
// wins, then the earlier departure. `person_tours` is indexed by person id.
std::vector<Tour> sample_vehicle_tours(const Vehicle& vehicle,
                                       std::span<const std::vector<Tour>> person_tours,
                                       const ModeChoiceTable& table, Rng& rng);

// Number of distinct weekdays with at least one departing tour.
int weekly_usage_days(std::span<const Tour> tours);

// Diary for every adult: by matching person ids when `match_ids` is set and
// the id exists in the pool, otherwise drawn uniformly from the pool.
void attach_diaries(Population& population, std::span<const TripDiary> diaries, bool match_ids,
                    Rng& rng);

// Person tours built from Person::trips, indexed by person id.
std::vector<std::vector<Tour>> build_person_tours(std::span<const Person> persons,
                                                  TourDiagnostics* diag = nullptr);

// Samples the tours of every vehicle with per-vehicle substreams of
// `seed`. A person's tours are offered only to the first vehicle (by id)
// the person drives, so no tour is executed twice.
void assign_vehicle_tours(std::vector<Vehicle>& vehicles,
                          std::span<const std::vector<Tour>> person_tours,
                          const ModeChoiceTable& table, std::uint64_t seed);

}  // namespace evtwin

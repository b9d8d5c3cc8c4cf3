#include "evtwin/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "evtwin/errors.hpp"

namespace evtwin {

TourDiagnostics& TourDiagnostics::operator+=(const TourDiagnostics& o) {
    malformed_trips += o.malformed_trips;
    orphan_trips += o.orphan_trips;
    unfinished_tours += o.unfinished_tours;
    wrapped_tours += o.wrapped_tours;
    overlapping_tours += o.overlapping_tours;
    return *this;
}

std::vector<Tour> build_tours(std::span<const Trip> input, std::size_t owner_id,
                              TourDiagnostics* diag) {
    TourDiagnostics local;
    std::vector<Trip> trips(input.begin(), input.end());
    std::stable_sort(trips.begin(), trips.end(),
                     [](const Trip& a, const Trip& b) { return a.departure < b.departure; });

    std::vector<Tour> closed;
    std::vector<Trip> chain;
    auto abandon = [&] {
        if (!chain.empty()) ++local.unfinished_tours;
        chain.clear();
    };

    for (const auto& trip : trips) {
        const bool overlaps_chain = !chain.empty() && trip.departure < chain.back().arrival;
        if (!is_well_formed(trip) || overlaps_chain) {
            ++local.malformed_trips;
            abandon();
            continue;
        }
        if (trip.origin_is_home) {
            abandon();
            chain.push_back(trip);
        } else if (chain.empty()) {
            ++local.orphan_trips;
            continue;
        } else {
            chain.push_back(trip);
        }
        if (trip.destination_is_home) {
            if (chain.back().arrival > kMinutesPerWeek) {
                ++local.wrapped_tours;
                chain.clear();
            } else {
                closed.push_back(Tour::from_trips(owner_id, std::move(chain)));
                chain.clear();
            }
        }
    }
    abandon();

    std::vector<Tour> tours;
    for (auto& t : closed) {
        if (!tours.empty() && t.departure() < tours.back().arrival()) {
            ++local.overlapping_tours;
            continue;
        }
        tours.push_back(std::move(t));
    }
    if (diag) *diag += local;
    return tours;
}

std::vector<Tour> build_tours(const TripDiary& diary, std::size_t owner_id, TourDiagnostics* diag) {
    std::vector<Trip> trips;
    for (const auto& day : diary.days) trips.insert(trips.end(), day.begin(), day.end());
    return build_tours(trips, owner_id, diag);
}

ModeChoiceTable default_mode_choice_table() {
    return {
        {0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0},
        {0.20, 0.45, 0.65, 0.75, 0.82, 0.85, 0.80},
        {0.12, 0.30, 0.45, 0.55, 0.62, 0.65, 0.60},
    };
}

void validate(const ModeChoiceTable& table) {
    const auto n = table.bin_edges_km.size();
    if (n == 0) throw ConfigError("mode_choice.bin_edges_km is empty");
    if (table.p_car_exclusive.size() != n || table.p_car_shared.size() != n) {
        throw ConfigError("mode_choice: one exclusive and one shared probability per bin required");
    }
    if (table.bin_edges_km.front() != 0.0) throw ConfigError("mode_choice: first bin must start at 0 km");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(table.bin_edges_km[i] > table.bin_edges_km[i - 1])) {
            throw ConfigError("mode_choice: bin edges must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (double p : {table.p_car_exclusive[i], table.p_car_shared[i]}) {
            if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("mode_choice: probabilities must lie in [0, 1]");
        }
    }
}

double mode_probability(const ModeChoiceTable& table, double d_trip_km, bool shared) {
    const auto& edges = table.bin_edges_km;
    const auto it = std::upper_bound(edges.begin(), edges.end(), d_trip_km);
    const auto bin = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin() - 1);
    return shared ? table.p_car_shared[bin] : table.p_car_exclusive[bin];
}

namespace {

bool overlaps_any(const Tour& t, const std::vector<Tour>& kept) {
    return std::any_of(kept.begin(), kept.end(), [&](const Tour& k) { return k.overlaps(t); });
}

const std::vector<Tour>& tours_of(std::span<const std::vector<Tour>> person_tours, std::size_t id) {
    static const std::vector<Tour> none;
    return id < person_tours.size() ? person_tours[id] : none;
}

}  // namespace

std::vector<Tour> sample_vehicle_tours(const Vehicle& vehicle,
                                       std::span<const std::vector<Tour>> person_tours,
                                       const ModeChoiceTable& table, Rng& rng) {
    std::vector<Tour> kept;
    for (const auto& tour : tours_of(person_tours, vehicle.primary_driver_id)) {
        const double p = mode_probability(table, tour.longest_leg_km(), false);
        if (bernoulli(rng, p) && !overlaps_any(tour, kept)) kept.push_back(tour);
    }

    struct Candidate {
        const Tour* tour;
        std::size_t driver_rank;
    };
    std::vector<Candidate> candidates;
    for (std::size_t r = 0; r < vehicle.secondary_driver_ids.size(); ++r) {
        for (const auto& tour : tours_of(person_tours, vehicle.secondary_driver_ids[r])) {
            const double p = mode_probability(table, tour.longest_leg_km(), true);
            if (bernoulli(rng, p)) candidates.push_back({&tour, r});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.tour->departure() != b.tour->departure()) return a.tour->departure() < b.tour->departure();
        return a.driver_rank < b.driver_rank;
    });
    for (const auto& c : candidates) {
        if (!overlaps_any(*c.tour, kept)) kept.push_back(*c.tour);
    }
    std::stable_sort(kept.begin(), kept.end(),
                     [](const Tour& a, const Tour& b) { return a.departure() < b.departure(); });
    return kept;
}

int weekly_usage_days(std::span<const Tour> tours) {
    std::set<long> days;
    for (const auto& t : tours) {
        const long day = t.departure() / kMinutesPerDay;
        if (day >= 0 && day < 7) days.insert(day);
    }
    return static_cast<int>(days.size());
}

void attach_diaries(Population& population, std::span<const TripDiary> diaries, bool match_ids,
                    Rng& rng) {
    if (diaries.empty()) return;
    std::unordered_map<std::string, std::size_t> by_id;
    if (match_ids) {
        for (std::size_t i = 0; i < diaries.size(); ++i) by_id.emplace(diaries[i].person_id, i);
    }
    for (auto& person : population.persons) {
        person.trips.clear();
        if (!person.is_adult) continue;
        std::size_t pick = 0;
        const auto it = match_ids ? by_id.find(std::to_string(person.id)) : by_id.end();
        if (it != by_id.end()) {
            pick = it->second;
        } else {
            pick = uniform_index(rng, diaries.size());
        }
        for (const auto& day : diaries[pick].days) {
            person.trips.insert(person.trips.end(), day.begin(), day.end());
        }
        std::stable_sort(person.trips.begin(), person.trips.end(),
                         [](const Trip& a, const Trip& b) { return a.departure < b.departure; });
    }
}

std::vector<std::vector<Tour>> build_person_tours(std::span<const Person> persons,
                                                  TourDiagnostics* diag) {
    std::vector<std::vector<Tour>> out(persons.size());
    for (const auto& p : persons) {
        if (p.id >= out.size()) out.resize(p.id + 1);
        out[p.id] = build_tours(p.trips, p.id, diag);
    }
    return out;
}

void assign_vehicle_tours(std::vector<Vehicle>& vehicles,
                          std::span<const std::vector<Tour>> person_tours,
                          const ModeChoiceTable& table, std::uint64_t seed) {
    validate(table);
    // Person ids already offered to an earlier vehicle.
    std::set<std::size_t> offered;
    std::vector<std::vector<Tour>> masked(person_tours.begin(), person_tours.end());
    for (auto& v : vehicles) {
        std::vector<std::size_t> drivers{v.primary_driver_id};
        drivers.insert(drivers.end(), v.secondary_driver_ids.begin(), v.secondary_driver_ids.end());
        for (auto d : drivers) {
            if (offered.contains(d) && d < masked.size()) masked[d].clear();
        }
        Rng rng = substream(seed, "mobility.vehicle", v.id);
        v.tours = sample_vehicle_tours(v, masked, table, rng);
        offered.insert(drivers.begin(), drivers.end());
    }
}

}  // namespace evtwin

#include "evtwin/domain.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "evtwin/errors.hpp"

namespace evtwin {

namespace {

constexpr std::array<std::string_view, 4> kOrientationLabels{"S", "E/W", "N", "flat"};

constexpr std::array<std::string_view, kFamilyTypeCount> kFamilyLabels{
    "one-person", "couple-no-children", "single-parent", "couple-with-children",
    "multi-person-no-nuclear-family"};

}  // namespace

std::string_view to_string(Orientation o) {
    return kOrientationLabels[static_cast<std::size_t>(o)];
}

Orientation parse_orientation(std::string_view label) {
    for (std::size_t i = 0; i < kOrientationLabels.size(); ++i) {
        if (kOrientationLabels[i] == label) return static_cast<Orientation>(i);
    }
    throw ValidationError("unknown roof orientation '" + std::string(label) +
                          "' (expected S, E/W, N or flat)");
}

std::string_view to_string(FamilyType t) {
    return kFamilyLabels[static_cast<std::size_t>(t)];
}

FamilyType parse_family_type(std::string_view label) {
    for (std::size_t i = 0; i < kFamilyLabels.size(); ++i) {
        if (kFamilyLabels[i] == label) return static_cast<FamilyType>(i);
    }
    throw ValidationError("unknown family type '" + std::string(label) + "'");
}

void validate(const Building& b) {
    if (!(b.roof_area_m2 >= 0.0) || !std::isfinite(b.roof_area_m2)) {
        throw ValidationError("building " + b.id + ": roof area must be >= 0");
    }
    if (!(b.volume_m3 >= 0.0) || !std::isfinite(b.volume_m3)) {
        throw ValidationError("building " + b.id + ": volume must be >= 0");
    }
    if (b.meter_count < 1) {
        throw ValidationError("building " + b.id + ": meter count must be >= 1");
    }
}

bool is_well_formed(const Trip& t) {
    return t.arrival > t.departure && std::isfinite(t.distance_km) && t.distance_km >= 0.0;
}

Tour Tour::from_trips(std::size_t owner_id, std::vector<Trip> trips) {
    if (trips.empty()) throw ValidationError("a tour needs at least one trip");
    if (!trips.front().origin_is_home) throw ValidationError("tour does not start at home");
    if (!trips.back().destination_is_home) throw ValidationError("tour does not end at home");
    for (std::size_t i = 0; i < trips.size(); ++i) {
        if (!is_well_formed(trips[i])) throw ValidationError("tour contains a malformed trip");
        if (i > 0 && trips[i].departure < trips[i - 1].arrival) {
            throw ValidationError("tour trips overlap or are out of order");
        }
    }
    Tour tour;
    tour.owner_id_ = owner_id;
    for (const auto& t : trips) {
        tour.total_distance_km_ += t.distance_km;
        tour.longest_leg_km_ = std::max(tour.longest_leg_km_, t.distance_km);
    }
    tour.trips_ = std::move(trips);
    return tour;
}

}  // namespace evtwin

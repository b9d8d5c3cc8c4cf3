#include "evtwin/population.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evtwin/errors.hpp"

namespace evtwin {

namespace {

int min_members(FamilyType t) {
    switch (t) {
        case FamilyType::one_person: return 1;
        case FamilyType::couple_no_children: return 2;
        case FamilyType::single_parent: return 2;
        case FamilyType::couple_with_children: return 3;
        case FamilyType::multi_person_no_nuclear_family: return 2;
    }
    return 1;
}

// Number of members who are parents (always adults) in a family household.
int parent_count(FamilyType t) {
    switch (t) {
        case FamilyType::single_parent: return 1;
        case FamilyType::couple_with_children: return 2;
        default: return -1;  // every member is an adult
    }
}

void check_probabilities(std::span<const double> p, const std::string& what) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(what + ": probabilities must be >= 0");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError(what + ": probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
}

}  // namespace

SynthesisConfig default_synthesis_config() {
    SynthesisConfig cfg;
    cfg.family_type_frequencies = {0.37, 0.29, 0.06, 0.24, 0.04};
    cfg.members_by_family_type[0] = {{1}, {1.0}};
    cfg.members_by_family_type[1] = {{2}, {1.0}};
    cfg.members_by_family_type[2] = {{2, 3, 4}, {0.62, 0.30, 0.08}};
    cfg.members_by_family_type[3] = {{3, 4, 5, 6}, {0.45, 0.40, 0.12, 0.03}};
    cfg.members_by_family_type[4] = {{2, 3, 4}, {0.75, 0.20, 0.05}};
    cfg.adult_child_share = 0.25;
    cfg.vehicles_per_adult_count = {
        {1, {0.20, 0.72, 0.08}},
        {2, {0.05, 0.45, 0.45, 0.05}},
        {3, {0.04, 0.26, 0.40, 0.30}},
        {4, {0.03, 0.17, 0.35, 0.30, 0.15}},
    };
    cfg.census_flat_total = 0;
    cfg.residential_meter_fraction = 0.85;
    return cfg;
}

void validate(const SynthesisConfig& cfg) {
    check_probabilities(cfg.family_type_frequencies, "family_type_frequencies");
    for (std::size_t t = 0; t < kFamilyTypeCount; ++t) {
        const auto type = static_cast<FamilyType>(t);
        const auto& d = cfg.members_by_family_type[t];
        const std::string where = "members_by_family_type." + std::string(to_string(type));
        if (d.sizes.size() != d.probabilities.size() || d.sizes.empty()) {
            throw ConfigError(where + ": sizes and probabilities must be non-empty and equally long");
        }
        check_probabilities(d.probabilities, where);
        for (int s : d.sizes) {
            if (s < min_members(type)) {
                throw ConfigError(where + ": household size " + std::to_string(s) +
                                  " below the minimum of " + std::to_string(min_members(type)));
            }
            if (type == FamilyType::one_person && s != 1) {
                throw ConfigError(where + ": one-person households have exactly one member");
            }
        }
    }
    if (!(cfg.adult_child_share >= 0.0 && cfg.adult_child_share <= 1.0)) {
        throw ConfigError("adult_child_share must lie in [0, 1]");
    }
    if (!(cfg.residential_meter_fraction > 0.0 && cfg.residential_meter_fraction <= 1.0)) {
        throw ConfigError("residential_meter_fraction must lie in (0, 1]");
    }
    for (const auto& [adults, dist] : cfg.vehicles_per_adult_count) {
        if (adults < 1) throw ConfigError("vehicles_per_adult_count: adult counts start at 1");
        if (dist.empty()) throw ConfigError("vehicles_per_adult_count: empty distribution");
        check_probabilities(dist, "vehicles_per_adult_count." + std::to_string(adults));
    }
    if (cfg.total_vehicles_target && *cfg.total_vehicles_target < 0) throw ConfigError("total_vehicles_target must be >= 0");
    if (cfg.census_flat_total < 0) throw ConfigError("census_flat_total must be >= 0");
}

int estimate_flats(const Building& b, BuildingType type, double residential_meter_fraction) {
    switch (type) {
        case BuildingType::single_family: return 1;
        case BuildingType::two_family: return 2;
        case BuildingType::apartment_tower: {
            const auto flats =
                static_cast<int>(std::lround(b.meter_count * residential_meter_fraction));
            return std::max(3, flats);
        }
    }
    return 1;
}

std::vector<FlatEstimate> calibrate_flats(std::vector<FlatEstimate> flats, long census_flat_total) {
    if (census_flat_total <= 0) throw ConfigError("census flat total must be positive");
    long fixed = 0;
    long towers = 0;
    for (const auto& f : flats) {
        (f.type == BuildingType::apartment_tower ? towers : fixed) += f.flats;
    }
    if (census_flat_total < fixed) {
        throw InfeasibleError("census flat total " + std::to_string(census_flat_total) +
                              " is below the " + std::to_string(fixed) +
                              " flats of single- and two-family buildings");
    }
    const long tower_target = census_flat_total - fixed;
    if (towers == tower_target) return flats;
    if (towers == 0) {
        throw InfeasibleError("no apartment towers to absorb a census difference of " +
                              std::to_string(tower_target) + " flats");
    }

    // Quota of tower i is flats_i * tower_target / towers; compare remainders
    // in integer arithmetic so rounding is exact.
    struct Share {
        std::size_t index;
        long floor;
        long remainder;  // numerator over `towers`
    };
    std::vector<Share> shares;
    long assigned = 0;
    for (std::size_t i = 0; i < flats.size(); ++i) {
        if (flats[i].type != BuildingType::apartment_tower) continue;
        const long num = static_cast<long>(flats[i].flats) * tower_target;
        shares.push_back({i, num / towers, num % towers});
        assigned += num / towers;
    }
    std::stable_sort(shares.begin(), shares.end(),
                     [](const Share& a, const Share& b) { return a.remainder > b.remainder; });
    long left = tower_target - assigned;
    for (auto& s : shares) {
        flats[s.index].flats = static_cast<int>(s.floor + (left > 0 ? 1 : 0));
        if (left > 0) --left;
    }
    return flats;
}

Population sample_households(std::span<const FlatEstimate> flats, const SynthesisConfig& cfg,
                             Rng& rng) {
    validate(cfg);
    Population pop;
    for (const auto& flat : flats) {
        for (int k = 0; k < flat.flats; ++k) {
            Household h;
            h.id = pop.households.size();
            h.building_id = flat.building_id;
            h.family_type = static_cast<FamilyType>(sample_index(rng, cfg.family_type_frequencies));
            const auto& sizes = cfg.members_by_family_type[static_cast<std::size_t>(h.family_type)];
            const int members = sizes.sizes[sample_index(rng, sizes.probabilities)];
            const int parents = parent_count(h.family_type);
            h.adults = 0;
            h.children = 0;
            for (int m = 0; m < members; ++m) {
                bool adult = true;
                if (parents >= 0 && m >= parents) adult = bernoulli(rng, cfg.adult_child_share);
                Person p;
                p.id = pop.persons.size();
                p.household_id = h.id;
                p.is_adult = adult;
                (adult ? h.adults : h.children) += 1;
                h.person_ids.push_back(p.id);
                pop.persons.push_back(std::move(p));
            }
            pop.households.push_back(std::move(h));
        }
    }
    return pop;
}

std::vector<Vehicle> assign_vehicles(Population& pop, const SynthesisConfig& cfg, Rng& rng) {
    validate(cfg);
    auto& households = pop.households;
    std::vector<long> counts(households.size(), 0);
    std::vector<double> weights(households.size(), 0.0);
    long total = 0;
    for (std::size_t i = 0; i < households.size(); ++i) {
        const int adults = households[i].adults;
        // Larger households than the table lists use its last row.
        auto it = cfg.vehicles_per_adult_count.upper_bound(adults);
        if (it != cfg.vehicles_per_adult_count.begin()) --it;
        if (it == cfg.vehicles_per_adult_count.end() || it->first > adults) {
            throw ConfigError("vehicles_per_adult_count has no distribution for " +
                              std::to_string(adults) + " adults");
        }
        counts[i] = static_cast<long>(sample_index(rng, it->second));
        weights[i] = adults;
        total += counts[i];
    }

    // Random unit corrections, households drawn proportionally to adults.
    const long target = cfg.total_vehicles_target.value_or(total);
    if (households.empty() && target > 0) {
        throw InfeasibleError("no households to receive " + std::to_string(target) + " vehicles");
    }
    if (!households.empty()) {
        while (total < target) {
            ++counts[sample_index(rng, weights)];
            ++total;
        }
        while (total > target) {
            const auto i = sample_index(rng, weights);
            if (counts[i] == 0) continue;
            --counts[i];
            --total;
        }
    }

    std::vector<Vehicle> vehicles;
    for (std::size_t i = 0; i < households.size(); ++i) {
        auto& h = households[i];
        std::vector<std::size_t> adults;
        for (auto pid : h.person_ids) {
            if (pop.persons[pid].is_adult) adults.push_back(pid);
        }
        const auto n = static_cast<std::size_t>(counts[i]);
        const std::size_t first = vehicles.size();
        for (std::size_t k = 0; k < n; ++k) {
            Vehicle v;
            v.id = vehicles.size();
            v.household_id = h.id;
            v.home_building_id = h.building_id;
            v.primary_driver_id = adults[k % adults.size()];
            h.vehicle_ids.push_back(v.id);
            vehicles.push_back(std::move(v));
        }
        // Adults without a vehicle of their own share one.
        for (std::size_t a = n; n > 0 && a < adults.size(); ++a) {
            vehicles[first + (a - n) % n].secondary_driver_ids.push_back(adults[a]);
        }
    }
    return vehicles;
}

}  // namespace evtwin

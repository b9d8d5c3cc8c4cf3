#include "evtwin/synthetic_town.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "evtwin/errors.hpp"
#include "evtwin/random.hpp"

namespace evtwin {

namespace {

constexpr std::array<std::string_view, kCommutePatternCount> kPatternLabels{
    "commuter", "part-time", "retiree", "shift-worker"};
constexpr std::array<std::string_view, kDemandArchetypeCount> kArchetypeLabels{"standard",
                                                                               "evening"};

// Relative hourly load, weekday and weekend.
constexpr std::array<std::array<double, 24>, 2> kStandardShape{{
    {0.38, 0.31, 0.28, 0.27, 0.28, 0.36, 0.58, 0.78, 0.72, 0.62, 0.60, 0.66,
     0.74, 0.66, 0.58, 0.56, 0.62, 0.80, 0.98, 1.04, 1.00, 0.88, 0.68, 0.48},
    {0.42, 0.34, 0.30, 0.28, 0.28, 0.30, 0.38, 0.52, 0.70, 0.82, 0.88, 0.94,
     0.98, 0.86, 0.72, 0.66, 0.68, 0.80, 0.96, 1.02, 0.98, 0.88, 0.72, 0.52},
}};
constexpr std::array<std::array<double, 24>, 2> kEveningShape{{
    {0.34, 0.28, 0.26, 0.25, 0.26, 0.34, 0.62, 0.80, 0.48, 0.36, 0.34, 0.36,
     0.40, 0.38, 0.36, 0.38, 0.52, 0.86, 1.10, 1.20, 1.12, 0.96, 0.72, 0.48},
    {0.44, 0.34, 0.30, 0.28, 0.28, 0.30, 0.36, 0.50, 0.72, 0.86, 0.92, 0.98,
     1.00, 0.88, 0.74, 0.68, 0.72, 0.86, 1.02, 1.08, 1.02, 0.92, 0.76, 0.54},
}};

double clamp_normal(Rng& rng, double mean, double sd, double lo, double hi) {
    return std::clamp(normal(rng, mean, sd), lo, hi);
}

void check_weights(std::span<const double> w, const std::string& what) {
    double s = 0.0;
    for (double x : w) {
        if (!(x >= 0.0)) throw ConfigError(what + ": weights must be >= 0");
        s += x;
    }
    if (!(s > 0.0)) throw ConfigError(what + ": weights must not all be zero");
}

Minutes travel_time(double km) {
    const double speed = km < 5.0 ? 28.0 : (km < 20.0 ? 45.0 : 65.0);
    return Minutes(static_cast<long>(std::lround(4.0 + km / speed * 60.0)));
}

Minutes at(double hours) { return Minutes(static_cast<long>(std::lround(hours * 60.0))); }

struct Stop {
    double km;      // distance of the leg leading to the stop
    Minutes dwell;  // time spent at the stop
};

class DiaryBuilder {
public:
    explicit DiaryBuilder(std::string id) { diary_.person_id = std::move(id); }

    // Adds a home-centred tour leaving at `departure` (minutes into `day`).
    // Tours that would start before the previous one returned are skipped.
    void tour(int day, Minutes departure, const std::vector<Stop>& stops, double km_home) {
        Minutes t = kMinutesPerDay * day + std::max(Minutes{0}, departure);
        if (t < last_arrival_) return;
        std::vector<Trip> trips;
        for (std::size_t i = 0; i < stops.size(); ++i) {
            const Minutes arr = t + travel_time(stops[i].km);
            trips.push_back({t, arr, round_km(stops[i].km), i == 0, false});
            t = arr + stops[i].dwell;
        }
        const Minutes arr = t + travel_time(km_home);
        trips.push_back({t, arr, round_km(km_home), stops.empty(), true});
        last_arrival_ = arr;
        for (auto& trip : trips) {
            diary_.days[static_cast<std::size_t>(trip.departure / kMinutesPerDay)].push_back(trip);
        }
    }

    TripDiary take() { return std::move(diary_); }

private:
    static double round_km(double km) { return std::round(km * 10.0) / 10.0; }

    TripDiary diary_;
    Minutes last_arrival_{-1};
};

std::vector<int> pick_days(Rng& rng, std::vector<int> pool, int n) {
    for (std::size_t i = pool.size(); i > 1; --i) {
        std::swap(pool[i - 1], pool[uniform_index(rng, i)]);
    }
    pool.resize(static_cast<std::size_t>(std::min<int>(n, static_cast<int>(pool.size()))));
    std::sort(pool.begin(), pool.end());
    return pool;
}

double lognormal_km(Rng& rng, double median, double sigma, double lo, double hi) {
    return std::clamp(median * std::exp(normal(rng, 0.0, sigma)), lo, hi);
}

}  // namespace

std::string_view to_string(CommutePattern p) { return kPatternLabels[static_cast<std::size_t>(p)]; }

CommutePattern parse_commute_pattern(std::string_view label) {
    for (std::size_t i = 0; i < kPatternLabels.size(); ++i) {
        if (kPatternLabels[i] == label) return static_cast<CommutePattern>(i);
    }
    throw ConfigError("unknown commute pattern '" + std::string(label) + "'");
}

std::string_view to_string(DemandArchetype a) {
    return kArchetypeLabels[static_cast<std::size_t>(a)];
}

DemandArchetype parse_demand_archetype(std::string_view label) {
    for (std::size_t i = 0; i < kArchetypeLabels.size(); ++i) {
        if (kArchetypeLabels[i] == label) return static_cast<DemandArchetype>(i);
    }
    throw ConfigError("unknown demand archetype '" + std::string(label) + "'");
}

void validate(const SyntheticTownSpec& spec) {
    if (spec.building_count < 1) throw ConfigError("synthetic_town.buildings must be >= 1");
    check_weights(spec.type_mix, "synthetic_town.type_mix");
    check_weights(spec.orientation_mix, "synthetic_town.orientation_mix");
    check_weights(spec.archetype_mix, "synthetic_town.archetype_mix");
    check_weights(spec.commute_mix, "synthetic_town.commute_mix");
    if (spec.tower_flats_min < 3 || spec.tower_flats_max < spec.tower_flats_min) {
        throw ConfigError("synthetic_town: need 3 <= tower_flats_min <= tower_flats_max");
    }
    if (!(spec.roof_area_mean_m2 > 0.0) || spec.roof_area_sd_m2 < 0.0) {
        throw ConfigError("synthetic_town: roof area mean must be > 0 and sd >= 0");
    }
    if (!(spec.annual_kwh_per_flat_mean > 0.0) || spec.annual_kwh_per_flat_sd < 0.0 ||
        spec.annual_kwh_per_flat_min < 0.0) {
        throw ConfigError("synthetic_town: invalid annual demand distribution");
    }
    for (double share : {spec.heat_pump_share, spec.existing_pv_share, spec.existing_ev_share,
                         spec.labeled_share}) {
        if (!(share >= 0.0 && share <= 1.0)) throw ConfigError("synthetic_town: shares must lie in [0, 1]");
    }
    if (spec.diary_count < 0) throw ConfigError("synthetic_town.diary_count must be >= 0");
    if (!(std::abs(spec.latitude_deg) < 66.0)) throw ConfigError("synthetic_town.latitude_deg out of range");
    if (!(spec.pv_specific_yield_kwh_per_kwp > 0.0)) {
        throw ConfigError("synthetic_town.pv_specific_yield_kwh_per_kwp must be > 0");
    }
}

TimeSeries synthetic_demand(DemandArchetype archetype, double annual_kwh, int year, Rng& rng) {
    const auto& shape = archetype == DemandArchetype::standard ? kStandardShape : kEveningShape;
    const HourStamp start = year_start(year);
    const std::size_t n = hours_in_year(year);
    std::vector<double> v(n);
    for (std::size_t h = 0; h < n; ++h) {
        const HourStamp t = start + std::chrono::hours(h);
        const auto day_of_year = static_cast<double>(h / 24);
        const int wd = weekday_index(t);
        const double season = 1.0 + 0.22 * std::cos(2.0 * std::numbers::pi * (day_of_year - 15.0) / 365.0);
        const double noise = std::max(0.15, 1.0 + 0.25 * normal(rng, 0.0, 1.0));
        v[h] = shape[wd >= 5 ? 1 : 0][h % 24] * season * noise;
    }
    const double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x *= annual_kwh / total;
    return TimeSeries(start, std::move(v));
}

PvProfileLibrary synthetic_pv_profiles(int year, double latitude_deg, double specific_yield,
                                       Rng& rng) {
    using std::numbers::pi;
    const double deg = pi / 180.0;
    const double phi = latitude_deg * deg;
    const std::size_t n = hours_in_year(year);
    const std::size_t days = n / 24;

    std::vector<double> clearness(days);
    for (std::size_t d = 0; d < days; ++d) {
        const double summer = 0.5 * (1.0 + std::cos(2.0 * pi * (static_cast<double>(d) - 172.0) / 365.0));
        clearness[d] = uniform(rng, 0.12 + 0.13 * summer, 0.85 + 0.15 * summer);
    }

    // tilt and azimuth (0 = south, west positive) of each plane
    struct Plane {
        double tilt;
        double azimuth;
    };
    auto profile = [&](std::vector<Plane> planes) {
        std::vector<double> v(n, 0.0);
        for (std::size_t h = 0; h < n; ++h) {
            const std::size_t d = h / 24;
            const double day_number = static_cast<double>(d) + 1.0;
            const double delta = 23.45 * deg * std::sin(2.0 * pi * (284.0 + day_number) / 365.0);
            const double omega = 15.0 * deg * (static_cast<double>(h % 24) + 0.5 - 12.0);
            const double cos_z = std::sin(phi) * std::sin(delta) + std::cos(phi) * std::cos(delta) * std::cos(omega);
            if (cos_z <= 0.01) continue;
            const double air_mass = 1.0 / cos_z;
            const double dni = std::pow(0.7, std::pow(air_mass, 0.678));
            const double dhi = 0.12 * dni;
            double poa = 0.0;
            for (const auto& p : planes) {
                const double b = p.tilt * deg;
                const double g = p.azimuth * deg;
                const double cos_i =
                    std::sin(delta) * std::sin(phi) * std::cos(b) -
                    std::sin(delta) * std::cos(phi) * std::sin(b) * std::cos(g) +
                    std::cos(delta) * std::cos(phi) * std::cos(b) * std::cos(omega) +
                    std::cos(delta) * std::sin(phi) * std::sin(b) * std::cos(g) * std::cos(omega) +
                    std::cos(delta) * std::sin(b) * std::sin(g) * std::sin(omega);
                poa += dni * std::max(0.0, cos_i) + dhi * (1.0 + std::cos(b)) / 2.0;
            }
            v[h] = poa / static_cast<double>(planes.size()) * clearness[d];
        }
        return v;
    };

    std::map<Orientation, std::vector<double>> raw;
    raw[Orientation::south] = profile({{35.0, 0.0}});
    raw[Orientation::east_west] = profile({{35.0, -90.0}, {35.0, 90.0}});
    raw[Orientation::north] = profile({{35.0, 180.0}});
    raw[Orientation::flat] = profile({{0.0, 0.0}});
    const auto& south = raw[Orientation::south];
    const double scale = specific_yield / std::accumulate(south.begin(), south.end(), 0.0);

    PvProfileLibrary lib;
    for (auto& [o, v] : raw) {
        for (auto& x : v) x *= scale;
        lib.emplace(o, TimeSeries(year_start(year), std::move(v)));
    }
    return lib;
}

TripDiary synthetic_diary(CommutePattern pattern, const std::string& person_id, Rng& rng) {
    DiaryBuilder b(person_id);
    switch (pattern) {
        case CommutePattern::commuter: {
            const double work_km = lognormal_km(rng, 13.0, 0.7, 1.5, 55.0);
            const double leave = clamp_normal(rng, 7.1, 0.6, 5.0, 9.5);
            const double shift = clamp_normal(rng, 8.7, 0.6, 6.0, 10.5);
            for (int day = 0; day < 5; ++day) {
                if (!bernoulli(rng, 0.95)) continue;
                const Minutes dep = at(leave + normal(rng, 0.0, 0.2));
                const Minutes dwell = at(shift + normal(rng, 0.0, 0.3));
                if (bernoulli(rng, 0.3)) {
                    b.tour(day, dep, {{work_km, dwell}, {work_km * 0.15 + 1.0, Minutes(25)}}, 2.5);
                } else {
                    b.tour(day, dep, {{work_km, dwell}}, work_km);
                }
                if (bernoulli(rng, 0.2)) {
                    b.tour(day, at(clamp_normal(rng, 19.3, 0.6, 18.5, 21.5)),
                           {{lognormal_km(rng, 4.0, 0.6, 0.5, 20.0), Minutes(60)}}, 4.0);
                }
            }
            if (bernoulli(rng, 0.8)) {
                const double km = lognormal_km(rng, 6.0, 0.6, 0.8, 30.0);
                b.tour(5, at(clamp_normal(rng, 10.0, 1.0, 8.0, 14.0)), {{km, Minutes(50)}}, km);
            }
            if (bernoulli(rng, 0.5)) {
                const double km = lognormal_km(rng, 15.0, 0.6, 2.0, 60.0);
                b.tour(6, at(clamp_normal(rng, 14.0, 1.2, 10.0, 17.0)), {{km, Minutes(150)}}, km);
            }
            break;
        }
        case CommutePattern::part_time: {
            const double work_km = lognormal_km(rng, 8.0, 0.6, 1.0, 35.0);
            const double leave = clamp_normal(rng, 7.8, 0.5, 6.0, 9.5);
            for (int day : pick_days(rng, {0, 1, 2, 3, 4}, 3)) {
                b.tour(day, at(leave + normal(rng, 0.0, 0.2)),
                       {{work_km, at(clamp_normal(rng, 4.8, 0.4, 3.5, 6.5))}}, work_km);
                if (bernoulli(rng, 0.35)) {
                    const double km = lognormal_km(rng, 4.0, 0.5, 0.5, 15.0);
                    b.tour(day, at(clamp_normal(rng, 15.5, 0.8, 14.0, 18.0)), {{km, Minutes(40)}}, km);
                }
            }
            for (int day : pick_days(rng, {0, 1, 2, 3, 4, 5}, 3)) {
                const double km = lognormal_km(rng, 5.0, 0.6, 0.5, 20.0);
                b.tour(day, at(clamp_normal(rng, 16.5, 1.0, 14.0, 19.0)), {{km, Minutes(45)}}, km);
            }
            if (bernoulli(rng, 0.35)) {
                const double km = lognormal_km(rng, 12.0, 0.6, 2.0, 50.0);
                b.tour(6, at(clamp_normal(rng, 14.0, 1.0, 11.0, 17.0)), {{km, Minutes(120)}}, km);
            }
            break;
        }
        case CommutePattern::retiree: {
            for (int day : pick_days(rng, {0, 1, 2, 3, 4, 5}, 5)) {
                const double km = lognormal_km(rng, 5.0, 0.6, 0.5, 25.0);
                b.tour(day, at(clamp_normal(rng, 9.8, 1.2, 8.0, 13.0)),
                       {{km, Minutes(60)}, {2.0, Minutes(20)}}, km);
            }
            if (bernoulli(rng, 0.75)) {
                const double km = lognormal_km(rng, 14.0, 0.6, 2.0, 60.0);
                b.tour(static_cast<int>(uniform_index(rng, 7)), at(clamp_normal(rng, 14.5, 0.8, 13.0, 17.0)),
                       {{km, Minutes(120)}}, km);
            }
            break;
        }
        case CommutePattern::shift_worker: {
            const double work_km = lognormal_km(rng, 12.0, 0.6, 1.5, 45.0);
            const bool early = bernoulli(rng, 0.5);
            for (int day : pick_days(rng, {0, 1, 2, 3, 4, 5}, 5)) {
                const double leave = early ? 5.2 : 13.2;
                b.tour(day, at(leave + normal(rng, 0.0, 0.15)), {{work_km, at(8.3)}}, work_km);
            }
            if (bernoulli(rng, 0.5)) {
                const double km = lognormal_km(rng, 6.0, 0.6, 0.8, 25.0);
                b.tour(6, at(clamp_normal(rng, 11.0, 1.0, 9.0, 14.0)), {{km, Minutes(60)}}, km);
            }
            break;
        }
    }
    return b.take();
}

TownBundle generate_synthetic_town(const SyntheticTownSpec& spec, int year, std::uint64_t seed) {
    validate(spec);
    TownBundle bundle;
    Rng rng = substream(seed, "synth.buildings");
    for (int i = 0; i < spec.building_count; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "B%05d", i + 1);
        Building b;
        b.id = id;
        const auto type = static_cast<BuildingType>(sample_index(rng, spec.type_mix));
        b.has_heat_pump = bernoulli(rng, spec.heat_pump_share);
        b.has_pv = bernoulli(rng, spec.existing_pv_share);
        b.has_ev = bernoulli(rng, spec.existing_ev_share);
        int flats = 1;
        double roof_scale = 1.0;
        switch (type) {
            case BuildingType::single_family:
                b.meter_count = 1 + (bernoulli(rng, 0.08) ? 1 : 0);
                b.volume_m3 = clamp_normal(rng, 620.0, 140.0, 250.0, 1400.0);
                break;
            case BuildingType::two_family:
                flats = 2;
                b.meter_count = 2 + (bernoulli(rng, 0.15) ? 1 : 0);
                b.volume_m3 = clamp_normal(rng, 950.0, 180.0, 450.0, 1900.0);
                roof_scale = 1.3;
                break;
            case BuildingType::apartment_tower:
                flats = spec.tower_flats_min +
                        static_cast<int>(uniform_index(
                            rng, static_cast<std::size_t>(spec.tower_flats_max - spec.tower_flats_min + 1)));
                b.meter_count = flats + 1;
                b.volume_m3 = flats * clamp_normal(rng, 290.0, 40.0, 180.0, 450.0);
                roof_scale = 1.5 + 0.12 * flats;
                break;
        }
        if (b.has_heat_pump) ++b.meter_count;
        b.roof_area_m2 = std::round(std::max(15.0, roof_scale * normal(rng, spec.roof_area_mean_m2,
                                                                       spec.roof_area_sd_m2)) * 10.0) / 10.0;
        b.volume_m3 = std::round(b.volume_m3);
        b.roof_orientation = static_cast<Orientation>(sample_index(rng, spec.orientation_mix));

        double annual = 0.0;
        for (int f = 0; f < flats; ++f) {
            annual += std::max(spec.annual_kwh_per_flat_min,
                               normal(rng, spec.annual_kwh_per_flat_mean, spec.annual_kwh_per_flat_sd));
        }
        const auto archetype = static_cast<DemandArchetype>(sample_index(rng, spec.archetype_mix));
        Rng demand_rng = substream(seed, "synth.demand", static_cast<std::uint64_t>(i));
        b.demand = synthetic_demand(archetype, std::round(annual), year, demand_rng);

        if (bernoulli(rng, spec.labeled_share)) {
            bundle.labeled_examples.push_back(
                {b.meter_count, b.volume_m3, b.has_pv, b.has_heat_pump, type});
        }
        bundle.true_types.push_back(type);
        bundle.buildings.push_back(std::move(b));
    }

    Rng pv_rng = substream(seed, "synth.pv");
    bundle.pv_profiles =
        synthetic_pv_profiles(year, spec.latitude_deg, spec.pv_specific_yield_kwh_per_kwp, pv_rng);

    const int diaries = spec.diary_count > 0 ? spec.diary_count : 3 * spec.building_count;
    Rng diary_rng = substream(seed, "synth.diaries");
    for (int i = 0; i < diaries; ++i) {
        const auto pattern = static_cast<CommutePattern>(sample_index(diary_rng, spec.commute_mix));
        bundle.diaries.push_back(synthetic_diary(pattern, "P" + std::to_string(i + 1), diary_rng));
    }
    return bundle;
}

}  // namespace evtwin

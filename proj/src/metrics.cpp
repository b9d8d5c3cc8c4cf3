#include "evtwin/metrics.hpp"

#include <numeric>

#include "evtwin/errors.hpp"
#include "evtwin/mobility.hpp"

namespace evtwin {

namespace {

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

std::optional<double> scr(const BuildingEnergyResult& r) {
    const double generated = total(r.p_pv);
    if (!(generated > 0.0)) return std::nullopt;
    return total(r.p_self_cons) / generated;
}

double ssr(const BuildingEnergyResult& r) {
    const double demand = total(r.p_build) + total(r.p_cs);
    if (!(demand > 0.0)) throw UndefinedMetricError("self-sufficiency undefined for zero total demand");
    return total(r.p_self_cons) / demand;
}

MobilityValidation mobility_validation(std::span<const Vehicle> vehicles) {
    MobilityValidation mv;
    mv.vehicle_count = vehicles.size();
    std::array<std::array<std::size_t, 24>, 7> parked{};
    std::array<std::size_t, 8> usage{};
    for (const auto& v : vehicles) {
        for (std::size_t day = 0; day < 7; ++day) {
            for (std::size_t hour = 0; hour < 24; ++hour) {
                const Minutes at = kMinutesPerDay * static_cast<long>(day) +
                                   Minutes(static_cast<long>(hour) * 60);
                bool away = false;
                for (const auto& t : v.tours) {
                    if (t.departure() <= at && at < t.arrival()) {
                        away = true;
                        break;
                    }
                }
                if (!away) ++parked[day][hour];
            }
        }
        for (const auto& t : v.tours) {
            ++mv.tour_count;
            mv.departure_histogram[static_cast<std::size_t>((t.departure() % kMinutesPerDay).count() / 60)] += 1.0;
            mv.arrival_histogram[static_cast<std::size_t>((t.arrival() % kMinutesPerDay).count() / 60)] += 1.0;
        }
        ++usage[static_cast<std::size_t>(weekly_usage_days(v.tours))];
    }

    const double n = static_cast<double>(vehicles.size());
    for (std::size_t d = 0; d < 7; ++d) {
        for (std::size_t h = 0; h < 24; ++h) {
            mv.parked_at_home_share[d][h] = vehicles.empty() ? 1.0 : parked[d][h] / n;
        }
    }
    if (mv.tour_count > 0) {
        const double tours = static_cast<double>(mv.tour_count);
        for (auto& x : mv.departure_histogram) x /= tours;
        for (auto& x : mv.arrival_histogram) x /= tours;
    }
    if (!vehicles.empty()) {
        for (std::size_t k = 0; k < usage.size(); ++k) {
            mv.usage_days_distribution[k] = usage[k] / n;
            mv.mean_usage_days += static_cast<double>(k) * usage[k] / n;
        }
    }
    return mv;
}

}  // namespace evtwin

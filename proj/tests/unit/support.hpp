#pragma once

#include <vector>

#include "evtwin/domain.hpp"
#include "evtwin/time_series.hpp"

namespace evtwin::test {

inline Minutes at(int day, int hour, int minute = 0) {
    return kMinutesPerDay * day + std::chrono::hours(hour) + Minutes(minute);
}

inline Trip trip(Minutes dep, Minutes arr, double km, bool from_home, bool to_home) {
    return Trip{dep, arr, km, from_home, to_home};
}

// Out-and-back tour from home.
inline Tour round_trip(std::size_t owner, Minutes dep, Minutes arr, double km_each_way) {
    const Minutes mid = dep + (arr - dep) / 2;
    return Tour::from_trips(owner, {trip(dep, mid, km_each_way, true, false),
                                    trip(mid + Minutes(0), arr, km_each_way, false, true)});
}

inline TimeSeries constant_year(double kw, int year = 2021) {
    return TimeSeries(year_start(year), std::vector<double>(hours_in_year(year), kw));
}

}  // namespace evtwin::test

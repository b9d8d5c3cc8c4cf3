#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

namespace evtwin {

using HourStamp = std::chrono::sys_time<std::chrono::hours>;

HourStamp year_start(int year);
std::size_t hours_in_year(int year);
bool is_leap_year(int year);

// Day of week of the given hour, Monday = 0 ... Sunday = 6.
int weekday_index(HourStamp t);

// Hourly power series in kW. With the fixed one-hour step a sample is also
// the energy of that hour in kWh. Samples are finite and non-negative.
class TimeSeries {
public:
    static constexpr std::chrono::hours step{1};

    TimeSeries() = default;
    TimeSeries(HourStamp start, std::vector<double> values_kw);

    static TimeSeries zeros(HourStamp start, std::size_t length);

    HourStamp start() const { return start_; }
    HourStamp time_at(std::size_t i) const { return start_ + std::chrono::hours(i); }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    double sum() const;
    double max() const;
    TimeSeries scaled(double factor) const;

    bool aligned_with(const TimeSeries& other) const {
        return start_ == other.start_ && values_.size() == other.values_.size();
    }

    bool operator==(const TimeSeries&) const = default;

private:
    HourStamp start_{};
    std::vector<double> values_;
};

enum class SeriesOp { add, sub_clamped_at_zero, min };

// Throws AlignmentError unless both series share start and length.
TimeSeries ts_binary(const TimeSeries& a, const TimeSeries& b, SeriesOp op);

// Per calendar month maximum. The series must span exactly one calendar
// year starting on January 1st 00:00, otherwise CoverageError.
std::array<double, 12> ts_monthly_max(const TimeSeries& s);

// Per-hour month index (0..11) for a year-long horizon starting at `start`.
std::vector<int> month_of_hour(HourStamp start, std::size_t length);

}  // namespace evtwin

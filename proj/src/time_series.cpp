#include "evtwin/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "evtwin/errors.hpp"

namespace evtwin {

using namespace std::chrono;

HourStamp year_start(int y) {
    return HourStamp{sys_days{year{y} / January / 1}};
}

bool is_leap_year(int y) { return year{y}.is_leap(); }

std::size_t hours_in_year(int y) { return is_leap_year(y) ? 8784 : 8760; }

int weekday_index(HourStamp t) {
    const weekday wd{floor<days>(t)};
    return static_cast<int>(wd.iso_encoding()) - 1;
}

TimeSeries::TimeSeries(HourStamp start, std::vector<double> values_kw)
    : start_(start), values_(std::move(values_kw)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
            throw ValidationError("time series sample " + std::to_string(i) +
                                  " is negative or not finite");
        }
    }
}

TimeSeries TimeSeries::zeros(HourStamp start, std::size_t length) {
    return TimeSeries(start, std::vector<double>(length, 0.0));
}

double TimeSeries::sum() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double TimeSeries::max() const {
    if (values_.empty()) return 0.0;
    return *std::max_element(values_.begin(), values_.end());
}

TimeSeries TimeSeries::scaled(double factor) const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [factor](double v) { return v * factor; });
    return TimeSeries(start_, std::move(out));
}

TimeSeries ts_binary(const TimeSeries& a, const TimeSeries& b, SeriesOp op) {
    if (!a.aligned_with(b)) {
        throw AlignmentError("time series differ in start or length (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                             " samples)");
    }
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (op) {
            case SeriesOp::add: out[i] = a[i] + b[i]; break;
            case SeriesOp::sub_clamped_at_zero: out[i] = std::max(0.0, a[i] - b[i]); break;
            case SeriesOp::min: out[i] = std::min(a[i], b[i]); break;
        }
    }
    return TimeSeries(a.start(), std::move(out));
}

std::vector<int> month_of_hour(HourStamp start, std::size_t length) {
    std::vector<int> months(length);
    for (std::size_t i = 0; i < length; ++i) {
        const year_month_day ymd{floor<days>(start + hours(i))};
        months[i] = static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
    }
    return months;
}

std::array<double, 12> ts_monthly_max(const TimeSeries& s) {
    const year_month_day first{floor<days>(s.start())};
    const int y = static_cast<int>(first.year());
    if (s.start() != year_start(y) || s.size() != hours_in_year(y)) {
        throw CoverageError("monthly maximum needs exactly one calendar year of hourly samples, got " +
                            std::to_string(s.size()) + " samples");
    }
    std::array<double, 12> peaks{};
    const auto months = month_of_hour(s.start(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto& p = peaks[static_cast<std::size_t>(months[i])];
        p = std::max(p, s[i]);
    }
    return peaks;
}

}  // namespace evtwin

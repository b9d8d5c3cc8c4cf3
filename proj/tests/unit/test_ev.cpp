#include <cmath>

#include "doctest.h"
#include "evtwin/errors.hpp"
#include "evtwin/ev.hpp"
#include "support.hpp"

using namespace evtwin;
using test::at;

namespace {

EvParams every_arrival() {
    EvParams p;
    p.plug_interval_probabilities = {1.0};
    return p;
}

Vehicle commuter(double km_each_way) {
    Vehicle v;
    for (int d = 0; d < 5; ++d) v.tours.push_back(test::round_trip(0, at(d, 7), at(d, 17), km_each_way));
    return v;
}

}  // namespace

TEST_SUITE("ev") {
    TEST_CASE("tour energy") {
        CHECK(tour_energy(100, 0.2) == doctest::Approx(20));
        CHECK(tour_energy(35, 0.2) == doctest::Approx(7));
        CHECK(tour_energy(0, 0.2) == 0);
    }

    TEST_CASE("connection decision") {
        const EvParams p;
        EvState s;
        s.soc_kwh = 0.30 * p.battery_capacity_kwh;
        CHECK(connection_decision(s, p, 4));  // below the threshold
        s.soc_kwh = 0.9 * p.battery_capacity_kwh;
        const bool expect[4] = {false, false, false, true};
        for (int k = 0; k < 4; ++k) {
            s.arrivals_since_last_plug = k;
            CHECK(connection_decision(s, p, 4) == expect[k]);
        }
        s.arrivals_since_last_plug = 0;
        CHECK(connection_decision(s, p, 1));
    }

    TEST_CASE("plug interval sampling follows the weights") {
        EvParams p;
        p.plug_interval_probabilities = {0.0, 0.0, 1.0};
        Rng rng = substream(1, "test.interval");
        for (int i = 0; i < 20; ++i) CHECK(sample_plug_interval(p, rng) == 3);
        p.plug_interval_probabilities = {0.25, 0.25, 0.5};
        int counts[4] = {};
        for (int i = 0; i < 20000; ++i) ++counts[sample_plug_interval(p, rng)];
        CHECK(counts[0] == 0);
        CHECK(std::abs(counts[3] / 20000.0 - 0.5) < 0.02);
    }

    TEST_CASE("charging at station power until full") {
        EvParams p;
        EvState s;
        s.mode = EvMode::parked_connected;
        s.substate = ChargeSubstate::may_charge;
        s.soc_kwh = 50;
        const auto step = step_ev(s, 0, {}, p, 1);
        CHECK(step.charged_kwh == doctest::Approx(10));
        CHECK(step.state.soc_kwh == 60);
        CHECK(step.state.substate == ChargeSubstate::full);

        s.soc_kwh = 20;
        const auto partial = step_ev(s, 0, {}, p, 1);
        CHECK(partial.charged_kwh == doctest::Approx(11));
        CHECK(partial.state.substate == ChargeSubstate::may_charge);
    }

    TEST_CASE("must-charge when the next tour needs more than the battery holds") {
        EvParams p;
        std::vector<ScheduledTour> tours{{at(0, 10), at(0, 12), 100, 20}};
        EvState s;
        s.mode = EvMode::parked_connected;
        s.substate = ChargeSubstate::must_charge;
        s.soc_kwh = 5;
        const auto step = step_ev(s, 0, tours, p, 1);
        CHECK(step.state.soc_kwh == doctest::Approx(16));
        CHECK(step.state.substate == ChargeSubstate::must_charge);
        const auto next = step_ev(step.state, 1, tours, p, 1);
        CHECK(next.state.substate == ChargeSubstate::may_charge);
    }

    TEST_CASE("disconnected cars do not charge") {
        EvParams p;
        EvState s;
        s.soc_kwh = 10;
        const auto step = step_ev(s, 0, {}, p, 1);
        CHECK(step.charged_kwh == 0);
        CHECK(step.state.soc_kwh == 10);
    }

    TEST_CASE("driving inside one hour splits the hour") {
        EvParams p;
        std::vector<ScheduledTour> tours{{Minutes(15), Minutes(45), 20, 4}};
        EvState s;
        s.mode = EvMode::parked_connected;
        s.substate = ChargeSubstate::full;
        s.soc_kwh = 60;
        EvTrace trace;
        const auto step = step_ev(s, 0, tours, p, 1, &trace);
        CHECK(step.consumed_kwh == doctest::Approx(4));
        CHECK(step.arrivals == 1);
        CHECK(step.plug_ins == 1);
        // 15 minutes at 11 kW after arrival
        CHECK(step.charged_kwh == doctest::Approx(2.75));
        CHECK(step.state.soc_kwh == doctest::Approx(58.75));
        REQUIRE(trace.segments.size() == 3);
        CHECK(trace.segments[1].mode == EvMode::driving);
        CHECK(trace.arrivals.size() == 1);
    }

    TEST_CASE("battery empties during a tour: the rest is unserved") {
        EvParams p;
        std::vector<ScheduledTour> tours{{Minutes(0), Minutes(60), 100, 20}};
        EvState s;
        s.mode = EvMode::driving;
        s.soc_kwh = 5;
        const auto step = step_ev(s, 0, tours, p, 1);
        CHECK(step.consumed_kwh == doctest::Approx(5));
        CHECK(step.unserved_kwh == doctest::Approx(15));
        CHECK(step.state.soc_kwh == 0);
        CHECK(step.forced_plug_ins == 0);  // interval 1 connects anyway
    }

    TEST_CASE("weekly tiling over the year") {
        const auto v = commuter(10);
        const auto h = year_horizon(2021);
        const auto tiled = tile_weekly_tours(v.tours, h, 0.2);
        // 2021 starts on a Friday: 261 weekdays
        CHECK(tiled.size() == 261);
        for (std::size_t i = 1; i < tiled.size(); ++i) CHECK(tiled[i - 1].arrival <= tiled[i].departure);
        CHECK(tiled.front().departure == at(0, 7));
        CHECK(tiled.front().energy_kwh == doctest::Approx(4));

        // a tour still running at the horizon end is left out
        std::vector<Tour> late{test::round_trip(0, at(4, 23), at(5, 1), 5)};
        const auto cut = tile_weekly_tours(late, {year_start(2021), 24}, 0.2);
        CHECK(cut.empty());
    }

    TEST_CASE("commuter week balances energy") {
        const auto v = commuter(25);
        Rng rng = substream(2, "test.commuter");
        const Horizon h{year_start(2021) + std::chrono::hours(24 * 3), 24 * 7};  // Monday 4 January
        const auto r = simulate_ev(v, EvParams{}, h, rng);
        CHECK(r.driven_km == doctest::Approx(250));
        CHECK(r.consumed_kwh == doctest::Approx(50));
        CHECK(r.unserved_km == 0);
        CHECK(r.arrivals == 5);
        CHECK(r.soc_end_kwh == doctest::Approx(r.soc_start_kwh + r.charged_kwh - r.consumed_kwh));
        CHECK(r.charging.sum() == doctest::Approx(r.charged_kwh));
        for (double kw : r.charging.values()) CHECK(kw <= 11.0 + 1e-9);
    }

    TEST_CASE("no tours: nothing happens") {
        Vehicle v;
        Rng rng = substream(3, "test.idle");
        const auto r = simulate_ev(v, EvParams{}, year_horizon(2021), rng);
        CHECK(r.charging.sum() == 0);
        CHECK(r.arrivals == 0);
        CHECK(r.soc_end_kwh == r.soc_start_kwh);
        CHECK(r.charging.size() == 8760);
    }

    TEST_CASE("every arrival plugged: annual energy follows the distance") {
        const auto v = commuter(20);
        Rng rng = substream(4, "test.annual");
        const auto r = simulate_ev(v, every_arrival(), year_horizon(2021), rng);
        CHECK(r.plug_in_events == r.arrivals);
        CHECK(r.forced_plug_ins == 0);
        // each evening the car refills what it used
        CHECK(r.charged_kwh == doctest::Approx(261 * 8.0));
        CHECK(r.soc_end_kwh == doctest::Approx(60));
    }

    TEST_CASE("vehicle capacity override") {
        auto v = commuter(5);
        v.battery_capacity_kwh = 40;
        Rng rng = substream(5, "test.cap");
        const auto r = simulate_ev(v, every_arrival(), year_horizon(2021), rng);
        CHECK(r.soc_start_kwh == 40);
    }

    TEST_CASE("parameter validation") {
        EvParams p;
        p.plug_interval_probabilities = {0.5, 0.4};
        CHECK_THROWS_AS(validate(p), ConfigError);
        p = EvParams{};
        p.battery_capacity_kwh = 0;
        CHECK_THROWS_AS(validate(p), ConfigError);
        CHECK_NOTHROW(validate(EvParams{}));
    }
}

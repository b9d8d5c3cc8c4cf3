#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "evtwin/config.hpp"
#include "evtwin/errors.hpp"
#include "evtwin/pipeline.hpp"
#include "evtwin/report.hpp"
#include "evtwin/scenario.hpp"
#include "support.hpp"

using namespace evtwin;
using test::at;

namespace {

// Two eligible houses (one with a commuter car) and one with PV already.
Town small_town() {
    Town t;
    for (int i = 0; i < 3; ++i) {
        Building b;
        b.id = "H" + std::to_string(i);
        b.roof_area_m2 = 100;
        b.roof_orientation = Orientation::south;
        b.demand = test::constant_year(0.4 + 0.1 * i);
        b.has_pv = i == 2;
        t.buildings.push_back(b);
        Household h;
        h.id = static_cast<std::size_t>(i);
        h.building_id = b.id;
        h.person_ids = {static_cast<std::size_t>(i)};
        t.population.households.push_back(h);
        t.population.persons.push_back(Person{static_cast<std::size_t>(i), static_cast<std::size_t>(i), true, {}});
    }
    Vehicle v;
    v.home_building_id = "H0";
    for (int d = 0; d < 5; ++d) v.tours.push_back(test::round_trip(0, at(d, 7), at(d, 17), 20));
    t.vehicles.push_back(v);
    return t;
}

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.ev.plug_interval_probabilities = {1.0};
    std::vector<double> pv(8760, 0.0);
    for (std::size_t d = 0; d < 365; ++d) {
        for (std::size_t h = 9; h < 16; ++h) pv[d * 24 + h] = 0.5;
    }
    c.pv.profiles.emplace(Orientation::south, TimeSeries(year_start(2021), pv));
    return c;
}

}  // namespace

TEST_SUITE("scenario") {
    TEST_CASE("scenario labels") {
        for (auto id : kAllScenarios) CHECK(parse_scenario(to_string(id)) == id);
        CHECK_THROWS_AS(parse_scenario("PV+EV"), ConfigError);
        CHECK(scenario_file_tag(ScenarioId::ev_pv_bs) == "EV_PV_BS");
        CHECK(make_scenario(ScenarioId::pv_bs).add_bess);
        CHECK_FALSE(make_scenario(ScenarioId::pv_bs).add_ev);
    }

    TEST_CASE("eligibility") {
        const auto town = small_town();
        ScenarioRunner runner(town, small_config(), 1);
        CHECK(runner.eligible_buildings() == std::vector<std::size_t>{0, 1});
        const auto rep = runner.run(ScenarioId::cs);
        CHECK(rep.excluded_buildings == 1);
        CHECK(rep.buildings.size() == 2);
    }

    TEST_CASE("baseline imports the whole demand") {
        const auto town = small_town();
        const auto rep = run_scenario(town, ScenarioId::cs, small_config(), 1);
        CHECK(rep.grid_import_kwh == doctest::Approx(8760 * 0.9));
        CHECK(rep.demand_kwh == doctest::Approx(8760 * 0.9));
        CHECK(rep.cs_kwh == 0);
        CHECK(rep.monthly_coincident_peak_kw[0] == doctest::Approx(0.9));
        CHECK(rep.monthly_peak_sum_kw[5] == doctest::Approx(0.9));
        CHECK_FALSE(rep.mean_scr.has_value());
        CHECK(*rep.mean_ssr == 0);
    }

    TEST_CASE("EV adds the charged energy to the home building") {
        const auto town = small_town();
        ScenarioRunner runner(town, small_config(), 1);
        const auto cs = runner.run(ScenarioId::cs);
        const auto ev = runner.run(ScenarioId::ev);
        // 261 working days of 40 km at 0.2 kWh/km, refilled every evening
        CHECK(ev.cs_kwh == doctest::Approx(261 * 8.0));
        CHECK(ev.grid_import_kwh == doctest::Approx(cs.grid_import_kwh + 261 * 8.0));
        CHECK(ev.buildings[0].vehicles == 1);
        CHECK(ev.buildings[0].driven_km == doctest::Approx(261 * 40.0));
        CHECK(ev.buildings[1].cs_kwh == 0);
        CHECK(runner.charging_profile(1).sum() == 0);
    }

    TEST_CASE("PV and battery lower the import in order") {
        const auto town = small_town();
        ScenarioRunner runner(town, small_config(), 1);
        const auto cs = runner.run(ScenarioId::cs);
        const auto pv = runner.run(ScenarioId::pv);
        const auto pvbs = runner.run(ScenarioId::pv_bs);
        const auto evpv = runner.run(ScenarioId::ev_pv);
        const auto evpvbs = runner.run(ScenarioId::ev_pv_bs);
        const auto ev = runner.run(ScenarioId::ev);
        CHECK(pv.grid_import_kwh < cs.grid_import_kwh);
        CHECK(pvbs.grid_import_kwh < pv.grid_import_kwh);
        CHECK(evpv.grid_import_kwh < ev.grid_import_kwh);
        CHECK(evpvbs.grid_import_kwh < evpv.grid_import_kwh);
        CHECK(pv.buildings[0].pv_kwp == doctest::Approx(17.2));
        CHECK(pvbs.buildings[0].bess_kwh == doctest::Approx(8760 * 0.4 / 1000));
        CHECK(pv.pv_kwh == doctest::Approx(2 * 17.2 * 0.5 * 7 * 365));
        for (const auto& b : evpvbs.buildings) {
            CHECK(b.self_consumed_kwh + b.grid_import_kwh == doctest::Approx(b.demand_kwh + b.cs_kwh));
            CHECK(*b.scr >= 0);
            CHECK(*b.ssr <= 1);
        }
    }

    TEST_CASE("synthetic town: totals, identities and EV effect on self-consumption") {
        const auto cfg = parse_config("seed: 11\nmode_choice: default\nsynthetic_town:\n  buildings: 40\n");
        const auto inputs = load_inputs(cfg);
        const Town town = build_town(cfg, inputs);
        ScenarioRunner runner(town, scenario_config(cfg, inputs), cfg.seed);
        const auto pv = runner.run(ScenarioId::pv);
        const auto evpv = runner.run(ScenarioId::ev_pv);
        REQUIRE(pv.buildings.size() == evpv.buildings.size());
        double import = 0, self = 0;
        for (std::size_t i = 0; i < pv.buildings.size(); ++i) {
            const auto& a = pv.buildings[i];
            const auto& b = evpv.buildings[i];
            import += b.grid_import_kwh;
            self += b.self_consumed_kwh;
            CHECK(a.pv_kwh == b.pv_kwh);
            CHECK(b.self_consumed_kwh >= a.self_consumed_kwh - 1e-9);
            if (a.scr) CHECK(*b.scr >= *a.scr - 1e-12);
            if (b.scr) CHECK(*b.scr * b.pv_kwh == doctest::Approx(b.self_consumed_kwh).epsilon(1e-9));
            CHECK(*b.ssr * (b.demand_kwh + b.cs_kwh) == doctest::Approx(b.self_consumed_kwh).epsilon(1e-9));
        }
        CHECK(evpv.grid_import_kwh == import);
        CHECK(evpv.self_consumed_kwh == self);
    }

    TEST_CASE("report tables") {
        const auto town = small_town();
        const auto rep = run_scenario(town, ScenarioId::ev_pv, small_config(), 1);
        Provenance p{"00000000000000ab", 1, "seed: 1\n"};
        const auto j = scenario_report_json(rep, p);
        CHECK(j["scenario"] == "EV+PV");
        CHECK(j["buildings"].size() == 2);
        CHECK(buildings_csv(rep, p).rfind("# evtwin config_hash=00000000000000ab seed=1\n", 0) == 0);
        const auto peaks = monthly_peaks_csv(rep, p);
        CHECK(std::count(peaks.begin(), peaks.end(), '\n') == 14);
        CHECK(peaks.find("\nDec,") != std::string::npos);

        const auto other = scenario_report_json(run_scenario(town, ScenarioId::cs, small_config(), 1), p);
        std::vector<nlohmann::json> both{j, other};
        const auto cmp = comparison_csv(both);
        CHECK(cmp.find("EV+PV") != std::string::npos);
        auto foreign = other;
        foreign["provenance"]["config_hash"] = "ffffffffffffffff";
        std::vector<nlohmann::json> mixed{j, foreign};
        CHECK_THROWS_AS(comparison_csv(mixed), Error);
    }

    TEST_CASE("demand must cover the simulation year") {
        auto town = small_town();
        town.buildings[1].demand = test::constant_year(1.0, 2022);
        CHECK_THROWS_AS(ScenarioRunner(town, small_config(), 1), AlignmentError);
    }

    TEST_CASE("pipeline on a small synthetic town") {
        auto cfg = parse_config("seed: 5\nmode_choice: default\nsynthetic_town:\n  buildings: 25\n");
        const auto inputs = load_inputs(cfg);
        CHECK(inputs.synthetic);
        CHECK(inputs.buildings.size() == 25);
        const Town town = build_town(cfg, inputs);
        CHECK(town.building_types.size() == 25);
        CHECK(town.flats.size() == 25);
        CHECK(town == build_town(cfg, inputs));
        for (const auto& v : town.vehicles) {
            for (std::size_t k = 1; k < v.tours.size(); ++k) CHECK(v.tours[k - 1].arrival() <= v.tours[k].departure());
        }
        cfg.ev_capacity_overrides[100000] = 40;
        CHECK_THROWS_AS(build_town(cfg, inputs), ConfigError);
    }
}

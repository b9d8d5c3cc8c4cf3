// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
// usage: acceptance <evtwin-cli> <config.yaml> <work-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "evtwin/config.hpp"
#include "evtwin/der.hpp"
#include "evtwin/errors.hpp"
#include "evtwin/ev.hpp"
#include "evtwin/io.hpp"
#include "evtwin/metrics.hpp"
#include "evtwin/mobility.hpp"
#include "evtwin/pipeline.hpp"
#include "evtwin/scenario.hpp"
#include "evtwin/synthetic_town.hpp"

namespace fs = std::filesystem;
using namespace evtwin;

namespace {

struct Args {
    fs::path cli;
    fs::path config;
    fs::path work;
};

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures without stopping at the first one.
class Checker {
public:
    void require(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (examples_.size() < 3) examples_.push_back(what);
    }
    long failures() const { return failures_; }
    Outcome outcome(const std::string& summary) const {
        Outcome o{failures_ == 0, summary};
        if (failures_ > 0) {
            o.detail += "; " + std::to_string(failures_) + " violations, e.g. ";
            for (std::size_t i = 0; i < examples_.size(); ++i) o.detail += (i ? " | " : "") + examples_[i];
        }
        return o;
    }

private:
    long failures_ = 0;
    std::vector<std::string> examples_;
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double total(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

RunConfig synthetic_config(std::uint64_t seed, int buildings) {
    auto cfg = parse_config("mode_choice: default\n");
    cfg.seed = seed;
    cfg.synthetic_town.building_count = buildings;
    return cfg;
}

struct SyntheticRun {
    RunConfig cfg;
    TownInputs inputs;
    Town town;
};

SyntheticRun make_run(std::uint64_t seed, int buildings) {
    SyntheticRun r;
    r.cfg = synthetic_config(seed, buildings);
    r.inputs = load_inputs(r.cfg);
    r.town = build_town(r.cfg, r.inputs);
    return r;
}

bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// 1. SCR * sum(PV) = SSR * sum(demand) = sum(self-consumption), per building.
Outcome identity_suite(const Args&) {
    const auto t0 = std::chrono::steady_clock::now();
    auto run = make_run(20210101, 200);
    ScenarioRunner runner(run.town, scenario_config(run.cfg, run.inputs), run.cfg.seed);
    Checker c;
    long checked = 0;
    for (auto id : kAllScenarios) {
        const auto s = make_scenario(id);
        for (auto i : runner.eligible_buildings()) {
            const auto r = runner.simulate_building_in(i, s);
            const double self = total(r.p_self_cons);
            const double pv = total(r.p_pv);
            const double demand = total(r.p_build) + total(r.p_cs);
            const auto b_scr = scr(r);
            const double b_ssr = ssr(r);
            const std::string where = std::string(to_string(id)) + "/" + run.town.buildings[i].id;
            if (b_scr) c.require(close_rel(*b_scr * pv, self, 1e-6), where + " SCR identity");
            else c.require(pv == 0.0, where + " SCR undefined with PV");
            c.require(close_rel(b_ssr * demand, self, 1e-6), where + " SSR identity");
            ++checked;
        }
        runner.run(id);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 60.0, "runtime " + fmt(secs) + " s");
    return c.outcome(std::to_string(checked) + " building-scenarios, 200 buildings, all six scenarios in " +
                     fmt(secs, 3) + " s");
}

// 2. Per-vehicle energy balance and battery losses.
Outcome conservation(const Args&) {
    Checker c;
    long vehicles = 0;
    long with_unserved = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; vehicles < 1000; ++seed) {
        auto run = make_run(seed, 200);
        const auto sc = scenario_config(run.cfg, run.inputs);
        for (const auto& v : run.town.vehicles) {
            if (vehicles >= 1000) break;
            Rng rng = substream(seed, "ev.vehicle", v.id);
            const auto r = simulate_ev(v, sc.ev, year_horizon(run.town.year), rng);
            if (r.unserved_km > 0.0) {
                ++with_unserved;
                continue;
            }
            const double err = std::abs((r.charged_kwh - r.consumed_kwh) - (r.soc_end_kwh - r.soc_start_kwh));
            worst = std::max(worst, err);
            c.require(err <= 1e-6, "vehicle " + std::to_string(v.id) + " seed " + std::to_string(seed) +
                                       " imbalance " + fmt(err));
            c.require(std::abs(r.charging.sum() - r.charged_kwh) <= 1e-6, "charging series total");
            ++vehicles;
        }
        if (seed > 50) break;
    }
    c.require(vehicles == 1000, "only " + std::to_string(vehicles) + " vehicles without unserved km");

    // battery bound over every building of a full EV+PV+BS year
    auto run = make_run(20210101, 200);
    ScenarioRunner runner(run.town, scenario_config(run.cfg, run.inputs), run.cfg.seed);
    long batteries = 0;
    for (auto i : runner.eligible_buildings()) {
        const auto r = runner.simulate_building_in(i, make_scenario(ScenarioId::ev_pv_bs));
        c.require(r.bess_delivered_kwh <= 0.90 * r.bess_charged_kwh + r.bess_initial_soc_kwh + 1e-6,
                  "battery of " + run.town.buildings[i].id + " delivers too much");
        for (double soc : r.bess_soc) c.require(soc >= 0.0, "negative battery soc");
        ++batteries;
    }
    return c.outcome(std::to_string(vehicles) + " vehicles (" + std::to_string(with_unserved) +
                     " with unserved km skipped), worst imbalance " + fmt(worst) + " kWh; " +
                     std::to_string(batteries) + " batteries within the 0.90 round-trip bound");
}

// 3. Every vehicle drives exactly 10 000 km a year and can always recharge.
Outcome closed_form_fleet(const Args&) {
    // Weekday patterns with their number of occurrences in 2021, which
    // starts on a Friday: 53 Fridays, 52 of every other weekday.
    struct Pattern {
        std::vector<int> days;
        int per_year;
    };
    const std::vector<Pattern> patterns{
        {{0}, 52}, {{0, 1, 2, 3}, 208}, {{4}, 53}, {{5, 6}, 104}, {{0, 1, 2, 3, 4}, 261}, {{2, 4}, 105}};
    const int fleet = 300;
    Town town;
    town.year = 2021;
    Rng rng = substream(7, "acceptance.fleet");
    for (int i = 0; i < fleet; ++i) {
        Building b;
        b.id = "F" + std::to_string(i);
        b.demand = TimeSeries(year_start(2021), std::vector<double>(8760, 0.5));
        town.buildings.push_back(b);
        Household h;
        h.id = static_cast<std::size_t>(i);
        h.building_id = b.id;
        town.population.households.push_back(h);

        const auto& p = patterns[static_cast<std::size_t>(i) % patterns.size()];
        const double km = 10000.0 / p.per_year;
        Vehicle v;
        v.id = static_cast<std::size_t>(i);
        v.household_id = h.id;
        v.home_building_id = b.id;
        for (int d : p.days) {
            const long dep = d * 1440L + 6 * 60 + static_cast<long>(uniform_index(rng, 10 * 60));
            const long dur = 60 + static_cast<long>(uniform_index(rng, 3 * 60));
            v.tours.push_back(Tour::from_trips(
                v.id, {Trip{Minutes(dep), Minutes(dep + dur / 2), km / 2, true, false},
                       Trip{Minutes(dep + dur / 2), Minutes(dep + dur), km / 2, false, true}}));
        }
        town.vehicles.push_back(std::move(v));
    }
    ScenarioConfig sc;
    sc.ev.plug_interval_probabilities = {1.0};  // plug in on every arrival
    ScenarioRunner runner(town, sc, 7);
    const auto cs = runner.run(ScenarioId::cs);
    const auto ev = runner.run(ScenarioId::ev);
    const double expected = fleet * 10000.0 * 0.20;
    double driven = 0.0;
    for (const auto& r : runner.ev_results()) driven += r.driven_km;
    Checker c;
    const double rel = std::abs(ev.cs_kwh - expected) / expected;
    c.require(rel <= 1e-3, "annual P_CS " + fmt(ev.cs_kwh) + " kWh vs " + fmt(expected));
    c.require(std::abs(driven - fleet * 10000.0) <= 1e-6 * fleet * 10000.0, "fleet drove " + fmt(driven) + " km");
    c.require(std::abs((ev.grid_import_kwh - cs.grid_import_kwh) - ev.cs_kwh) <= 1e-6 * expected,
              "EV import does not add the charging energy");
    return c.outcome(std::to_string(fleet) + " vehicles x 10000 km: annual P_CS " + fmt(ev.cs_kwh, 9) +
                     " kWh, expected " + fmt(expected, 9) + " (rel. error " + fmt(rel, 3) + ")");
}

// 4. Per-building ordering of annual grid import between scenarios.
Outcome monotonicity(const Args&) {
    constexpr double eps = 1e-9;  // kWh, summation noise only
    Checker c;
    long buildings = 0;
    long driving = 0;
    for (std::uint64_t seed = 101; seed <= 105; ++seed) {
        auto run = make_run(seed, 200);
        ScenarioRunner runner(run.town, scenario_config(run.cfg, run.inputs), seed);
        std::array<ScenarioReport, 6> rep;
        for (auto id : kAllScenarios) rep[static_cast<std::size_t>(id)] = runner.run(id);
        auto imp = [&](ScenarioId id, std::size_t k) {
            return rep[static_cast<std::size_t>(id)].buildings[k].grid_import_kwh;
        };
        for (std::size_t k = 0; k < rep[0].buildings.size(); ++k) {
            const std::string where = "seed " + std::to_string(seed) + " " + rep[0].buildings[k].building_id;
            c.require(imp(ScenarioId::ev_pv_bs, k) <= imp(ScenarioId::ev_pv, k) + eps, where + " EV+PV+BS > EV+PV");
            c.require(imp(ScenarioId::ev_pv, k) <= imp(ScenarioId::ev, k) + eps, where + " EV+PV > EV");
            c.require(imp(ScenarioId::pv_bs, k) <= imp(ScenarioId::pv, k) + eps, where + " PV+BS > PV");
            c.require(imp(ScenarioId::pv, k) <= imp(ScenarioId::cs, k) + eps, where + " PV > CS");
            const auto& evb = rep[static_cast<std::size_t>(ScenarioId::ev)].buildings[k];
            if (evb.driven_km >= 1.0) {
                ++driving;
                c.require(imp(ScenarioId::ev, k) > imp(ScenarioId::cs, k), where + " EV import not above CS");
            }
            ++buildings;
        }
    }
    return c.outcome(std::to_string(buildings) + " buildings over 5 seeds, " + std::to_string(driving) +
                     " with driving vehicles");
}

// 5. Sizing constants.
Outcome sizing(const Args&) {
    const PvParams pv;
    Checker c;
    c.require(size_pv(100, pv) == 17.2, "size_pv(100) = " + fmt(size_pv(100, pv), 17));
    c.require(size_pv(200, pv) == 30.0, "size_pv(200) = " + fmt(size_pv(200, pv), 17));
    c.require(size_bess(25) == 20.0, "size_bess(25) = " + fmt(size_bess(25), 17));
    return c.outcome("size_pv(100)=" + fmt(size_pv(100, pv)) + " kWp, size_pv(200)=" + fmt(size_pv(200, pv)) +
                     " kWp, size_bess(25 MWh)=" + fmt(size_bess(25)) + " kWh");
}

// 6. State machine safety, exhaustively over traced vehicle-years.
Outcome fsm_safety(const Args&) {
    Checker c;
    double vehicle_weeks = 0.0;
    long arrivals = 0;
    long forced = 0;
    long segments = 0;
    for (std::uint64_t seed = 201; vehicle_weeks < 10000.0; ++seed) {
        auto run = make_run(seed, 200);
        const auto sc = scenario_config(run.cfg, run.inputs);
        const auto horizon = year_horizon(run.town.year);
        for (auto v : run.town.vehicles) {
            // small batteries on every third vehicle push it below the threshold
            EvParams p = sc.ev;
            if (v.id % 3 == 0) p.battery_capacity_kwh = 12.0;
            const double cap = p.battery_capacity_kwh;
            Rng rng = substream(seed, "ev.vehicle", v.id);
            const int interval = sample_plug_interval(p, rng);
            const auto tours = tile_weekly_tours(v.tours, horizon, p.consumption_kwh_per_km);
            EvState state;
            state.soc_kwh = cap;
            EvTrace trace;
            for (std::size_t h = 0; h < horizon.hours; ++h) {
                const auto step = step_ev(state, h, tours, p, interval, &trace);
                state = step.state;
                const auto& s = state;
                c.require(s.soc_kwh >= 0.0 && s.soc_kwh <= cap, "soc out of range");
                c.require(s.substate.has_value() == (s.mode == EvMode::parked_connected),
                          "substate set outside ParkedConnected");
                if (s.substate == ChargeSubstate::must_charge) {
                    c.require(s.next_tour < tours.size() && s.soc_kwh < tours[s.next_tour].energy_kwh,
                              "MustCharge with enough energy");
                }
                c.require(step.charged_kwh <= p.station_power_kw + 1e-9, "hourly charging above station power");
            }
            // segments: charging only while connected; no mode change while parked
            std::size_t next_arrival = 0;
            EvMode parked_mode = EvMode::parked_disconnected;
            for (const auto& seg : trace.segments) {
                ++segments;
                c.require(seg.soc_begin_kwh >= 0.0 && seg.soc_end_kwh <= cap + 1e-12, "segment soc out of range");
                if (seg.mode != EvMode::parked_connected) c.require(seg.charged_kwh == 0.0, "charging while not connected");
                if (seg.mode != EvMode::driving) c.require(seg.consumed_kwh == 0.0, "consumption while parked");
                if (seg.mode == EvMode::driving) {
                    // the parking spell that follows is governed by the next arrival
                    if (next_arrival < trace.arrivals.size() && trace.arrivals[next_arrival].at == seg.end) {
                        parked_mode = trace.arrivals[next_arrival].connected ? EvMode::parked_connected
                                                                             : EvMode::parked_disconnected;
                        ++next_arrival;
                    }
                } else if (next_arrival > 0) {
                    c.require(seg.mode == parked_mode, "connection changed while parked");
                }
            }
            c.require(next_arrival == trace.arrivals.size(), "arrivals do not match driving segments");
            for (const auto& a : trace.arrivals) {
                ++arrivals;
                forced += a.forced;
                if (a.soc_kwh / cap < p.connect_threshold_soc) {
                    c.require(a.connected, "arrival below threshold left disconnected");
                }
            }
            vehicle_weeks += static_cast<double>(horizon.hours) / 168.0;
        }
        if (seed > 260) break;
    }
    c.require(vehicle_weeks >= 10000.0, "only " + fmt(vehicle_weeks) + " vehicle-weeks");
    return c.outcome(fmt(vehicle_weeks, 7) + " vehicle-weeks, " + std::to_string(arrivals) + " arrivals (" +
                     std::to_string(forced) + " forced plug-ins), " + std::to_string(segments) + " segments checked");
}

// 7. Tour building and vehicle tour sampling against a minute raster.
Outcome tour_oracle(const Args&) {
    constexpr long kSlots = 8 * 1440;  // the week plus the wrap-around day
    Checker c;
    Rng rng = substream(301, "acceptance.diaries");
    long tours_checked = 0;
    long vehicle_tours = 0;
    auto raster_ok = [&](const std::vector<Tour>& tours) {
        std::vector<char> busy(kSlots, 0);
        for (const auto& t : tours) {
            for (long m = t.departure().count(); m < t.arrival().count(); ++m) {
                if (m < 0 || m >= kSlots || busy[static_cast<std::size_t>(m)]) return false;
                busy[static_cast<std::size_t>(m)] = 1;
            }
        }
        return true;
    };
    auto random_diary = [&](int i) {
        if (i % 2 == 0) return synthetic_diary(static_cast<CommutePattern>(uniform_index(rng, 4)), "d", rng);
        TripDiary d;
        const auto n = uniform_index(rng, 25);
        for (std::size_t k = 0; k < n; ++k) {
            const long dep = static_cast<long>(uniform_index(rng, 7 * 1440));
            const long dur = static_cast<long>(uniform_index(rng, 400)) - 5;  // a few malformed
            d.days[static_cast<std::size_t>(dep / 1440)].push_back(
                Trip{Minutes(dep), Minutes(dep + dur), uniform(rng, 0, 60), bernoulli(rng, 0.55), bernoulli(rng, 0.55)});
        }
        return d;
    };
    std::vector<std::vector<Tour>> person_tours;
    for (int i = 0; i < 500; ++i) {
        const auto diary = random_diary(i);
        std::vector<Trip> input;
        for (const auto& day : diary.days) input.insert(input.end(), day.begin(), day.end());
        const auto tours = build_tours(diary, static_cast<std::size_t>(i));
        c.require(raster_ok(tours), "diary " + std::to_string(i) + ": overlapping tours");
        for (const auto& t : tours) {
            ++tours_checked;
            const auto& trips = t.trips();
            c.require(trips.front().origin_is_home && trips.back().destination_is_home,
                      "diary " + std::to_string(i) + ": tour not home-centred");
            for (std::size_t k = 0; k + 1 < trips.size(); ++k) {
                c.require(!trips[k].destination_is_home, "tour passes home midway");
                c.require(trips[k].arrival <= trips[k + 1].departure, "trips out of order");
            }
            for (const auto& tr : trips) {
                c.require(std::find(input.begin(), input.end(), tr) != input.end(), "tour trip not in the diary");
            }
            c.require(t.arrival() <= kMinutesPerWeek, "tour runs past the week");
        }
        person_tours.push_back(tours);
    }
    // vehicles shared by up to four of those persons
    const auto table = default_mode_choice_table();
    for (std::size_t first = 0; first + 4 <= person_tours.size(); first += 4) {
        Vehicle v;
        v.primary_driver_id = first;
        v.secondary_driver_ids = {first + 1, first + 2, first + 3};
        for (int draw = 0; draw < 5; ++draw) {
            Rng r = substream(302, "acceptance.vehicle", first * 10 + static_cast<std::size_t>(draw));
            const auto kept = sample_vehicle_tours(v, person_tours, table, r);
            vehicle_tours += static_cast<long>(kept.size());
            c.require(raster_ok(kept), "vehicle " + std::to_string(first) + ": overlapping tours");
        }
    }
    return c.outcome("500 diaries, " + std::to_string(tours_checked) + " tours; " + std::to_string(vehicle_tours) +
                     " sampled vehicle tours without overlap");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const Args& a, const std::vector<std::string>& args) {
    std::string cmd = "\"" + a.cli.string() + "\"";
    for (const auto& s : args) cmd += " \"" + s + "\"";
    cmd += " 2>/dev/null";
    return std::system(cmd.c_str());
}

// 8. Byte-identical reports for identical runs; other seed, other results.
Outcome determinism(const Args& a) {
    Checker c;
    const auto d1 = a.work / "run1";
    const auto d2 = a.work / "run2";
    const auto d3 = a.work / "run3";
    for (const auto& d : {d1, d2, d3}) fs::remove_all(d);
    c.require(run_cli(a, {"simulate", "-c", a.config.string(), "-o", d1.string(), "--scenario", "all"}) == 0,
              "first run failed");
    c.require(run_cli(a, {"simulate", "-c", a.config.string(), "-o", d2.string(), "--scenario", "all"}) == 0,
              "second run failed");
    long files = 0;
    if (fs::exists(d1)) {
        for (const auto& e : fs::directory_iterator(d1)) {
            ++files;
            const auto other = d2 / e.path().filename();
            c.require(fs::exists(other) && slurp(e.path()) == slurp(other),
                      e.path().filename().string() + " differs between runs");
        }
    }
    c.require(files >= 6 * 4 + 1, "only " + std::to_string(files) + " output files");

    auto cfg = load_config(a.config);
    cfg.seed += 1;
    const auto cfg_path = a.work / "other_seed.yaml";
    fs::create_directories(a.work);
    save_config(cfg, cfg_path);
    c.require(run_cli(a, {"simulate", "-c", cfg_path.string(), "-o", d3.string(), "--scenario", "EV+PV"}) == 0,
              "run with another seed failed");
    const auto body = [](const std::string& text) { return text.substr(text.find('\n') + 1); };
    const auto same = body(slurp(d1 / "buildings_EV_PV.csv"));
    const auto other = body(slurp(d3 / "buildings_EV_PV.csv"));
    c.require(!same.empty() && !other.empty() && same != other, "seed change left per-building results unchanged");
    return c.outcome(std::to_string(files) + " files byte-identical across two runs; seed " +
                     std::to_string(cfg.seed) + " changes the per-building table");
}

// 9. Departure peak and weekly usage of the default synthetic mix.
Outcome mobility_plausibility(const Args& a) {
    Checker c;
    const auto base = load_config(a.config);
    std::string detail;
    for (std::uint64_t k = 0; k < 5; ++k) {
        auto cfg = base;
        cfg.seed = base.seed + k;
        const auto inputs = load_inputs(cfg);
        const auto town = build_town(cfg, inputs);
        const auto m = mobility_validation(town.vehicles);
        const auto mode = static_cast<int>(std::max_element(m.departure_histogram.begin(), m.departure_histogram.end()) -
                                           m.departure_histogram.begin());
        const std::string where = "seed " + std::to_string(cfg.seed);
        c.require(mode >= 6 && mode < 9, where + ": departure mode at hour " + std::to_string(mode));
        c.require(m.mean_usage_days >= 4.0 && m.mean_usage_days <= 5.5,
                  where + ": mean usage days " + fmt(m.mean_usage_days));
        detail += (k ? ", " : "") + std::to_string(mode) + "h/" + fmt(m.mean_usage_days, 3) + "d";
    }
    return c.outcome("5 seeds (departure mode / mean usage days): " + detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: acceptance <evtwin-cli> <config.yaml> <work-dir>\n";
        return 2;
    }
    const Args args{fs::absolute(argv[1]), fs::absolute(argv[2]), fs::absolute(argv[3])};
    fs::create_directories(args.work);

    const std::vector<std::pair<std::string, std::function<Outcome(const Args&)>>> criteria{
        {"identity", identity_suite},
        {"conservation", conservation},
        {"closed-form fleet", closed_form_fleet},
        {"scenario monotonicity", monotonicity},
        {"sizing rules", sizing},
        {"state machine safety", fsm_safety},
        {"tour oracle", tour_oracle},
        {"determinism", determinism},
        {"mobility plausibility", mobility_plausibility},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second(args);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failed == 0 ? 0 : 1;
}

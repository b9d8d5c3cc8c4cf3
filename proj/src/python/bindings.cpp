#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "evtwin/config.hpp"
#include "evtwin/der.hpp"
#include "evtwin/errors.hpp"
#include "evtwin/metrics.hpp"
#include "evtwin/mobility.hpp"
#include "evtwin/pipeline.hpp"
#include "evtwin/report.hpp"
#include "evtwin/time_series.hpp"

namespace py = pybind11;
using namespace evtwin;

namespace {

TimeSeries series(const std::vector<double>& v, int year) { return TimeSeries(year_start(year), v); }

Provenance provenance_of(const RunConfig& cfg) {
    Provenance p;
    p.config_hash = config_hash(cfg);
    p.seed = cfg.seed;
    return p;
}

py::dict simulate_building_py(const std::vector<double>& demand, std::optional<std::vector<double>> cs,
                              std::optional<std::vector<double>> pv, std::optional<double> bess_kwh,
                              int year, double round_trip_efficiency, double c_rate) {
    const auto d = series(demand, year);
    std::optional<TimeSeries> c;
    std::optional<TimeSeries> p;
    if (cs) c = series(*cs, year);
    if (pv) p = series(*pv, year);
    std::optional<Bess> b;
    if (bess_kwh) b = make_bess(*bess_kwh, BessSettings{round_trip_efficiency, c_rate, 0.0});
    BuildingEnergyResult r;
    {
        py::gil_scoped_release release;
        r = simulate_building(d, c ? &*c : nullptr, p ? &*p : nullptr, b);
    }
    py::dict out;
    out["p_self_cons"] = r.p_self_cons;
    out["grid_import"] = r.grid_import;
    out["feed_in"] = r.feed_in;
    out["p_bat_act"] = r.p_bat_act;
    out["bess_soc"] = r.bess_soc;
    out["scr"] = scr(r);
    const double total = d.sum() + (c ? c->sum() : 0.0);
    out["ssr"] = total > 0.0 ? py::cast(ssr(r)) : py::none();
    return out;
}

std::vector<py::dict> build_tours_py(const std::vector<std::tuple<long, long, double, bool, bool>>& trips) {
    std::vector<Trip> ts;
    for (const auto& [dep, arr, km, from_home, to_home] : trips) {
        ts.push_back({Minutes(dep), Minutes(arr), km, from_home, to_home});
    }
    std::vector<py::dict> out;
    for (const auto& t : build_tours(ts, 0)) {
        py::dict d;
        d["departure"] = t.departure().count();
        d["arrival"] = t.arrival().count();
        d["trips"] = t.trips().size();
        d["total_km"] = t.total_distance_km();
        d["longest_leg_km"] = t.longest_leg_km();
        out.push_back(std::move(d));
    }
    return out;
}

// Report JSON texts, one per scenario; the Python side parses them.
std::vector<std::string> simulate_py(const std::string& config_path, const std::vector<std::string>& scenarios) {
    py::gil_scoped_release release;
    const auto cfg = load_config(config_path);
    auto prov = provenance_of(cfg);
    const auto inputs = load_inputs(cfg);
    const Town town = build_town(cfg, inputs);
    ScenarioRunner runner(town, scenario_config(cfg, inputs), cfg.seed);
    std::vector<ScenarioId> ids;
    if (scenarios.empty()) {
        ids = cfg.scenarios;
    } else {
        for (const auto& s : scenarios) {
            if (s == "all") {
                ids.assign(kAllScenarios.begin(), kAllScenarios.end());
            } else {
                ids.push_back(parse_scenario(s));
            }
        }
    }
    std::vector<std::string> out;
    for (auto id : ids) out.push_back(scenario_report_json(runner.run(id), prov).dump());
    return out;
}

std::string mobility_py(const std::string& config_path) {
    py::gil_scoped_release release;
    const auto cfg = load_config(config_path);
    const auto inputs = load_inputs(cfg);
    const Town town = build_town(cfg, inputs);
    return mobility_validation_json(mobility_validation(town.vehicles), town.tour_diagnostics, provenance_of(cfg))
        .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Town energy digital twin: core simulation routines";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "EvtwinError", PyExc_RuntimeError);

    m.def(
        "size_pv",
        [](double roof_area_m2, double density, double cap) {
            PvParams p;
            p.density_kwp_per_m2 = density;
            p.cap_kwp = cap;
            return size_pv(roof_area_m2, p);
        },
        py::arg("roof_area_m2"), py::arg("density_kwp_per_m2") = 0.172, py::arg("cap_kwp") = 30.0,
        "PV size in kWp for a roof area in m2.");
    m.def("size_bess", &size_bess, py::arg("annual_demand_mwh"), "Battery capacity in kWh.");
    m.def("simulate_building", &simulate_building_py, py::arg("demand"), py::arg("charging") = py::none(),
          py::arg("pv") = py::none(), py::arg("bess_kwh") = py::none(), py::arg("year") = 2021,
          py::arg("round_trip_efficiency") = 0.9, py::arg("c_rate") = 0.5,
          "Hourly energy balance of one building; series in kW.");
    m.def(
        "monthly_max",
        [](const std::vector<double>& values, int year) {
            const auto r = ts_monthly_max(series(values, year));
            return std::vector<double>(r.begin(), r.end());
        },
        py::arg("values"), py::arg("year") = 2021);
    m.def("build_tours", &build_tours_py, py::arg("trips"),
          "Home-centred tours from (departure_min, arrival_min, km, from_home, to_home) tuples.");
    m.def("simulate_json", &simulate_py, py::arg("config_path"), py::arg("scenarios") = std::vector<std::string>{});
    m.def("mobility_json", &mobility_py, py::arg("config_path"));
    m.def(
        "dump_config", [](const std::string& path) { return dump_config(load_config(path)); }, py::arg("path"));
    m.def(
        "config_hash", [](const std::string& path) { return config_hash(load_config(path)); }, py::arg("path"));
}

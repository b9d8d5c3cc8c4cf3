// Command-line driver: gen-town, synth, tours, simulate, report.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "evtwin/config.hpp"
#include "evtwin/errors.hpp"
#include "evtwin/io.hpp"
#include "evtwin/metrics.hpp"
#include "evtwin/pipeline.hpp"
#include "evtwin/report.hpp"
#include "evtwin/synthetic_town.hpp"

namespace fs = std::filesystem;
using namespace evtwin;

namespace {

struct Options {
    std::string config;
    std::string output;
    std::string scenario;
};

struct Run {
    RunConfig cfg;
    Provenance prov;
    fs::path out;
};

Run open_run(const Options& o) {
    Run r;
    r.cfg = load_config(o.config);
    if (!o.output.empty()) r.cfg.output_dir = fs::absolute(o.output);
    r.prov.config_hash = config_hash(r.cfg);
    r.prov.seed = r.cfg.seed;
    r.prov.config_yaml = dump_config(r.cfg);
    // output_dir is not part of the echoed config so that two output
    // directories of the same run hold identical bytes
    auto pos = r.prov.config_yaml.find("output_dir:");
    if (pos != std::string::npos) {
        r.prov.config_yaml.erase(pos, r.prov.config_yaml.find('\n', pos) - pos + 1);
    }
    r.out = r.cfg.output_dir;
    fs::create_directories(r.out);
    return r;
}

void note(const std::string& msg) { std::cerr << msg << '\n'; }

std::string json_text(const nlohmann::json& j) { return j.dump(1) + "\n"; }

void cmd_gen_town(const Options& o) {
    const Run r = open_run(o);
    const auto bundle = generate_synthetic_town(r.cfg.synthetic_town, r.cfg.year, r.cfg.seed);
    const auto pre = csv_preamble(r.prov);
    std::ostringstream buildings, demand, pv, labeled;
    write_buildings_csv(buildings, bundle.buildings);
    write_demand_csv(demand, bundle.buildings);
    write_pv_profiles_csv(pv, bundle.pv_profiles);
    write_labeled_csv(labeled, bundle.labeled_examples);
    write_text_file(r.out / "buildings.csv", pre + buildings.str());
    write_text_file(r.out / "demand.csv", pre + demand.str());
    write_text_file(r.out / "pv_profiles.csv", pre + pv.str());
    write_text_file(r.out / "labeled_buildings.csv", pre + labeled.str());
    nlohmann::json diaries{{"provenance", {{"config_hash", r.prov.config_hash}, {"seed", r.prov.seed}}},
                           {"diaries", diaries_to_json(bundle.diaries)}};
    write_text_file(r.out / "diaries.json", json_text(diaries));

    // Config that runs the other commands on the files just written.
    RunConfig town_cfg = r.cfg;
    town_cfg.data = DataPaths{r.out / "buildings.csv", r.out / "demand.csv", r.out / "pv_profiles.csv",
                              r.out / "diaries.json", r.out / "labeled_buildings.csv"};
    write_text_file(r.out / "town.yaml", dump_config(town_cfg));
    note("gen-town: " + std::to_string(bundle.buildings.size()) + " buildings, " +
         std::to_string(bundle.diaries.size()) + " diaries -> " + r.out.string());
}

void cmd_synth(const Options& o) {
    const Run r = open_run(o);
    const auto inputs = load_inputs(r.cfg);
    const Town town = build_town(r.cfg, inputs);
    write_text_file(r.out / "building_types.csv", building_types_csv(town, r.prov));
    write_text_file(r.out / "households.csv", households_csv(town, r.prov));
    write_text_file(r.out / "persons.csv", persons_csv(town, r.prov));
    write_text_file(r.out / "vehicles.csv", vehicles_csv(town, r.prov));
    write_text_file(r.out / "synthesis_summary.json", json_text(synthesis_summary_json(town, r.prov)));
    note("synth: " + std::to_string(town.population.households.size()) + " households, " +
         std::to_string(town.vehicles.size()) + " vehicles -> " + r.out.string());
}

void cmd_tours(const Options& o) {
    const Run r = open_run(o);
    const auto inputs = load_inputs(r.cfg);
    const Town town = build_town(r.cfg, inputs);
    const auto m = mobility_validation(town.vehicles);
    write_text_file(r.out / "vehicle_tours.csv", vehicle_tours_csv(town.vehicles, r.prov));
    write_text_file(r.out / "mobility_validation.json",
                    json_text(mobility_validation_json(m, town.tour_diagnostics, r.prov)));
    char mean[32];
    std::snprintf(mean, sizeof mean, "%.2f", m.mean_usage_days);
    note("tours: " + std::to_string(m.tour_count) + " tours on " + std::to_string(m.vehicle_count) +
         " vehicles, mean usage days " + mean + " -> " + r.out.string());
}

void cmd_simulate(const Options& o) {
    const Run r = open_run(o);
    std::vector<ScenarioId> ids = r.cfg.scenarios;
    if (o.scenario == "all") {
        ids.assign(kAllScenarios.begin(), kAllScenarios.end());
    } else if (!o.scenario.empty()) {
        ids = {parse_scenario(o.scenario)};
    }
    const auto inputs = load_inputs(r.cfg);
    const Town town = build_town(r.cfg, inputs);
    ScenarioRunner runner(town, scenario_config(r.cfg, inputs), r.cfg.seed);
    std::vector<nlohmann::json> reports;
    for (auto id : ids) {
        const auto rep = runner.run(id);
        write_scenario_outputs(rep, r.prov, r.out);
        reports.push_back(scenario_report_json(rep, r.prov));
        note("simulate " + std::string(to_string(id)) + ": " + std::to_string(rep.buildings.size()) +
             " buildings, grid import " + format_number(std::round(rep.grid_import_kwh)) + " kWh");
    }
    if (reports.size() > 1) write_text_file(r.out / "comparison.csv", comparison_csv(reports));
}

void cmd_report(const Options& o) {
    const Run r = open_run(o);
    const auto reports = load_scenario_reports(r.out);
    if (reports.empty()) throw Error("report: no report_*.json files in " + r.out.string());
    write_text_file(r.out / "comparison.csv", comparison_csv(reports));
    note("report: merged " + std::to_string(reports.size()) + " scenario reports -> " +
         (r.out / "comparison.csv").string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Town energy digital twin: EV charging, PV and battery scenarios"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", o.config, "YAML config file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", o.output, "Output directory (overrides output_dir)");
    };
    auto* gen = app.add_subcommand("gen-town", "Write a synthetic town bundle (buildings, demand, PV, diaries)");
    auto* synth = app.add_subcommand("synth", "Synthesise households, persons and vehicles");
    auto* tours = app.add_subcommand("tours", "Build vehicle tours and mobility validation metrics");
    auto* sim = app.add_subcommand("simulate", "Run scenarios and write reports");
    auto* rep = app.add_subcommand("report", "Merge scenario reports of an output directory");
    for (auto* s : {gen, synth, tours, sim, rep}) add_common(s);
    sim->add_option("-s,--scenario", o.scenario, "CS, EV, PV, PV+BS, EV+PV, EV+PV+BS or all")
        ->check(CLI::Validator(
            [](std::string& v) -> std::string {
                if (v == "all") return {};
                try {
                    parse_scenario(v);
                } catch (const ConfigError& e) {
                    return e.what();
                }
                return {};
            },
            "SCENARIO"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) cmd_gen_town(o);
        if (*synth) cmd_synth(o);
        if (*tours) cmd_tours(o);
        if (*sim) cmd_simulate(o);
        if (*rep) cmd_report(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

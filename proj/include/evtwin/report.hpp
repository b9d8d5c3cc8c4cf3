#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "evtwin/metrics.hpp"
#include "evtwin/mobility.hpp"
#include "evtwin/scenario.hpp"
#include "evtwin/town.hpp"

namespace evtwin {

// Stamped into every output file.
struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string config_yaml;  // resolved config, echoed into JSON reports
};

// "# evtwin config_hash=<hash> seed=<seed>" line opening every CSV.
std::string csv_preamble(const Provenance& p);

// File-name form of a scenario id: "EV+PV+BS" -> "EV_PV_BS".
std::string scenario_file_tag(ScenarioId id);

nlohmann::json scenario_report_json(const ScenarioReport& r, const Provenance& p);

// Per-building SCR/SSR table, monthly peak table and annual energy table.
std::string buildings_csv(const ScenarioReport& r, const Provenance& p);
std::string monthly_peaks_csv(const ScenarioReport& r, const Provenance& p);
std::string annual_energy_csv(const ScenarioReport& r, const Provenance& p);

// Writes report_<tag>.json and the three CSV tables into `dir`.
void write_scenario_outputs(const ScenarioReport& r, const Provenance& p,
                            const std::filesystem::path& dir);

// One row per scenario report (JSON as written by scenario_report_json).
// Throws Error when the reports stem from different runs.
std::string comparison_csv(std::span<const nlohmann::json> reports);

// Loads every report_*.json in `dir`, in scenario order.
std::vector<nlohmann::json> load_scenario_reports(const std::filesystem::path& dir);

nlohmann::json mobility_validation_json(const MobilityValidation& m, const TourDiagnostics& d,
                                        const Provenance& p);
std::string vehicle_tours_csv(std::span<const Vehicle> vehicles, const Provenance& p);

// Population tables written by the synth command.
std::string building_types_csv(const Town& town, const Provenance& p);
std::string households_csv(const Town& town, const Provenance& p);
std::string persons_csv(const Town& town, const Provenance& p);
std::string vehicles_csv(const Town& town, const Provenance& p);
nlohmann::json synthesis_summary_json(const Town& town, const Provenance& p);

// Writes `content` to `path` in binary mode, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace evtwin

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evtwin/decision_tree.hpp"
#include "evtwin/der.hpp"
#include "evtwin/ev.hpp"
#include "evtwin/mobility.hpp"
#include "evtwin/population.hpp"
#include "evtwin/scenario.hpp"
#include "evtwin/synthetic_town.hpp"

namespace evtwin {

// Input files of a town. Without them a synthetic town is generated.
struct DataPaths {
    std::filesystem::path buildings;
    std::filesystem::path demand;
    std::filesystem::path pv_profiles;
    std::filesystem::path diaries;
    std::optional<std::filesystem::path> labeled_buildings;

    bool operator==(const DataPaths&) const = default;
};

enum class DiaryAssignment { random, by_id };

struct RunConfig {
    std::uint64_t seed = 1;
    int year = 2021;
    std::filesystem::path output_dir = "out";
    std::optional<DataPaths> data;
    SyntheticTownSpec synthetic_town;
    TreeParams classifier;
    SynthesisConfig population = default_synthesis_config();
    DiaryAssignment diary_assignment = DiaryAssignment::random;
    ModeChoiceTable mode_choice = default_mode_choice_table();
    EvParams ev;
    // vehicle id -> battery capacity in kWh
    std::map<std::size_t, double> ev_capacity_overrides;
    double pv_density_kwp_per_m2 = 0.172;
    double pv_cap_kwp = 30.0;
    BessSettings bess;
    std::vector<ScenarioId> scenarios{kAllScenarios.begin(), kAllScenarios.end()};

    bool operator==(const RunConfig&) const = default;
};

// Reads and validates a YAML config. Relative paths are resolved against
// the directory of the file. Throws ConfigError naming the field and line.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& yaml_text,
                       const std::filesystem::path& base_dir = std::filesystem::current_path());

// Full YAML dump with every default spelled out; loading it gives back an
// equal config.
std::string dump_config(const RunConfig& cfg);
void save_config(const RunConfig& cfg, const std::filesystem::path& path);

// Checks cross-field constraints; parse_config calls it.
void validate(const RunConfig& cfg);

// Hex digest of the dump without output_dir, so that the same run
// written to two directories carries the same hash.
std::string config_hash(const RunConfig& cfg);

}  // namespace evtwin

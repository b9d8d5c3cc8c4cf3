#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "evtwin/decision_tree.hpp"
#include "evtwin/der.hpp"
#include "evtwin/domain.hpp"
#include "evtwin/mobility.hpp"

namespace evtwin {

// Readers raise ValidationError with "<source>:<line>: ..." diagnostics.
// Lines starting with '#' are comments.

// Columns id, roof_area_m2, orientation, volume_m3, meter_count, has_pv,
// has_hp and optionally has_ev, in any order. Demand is left empty.
std::vector<Building> read_buildings_csv(std::istream& in, const std::string& source = "buildings");
std::vector<Building> read_buildings_csv(const std::filesystem::path& path);

// Wide CSV: header of building ids, one row per hour of `year`. An
// optional leading "timestamp" column is ignored. Throws JoinError when a
// building has no column.
void join_demand_csv(std::vector<Building>& buildings, std::istream& in, int year,
                     const std::string& source = "demand");
void join_demand_csv(std::vector<Building>& buildings, const std::filesystem::path& path, int year);

// One row per orientation: label (S, E/W, N, flat) followed by one value
// per hour, in kW per kWp. The wide layout of the demand file, with the
// labels as header, is accepted as well.
PvProfileLibrary read_pv_profiles_csv(std::istream& in, int year, const std::string& source = "pv_profiles");
PvProfileLibrary read_pv_profiles_csv(const std::filesystem::path& path, int year);

// Columns meter_count, volume_m3, has_pv, has_hp, label.
std::vector<LabeledBuildingExample> read_labeled_csv(std::istream& in, const std::string& source = "labeled");
std::vector<LabeledBuildingExample> read_labeled_csv(const std::filesystem::path& path);

// [{"id": ..., "trips": [{"day": 0-6, "dep": "HH:MM", "arr": "HH:MM",
//   "km": ..., "from_home": bool, "to_home": bool}]}]
// An arrival clock time before the departure means the next day. The list
// may also be wrapped as {"diaries": [...]} next to other keys.
std::vector<TripDiary> parse_diaries_json(const std::string& text, const std::string& source = "diaries");
std::vector<TripDiary> read_diaries_json(const std::filesystem::path& path);
nlohmann::json diaries_to_json(std::span<const TripDiary> diaries);
std::string dump_diaries_json(std::span<const TripDiary> diaries);

void write_buildings_csv(std::ostream& out, std::span<const Building> buildings);
void write_demand_csv(std::ostream& out, std::span<const Building> buildings);
void write_pv_profiles_csv(std::ostream& out, const PvProfileLibrary& profiles);
void write_labeled_csv(std::ostream& out, std::span<const LabeledBuildingExample> examples);

// Shortest text that reads back to the same double.
std::string format_number(double v);
// "HH:MM" for a minute of the day.
std::string format_clock(Minutes minute_of_day);
Minutes parse_clock(std::string_view text);

}  // namespace evtwin

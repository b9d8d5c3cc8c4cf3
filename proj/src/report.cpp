#include "evtwin/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "evtwin/errors.hpp"
#include "evtwin/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace evtwin {

namespace {

constexpr std::array<const char*, 12> kMonths{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                              "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

json provenance_json(const Provenance& p) { return {{"config_hash", p.config_hash}, {"seed", p.seed}}; }

double max_of(const std::array<double, 12>& a) { return *std::max_element(a.begin(), a.end()); }

}  // namespace

std::string csv_preamble(const Provenance& p) {
    return "# evtwin config_hash=" + p.config_hash + " seed=" + std::to_string(p.seed) + "\n";
}

std::string scenario_file_tag(ScenarioId id) {
    std::string s(to_string(id));
    std::replace(s.begin(), s.end(), '+', '_');
    return s;
}

json scenario_report_json(const ScenarioReport& r, const Provenance& p) {
    json buildings = json::array();
    for (const auto& b : r.buildings) {
        buildings.push_back({{"id", b.building_id},
                             {"vehicles", b.vehicles},
                             {"pv_kwp", b.pv_kwp},
                             {"bess_kwh", b.bess_kwh},
                             {"demand_kwh", b.demand_kwh},
                             {"charging_kwh", b.cs_kwh},
                             {"pv_kwh", b.pv_kwh},
                             {"self_consumed_kwh", b.self_consumed_kwh},
                             {"grid_import_kwh", b.grid_import_kwh},
                             {"feed_in_kwh", b.feed_in_kwh},
                             {"driven_km", b.driven_km},
                             {"unserved_km", b.unserved_km},
                             {"scr", opt(b.scr)},
                             {"ssr", opt(b.ssr)},
                             {"monthly_peak_import_kw", b.monthly_peak_import_kw}});
    }
    const double total_demand = r.demand_kwh + r.cs_kwh;
    json j;
    j["format"] = "evtwin-scenario-report";
    j["version"] = 1;
    j["provenance"] = provenance_json(p);
    j["scenario"] = std::string(to_string(r.scenario.id));
    j["flags"] = {{"add_ev", r.scenario.add_ev}, {"add_pv", r.scenario.add_pv}, {"add_bess", r.scenario.add_bess}};
    j["year"] = r.year;
    j["building_count"] = r.buildings.size();
    j["excluded_buildings"] = r.excluded_buildings;
    j["totals"] = {{"demand_kwh", r.demand_kwh},
                   {"charging_kwh", r.cs_kwh},
                   {"pv_kwh", r.pv_kwh},
                   {"self_consumed_kwh", r.self_consumed_kwh},
                   {"grid_import_kwh", r.grid_import_kwh},
                   {"feed_in_kwh", r.feed_in_kwh},
                   {"grid_import_gwh", r.grid_import_kwh / 1e6},
                   {"self_consumed_gwh", r.self_consumed_kwh / 1e6}};
    j["town_scr"] = r.pv_kwh > 0.0 ? json(r.self_consumed_kwh / r.pv_kwh) : json(nullptr);
    j["town_ssr"] = total_demand > 0.0 ? json(r.self_consumed_kwh / total_demand) : json(nullptr);
    j["mean_scr"] = opt(r.mean_scr);
    j["mean_ssr"] = opt(r.mean_ssr);
    j["monthly_peak_sum_kw"] = r.monthly_peak_sum_kw;
    j["monthly_coincident_peak_kw"] = r.monthly_coincident_peak_kw;
    j["buildings"] = std::move(buildings);
    j["config"] = p.config_yaml;
    return j;
}

std::string buildings_csv(const ScenarioReport& r, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p)
        << "building_id,vehicles,pv_kwp,bess_kwh,demand_kwh,charging_kwh,pv_kwh,self_consumed_kwh,"
           "grid_import_kwh,feed_in_kwh,driven_km,unserved_km,scr,ssr\n";
    for (const auto& b : r.buildings) {
        out << b.building_id << ',' << b.vehicles << ',' << format_number(b.pv_kwp) << ','
            << format_number(b.bess_kwh) << ',' << format_number(b.demand_kwh) << ','
            << format_number(b.cs_kwh) << ',' << format_number(b.pv_kwh) << ','
            << format_number(b.self_consumed_kwh) << ',' << format_number(b.grid_import_kwh) << ','
            << format_number(b.feed_in_kwh) << ',' << format_number(b.driven_km) << ','
            << format_number(b.unserved_km) << ',' << cell(b.scr) << ',' << cell(b.ssr) << '\n';
    }
    return out.str();
}

std::string monthly_peaks_csv(const ScenarioReport& r, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p) << "month,peak_sum_kw,coincident_peak_kw\n";
    for (std::size_t m = 0; m < 12; ++m) {
        out << kMonths[m] << ',' << format_number(r.monthly_peak_sum_kw[m]) << ','
            << format_number(r.monthly_coincident_peak_kw[m]) << '\n';
    }
    return out.str();
}

std::string annual_energy_csv(const ScenarioReport& r, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p) << "quantity,kwh\n"
        << "building_demand," << format_number(r.demand_kwh) << '\n'
        << "charging," << format_number(r.cs_kwh) << '\n'
        << "pv_generation," << format_number(r.pv_kwh) << '\n'
        << "self_consumed," << format_number(r.self_consumed_kwh) << '\n'
        << "grid_import," << format_number(r.grid_import_kwh) << '\n'
        << "feed_in," << format_number(r.feed_in_kwh) << '\n';
    return out.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed: " + path.string());
}

void write_scenario_outputs(const ScenarioReport& r, const Provenance& p, const fs::path& dir) {
    const auto tag = scenario_file_tag(r.scenario.id);
    write_text_file(dir / ("report_" + tag + ".json"), scenario_report_json(r, p).dump(1) + "\n");
    write_text_file(dir / ("buildings_" + tag + ".csv"), buildings_csv(r, p));
    write_text_file(dir / ("monthly_peaks_" + tag + ".csv"), monthly_peaks_csv(r, p));
    write_text_file(dir / ("annual_energy_" + tag + ".csv"), annual_energy_csv(r, p));
}

std::string comparison_csv(std::span<const json> reports) {
    if (reports.empty()) throw Error("no scenario reports to compare");
    Provenance p;
    p.config_hash = reports.front().at("provenance").at("config_hash").get<std::string>();
    p.seed = reports.front().at("provenance").at("seed").get<std::uint64_t>();
    for (const auto& r : reports) {
        if (r.at("provenance").at("config_hash") != p.config_hash || r.at("provenance").at("seed") != p.seed) {
            throw Error("scenario reports stem from different runs (config hash or seed differ)");
        }
    }
    std::ostringstream out;
    out << csv_preamble(p)
        << "scenario,buildings,demand_kwh,charging_kwh,pv_kwh,self_consumed_kwh,grid_import_kwh,feed_in_kwh,"
           "grid_import_gwh,town_scr,town_ssr,mean_scr,mean_ssr,max_monthly_peak_sum_kw,"
           "max_monthly_coincident_peak_kw\n";
    for (const auto& r : reports) {
        const auto& t = r.at("totals");
        const auto peaks = r.at("monthly_peak_sum_kw").get<std::array<double, 12>>();
        const auto coincident = r.at("monthly_coincident_peak_kw").get<std::array<double, 12>>();
        out << r.at("scenario").get<std::string>() << ',' << r.at("building_count").get<std::size_t>() << ','
            << cell(t.at("demand_kwh")) << ',' << cell(t.at("charging_kwh")) << ',' << cell(t.at("pv_kwh"))
            << ',' << cell(t.at("self_consumed_kwh")) << ',' << cell(t.at("grid_import_kwh")) << ','
            << cell(t.at("feed_in_kwh")) << ',' << cell(t.at("grid_import_gwh")) << ','
            << cell(r.at("town_scr")) << ',' << cell(r.at("town_ssr")) << ',' << cell(r.at("mean_scr")) << ','
            << cell(r.at("mean_ssr")) << ',' << format_number(max_of(peaks)) << ','
            << format_number(max_of(coincident)) << '\n';
    }
    return out.str();
}

std::vector<json> load_scenario_reports(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error("no such directory: " + dir.string());
    std::map<ScenarioId, json> found;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (!entry.is_regular_file() || !name.starts_with("report_") || !name.ends_with(".json")) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ValidationError(entry.path().string() + ": " + e.what());
        }
        if (j.value("format", "") != "evtwin-scenario-report") continue;
        found[parse_scenario(j.at("scenario").get<std::string>())] = std::move(j);
    }
    std::vector<json> out;
    for (auto& [id, j] : found) out.push_back(std::move(j));
    return out;
}

json mobility_validation_json(const MobilityValidation& m, const TourDiagnostics& d, const Provenance& p) {
    static constexpr std::array<const char*, 7> kDays{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
    json parked = json::object();
    for (std::size_t w = 0; w < 7; ++w) parked[kDays[w]] = m.parked_at_home_share[w];
    json j;
    j["format"] = "evtwin-mobility-validation";
    j["version"] = 1;
    j["provenance"] = provenance_json(p);
    j["vehicle_count"] = m.vehicle_count;
    j["tour_count"] = m.tour_count;
    j["parked_at_home_share"] = std::move(parked);
    j["departure_histogram"] = m.departure_histogram;
    j["arrival_histogram"] = m.arrival_histogram;
    j["usage_days_distribution"] = m.usage_days_distribution;
    j["mean_usage_days"] = m.mean_usage_days;
    j["tour_diagnostics"] = {{"malformed_trips", d.malformed_trips},
                             {"orphan_trips", d.orphan_trips},
                             {"unfinished_tours", d.unfinished_tours},
                             {"wrapped_tours", d.wrapped_tours},
                             {"overlapping_tours", d.overlapping_tours}};
    return j;
}

std::string vehicle_tours_csv(std::span<const Vehicle> vehicles, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p)
        << "vehicle_id,building_id,tour,driver_id,departure_min,arrival_min,weekday,departure,arrival,"
           "trips,total_km,longest_leg_km\n";
    for (const auto& v : vehicles) {
        for (std::size_t k = 0; k < v.tours.size(); ++k) {
            const auto& t = v.tours[k];
            out << v.id << ',' << v.home_building_id << ',' << k << ',' << t.owner_id() << ','
                << t.departure().count() << ',' << t.arrival().count() << ','
                << t.departure() / kMinutesPerDay << ',' << format_clock(t.departure() % kMinutesPerDay) << ','
                << format_clock(t.arrival() % kMinutesPerDay) << ',' << t.trips().size() << ','
                << format_number(t.total_distance_km()) << ',' << format_number(t.longest_leg_km()) << '\n';
        }
    }
    return out.str();
}

std::string building_types_csv(const Town& town, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p) << "building_id,type,flats\n";
    for (const auto& f : town.flats) out << f.building_id << ',' << to_string(f.type) << ',' << f.flats << '\n';
    return out.str();
}

std::string households_csv(const Town& town, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p) << "household_id,building_id,family_type,adults,children,vehicles\n";
    for (const auto& h : town.population.households) {
        out << h.id << ',' << h.building_id << ',' << to_string(h.family_type) << ',' << h.adults << ','
            << h.children << ',' << h.vehicle_ids.size() << '\n';
    }
    return out.str();
}

std::string persons_csv(const Town& town, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p) << "person_id,household_id,is_adult,trips\n";
    for (const auto& person : town.population.persons) {
        out << person.id << ',' << person.household_id << ',' << (person.is_adult ? 1 : 0) << ','
            << person.trips.size() << '\n';
    }
    return out.str();
}

std::string vehicles_csv(const Town& town, const Provenance& p) {
    std::ostringstream out;
    out << csv_preamble(p) << "vehicle_id,household_id,building_id,primary_driver_id,secondary_driver_ids\n";
    for (const auto& v : town.vehicles) {
        out << v.id << ',' << v.household_id << ',' << v.home_building_id << ',' << v.primary_driver_id << ',';
        for (std::size_t i = 0; i < v.secondary_driver_ids.size(); ++i) {
            out << (i ? ";" : "") << v.secondary_driver_ids[i];
        }
        out << '\n';
    }
    return out.str();
}

json synthesis_summary_json(const Town& town, const Provenance& p) {
    std::array<std::size_t, kBuildingTypeCount> type_counts{};
    for (auto t : town.building_types) ++type_counts[static_cast<std::size_t>(t)];
    std::array<std::size_t, kFamilyTypeCount> family_counts{};
    long flats = 0;
    for (const auto& f : town.flats) flats += f.flats;
    for (const auto& h : town.population.households) ++family_counts[static_cast<std::size_t>(h.family_type)];
    std::size_t adults = 0;
    for (const auto& person : town.population.persons) adults += person.is_adult ? 1 : 0;

    json types = json::object();
    for (std::size_t i = 0; i < kBuildingTypeCount; ++i) {
        types[std::string(to_string(static_cast<BuildingType>(i)))] = type_counts[i];
    }
    json families = json::object();
    for (std::size_t i = 0; i < kFamilyTypeCount; ++i) {
        families[std::string(to_string(static_cast<FamilyType>(i)))] = family_counts[i];
    }
    json j;
    j["format"] = "evtwin-synthesis-summary";
    j["version"] = 1;
    j["provenance"] = provenance_json(p);
    j["buildings"] = town.buildings.size();
    j["building_types"] = std::move(types);
    j["classifier"] = town.classifier_training_accuracy >= 0.0
                          ? json{{"method", "decision-tree"}, {"training_accuracy", town.classifier_training_accuracy}}
                          : json{{"method", "meter-count-rule"}};
    j["flats"] = flats;
    j["households"] = town.population.households.size();
    j["family_types"] = std::move(families);
    j["persons"] = town.population.persons.size();
    j["adults"] = adults;
    j["vehicles"] = town.vehicles.size();
    return j;
}

}  // namespace evtwin

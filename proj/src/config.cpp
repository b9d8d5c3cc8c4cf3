#include "evtwin/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "evtwin/errors.hpp"
#include "evtwin/random.hpp"

namespace fs = std::filesystem;

namespace evtwin {

namespace {

std::string where(const YAML::Node& n) {
    const auto m = n.Mark();
    if (m.is_null()) return "";
    return " (line " + std::to_string(m.line + 1) + ")";
}

[[noreturn]] void fail(const std::string& field, const YAML::Node& n, const std::string& msg) {
    throw ConfigError(field + ": " + msg + where(n));
}

template <class T>
T scalar(const YAML::Node& n, const std::string& field, const char* expected) {
    if (!n.IsScalar()) fail(field, n, std::string("expected ") + expected);
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        fail(field, n, std::string("expected ") + expected + ", got '" + n.Scalar() + "'");
    }
}

// A mapping whose keys are consumed one by one; finish() rejects the rest.
class Section {
public:
    Section(const YAML::Node& node, std::string path)
        : node_(node ? node : YAML::Node(YAML::NodeType::Undefined)), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) fail(label(), node_, "expected a mapping");
    }

    bool has(const std::string& key) const {
        const YAML::Node& n = node_;
        return n.IsMap() && n[key];
    }

    YAML::Node take(const std::string& key) {
        used_.insert(key);
        if (!node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node& n = node_;
        return n[key];
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void get(const std::string& key, double& out) {
        if (auto n = take(key)) {
            out = scalar<double>(n, field(key), "a number");
            if (!std::isfinite(out)) fail(field(key), n, "must be finite");
        }
    }
    void get(const std::string& key, int& out) {
        if (auto n = take(key)) out = scalar<int>(n, field(key), "an integer");
    }
    void get(const std::string& key, long& out) {
        if (auto n = take(key)) out = scalar<long>(n, field(key), "an integer");
    }
    void get(const std::string& key, bool& out) {
        if (auto n = take(key)) out = scalar<bool>(n, field(key), "true or false");
    }
    void get(const std::string& key, std::string& out) {
        if (auto n = take(key)) out = scalar<std::string>(n, field(key), "a string");
    }
    void get(const std::string& key, std::vector<double>& out) {
        auto n = take(key);
        if (!n) return;
        if (!n.IsSequence()) fail(field(key), n, "expected a list of numbers");
        out.clear();
        for (std::size_t i = 0; i < n.size(); ++i) {
            out.push_back(scalar<double>(n[i], field(key) + "[" + std::to_string(i) + "]", "a number"));
        }
    }

    Section sub(const std::string& key) { return Section(take(key), field(key)); }

    // Fills `out[i]` from the entry labelled `labels[i]`; entries not
    // listed become zero when the mapping is present.
    template <std::size_t N, class Labels>
    void get_mix(const std::string& key, std::array<double, N>& out, const Labels& labels) {
        auto n = take(key);
        if (!n) return;
        Section s(n, field(key));
        std::array<double, N> mix{};
        for (std::size_t i = 0; i < N; ++i) s.get(std::string(labels[i]), mix[i]);
        s.finish();
        out = mix;
    }

    void finish() const {
        if (!node_.IsMap()) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.Scalar();
            if (!used_.count(key)) fail(field(key), kv.first, "unknown field");
        }
    }

    const YAML::Node& node() const { return node_; }
    std::string label() const { return path_.empty() ? "<root>" : path_; }

private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

template <class E, std::size_t N>
std::array<std::string_view, N> labels_of() {
    std::array<std::string_view, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = to_string(static_cast<E>(i));
    return out;
}

fs::path resolve_existing(const YAML::Node& n, const std::string& field, const fs::path& base) {
    fs::path p = scalar<std::string>(n, field, "a path");
    if (p.is_relative()) p = base / p;
    if (!fs::exists(p)) fail(field, n, "file not found: " + p.string());
    return fs::weakly_canonical(p);
}

void parse_synthetic_town(Section s, SyntheticTownSpec& t) {
    s.get("buildings", t.building_count);
    s.get_mix("type_mix", t.type_mix, labels_of<BuildingType, kBuildingTypeCount>());
    if (auto n = s.take("tower_flats")) {
        if (!n.IsSequence() || n.size() != 2) fail(s.field("tower_flats"), n, "expected [min, max]");
        t.tower_flats_min = scalar<int>(n[0], s.field("tower_flats[0]"), "an integer");
        t.tower_flats_max = scalar<int>(n[1], s.field("tower_flats[1]"), "an integer");
    }
    {
        auto r = s.sub("roof_area_m2");
        r.get("mean", t.roof_area_mean_m2);
        r.get("sd", t.roof_area_sd_m2);
        r.finish();
    }
    s.get_mix("orientation_mix", t.orientation_mix, labels_of<Orientation, 4>());
    {
        auto a = s.sub("annual_kwh_per_flat");
        a.get("mean", t.annual_kwh_per_flat_mean);
        a.get("sd", t.annual_kwh_per_flat_sd);
        a.get("min", t.annual_kwh_per_flat_min);
        a.finish();
    }
    s.get_mix("archetype_mix", t.archetype_mix, labels_of<DemandArchetype, kDemandArchetypeCount>());
    s.get("heat_pump_share", t.heat_pump_share);
    s.get("existing_pv_share", t.existing_pv_share);
    s.get("existing_ev_share", t.existing_ev_share);
    s.get_mix("commute_mix", t.commute_mix, labels_of<CommutePattern, kCommutePatternCount>());
    s.get("diaries", t.diary_count);
    s.get("labeled_share", t.labeled_share);
    s.get("latitude_deg", t.latitude_deg);
    s.get("pv_specific_yield_kwh_per_kwp", t.pv_specific_yield_kwh_per_kwp);
    s.finish();
}

void parse_population(Section s, RunConfig& cfg) {
    auto& p = cfg.population;
    s.get_mix("family_type_frequencies", p.family_type_frequencies,
              labels_of<FamilyType, kFamilyTypeCount>());
    if (s.has("household_size")) {
        auto hs = s.sub("household_size");
        for (std::size_t i = 0; i < kFamilyTypeCount; ++i) {
            const std::string key(to_string(static_cast<FamilyType>(i)));
            if (!hs.has(key)) continue;
            auto d = hs.sub(key);
            std::vector<double> sizes;
            d.get("sizes", sizes);
            d.get("probabilities", p.members_by_family_type[i].probabilities);
            d.finish();
            auto& out = p.members_by_family_type[i].sizes;
            out.clear();
            for (double x : sizes) {
                if (x != std::floor(x) || x < 1) {
                    fail(d.field("sizes"), d.node(), "sizes must be positive integers");
                }
                out.push_back(static_cast<int>(x));
            }
        }
        hs.finish();
    }
    s.get("adult_child_share", p.adult_child_share);
    if (auto n = s.take("vehicles_per_adult_count")) {
        const auto field = s.field("vehicles_per_adult_count");
        if (!n.IsMap()) fail(field, n, "expected a mapping from adult count to probabilities");
        p.vehicles_per_adult_count.clear();
        for (const auto& kv : n) {
            const int adults = scalar<int>(kv.first, field, "an integer adult count");
            std::vector<double> probs;
            if (!kv.second.IsSequence()) fail(field + "." + kv.first.Scalar(), kv.second, "expected a list");
            for (std::size_t i = 0; i < kv.second.size(); ++i) {
                probs.push_back(scalar<double>(kv.second[i], field + "." + kv.first.Scalar(), "a number"));
            }
            p.vehicles_per_adult_count[adults] = std::move(probs);
        }
    }
    if (auto n = s.take("total_vehicles")) {
        if (n.IsNull()) {
            p.total_vehicles_target.reset();
        } else {
            p.total_vehicles_target = scalar<long>(n, s.field("total_vehicles"), "an integer or null");
        }
    }
    s.get("census_flats", p.census_flat_total);
    s.get("residential_meter_fraction", p.residential_meter_fraction);
    if (auto n = s.take("diary_assignment")) {
        const auto v = scalar<std::string>(n, s.field("diary_assignment"), "random or by_id");
        if (v == "random") {
            cfg.diary_assignment = DiaryAssignment::random;
        } else if (v == "by_id") {
            cfg.diary_assignment = DiaryAssignment::by_id;
        } else {
            fail(s.field("diary_assignment"), n, "expected random or by_id, got '" + v + "'");
        }
    }
    s.finish();
}

void parse_mode_choice(const YAML::Node& n, ModeChoiceTable& t) {
    if (n.IsScalar()) {
        if (n.Scalar() != "default") fail("mode_choice", n, "expected 'default' or a table");
        t = default_mode_choice_table();
        return;
    }
    Section s(n, "mode_choice");
    t = ModeChoiceTable{};
    s.get("bin_edges_km", t.bin_edges_km);
    s.get("p_car_exclusive", t.p_car_exclusive);
    s.get("p_car_shared", t.p_car_shared);
    s.finish();
    try {
        validate(t);
    } catch (const ConfigError& e) {
        fail("mode_choice", n, e.what());
    }
}

void rethrow_with_line(const std::string& field, const YAML::Node& n, const auto& check) {
    if (!n) {
        check();
        return;
    }
    try {
        check();
    } catch (const Error& e) {
        fail(field, n, e.what());
    }
}

// yaml-cpp prints doubles with a fixed precision; shortest round-trip
// text keeps the dump exact and readable.
std::string num(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, r.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

void emit_list(YAML::Emitter& e, const std::vector<double>& v) {
    e << YAML::Flow << YAML::BeginSeq;
    for (double x : v) e << num(x);
    e << YAML::EndSeq;
}

template <class E, std::size_t N>
void emit_mix(YAML::Emitter& e, const char* key, const std::array<double, N>& mix) {
    e << YAML::Key << key << YAML::Value << YAML::BeginMap;
    for (std::size_t i = 0; i < N; ++i) {
        e << YAML::Key << std::string(to_string(static_cast<E>(i))) << YAML::Value << num(mix[i]);
    }
    e << YAML::EndMap;
}

std::string dump(const RunConfig& c, bool with_output_dir) {
    YAML::Emitter e;
    e << YAML::BeginMap;
    e << YAML::Key << "seed" << YAML::Value << c.seed;
    e << YAML::Key << "year" << YAML::Value << c.year;
    if (with_output_dir) e << YAML::Key << "output_dir" << YAML::Value << c.output_dir.string();
    if (c.data) {
        e << YAML::Key << "data" << YAML::Value << YAML::BeginMap;
        e << YAML::Key << "buildings" << YAML::Value << c.data->buildings.string();
        e << YAML::Key << "demand" << YAML::Value << c.data->demand.string();
        e << YAML::Key << "pv_profiles" << YAML::Value << c.data->pv_profiles.string();
        e << YAML::Key << "diaries" << YAML::Value << c.data->diaries.string();
        if (c.data->labeled_buildings) {
            e << YAML::Key << "labeled_buildings" << YAML::Value << c.data->labeled_buildings->string();
        }
        e << YAML::EndMap;
    }

    const auto& t = c.synthetic_town;
    e << YAML::Key << "synthetic_town" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "buildings" << YAML::Value << t.building_count;
    emit_mix<BuildingType>(e, "type_mix", t.type_mix);
    e << YAML::Key << "tower_flats" << YAML::Value << YAML::Flow << YAML::BeginSeq << t.tower_flats_min
      << t.tower_flats_max << YAML::EndSeq;
    e << YAML::Key << "roof_area_m2" << YAML::Value << YAML::BeginMap << YAML::Key << "mean" << YAML::Value
      << num(t.roof_area_mean_m2) << YAML::Key << "sd" << YAML::Value << num(t.roof_area_sd_m2) << YAML::EndMap;
    emit_mix<Orientation>(e, "orientation_mix", t.orientation_mix);
    e << YAML::Key << "annual_kwh_per_flat" << YAML::Value << YAML::BeginMap << YAML::Key << "mean"
      << YAML::Value << num(t.annual_kwh_per_flat_mean) << YAML::Key << "sd" << YAML::Value
      << num(t.annual_kwh_per_flat_sd) << YAML::Key << "min" << YAML::Value << num(t.annual_kwh_per_flat_min)
      << YAML::EndMap;
    emit_mix<DemandArchetype>(e, "archetype_mix", t.archetype_mix);
    e << YAML::Key << "heat_pump_share" << YAML::Value << num(t.heat_pump_share);
    e << YAML::Key << "existing_pv_share" << YAML::Value << num(t.existing_pv_share);
    e << YAML::Key << "existing_ev_share" << YAML::Value << num(t.existing_ev_share);
    emit_mix<CommutePattern>(e, "commute_mix", t.commute_mix);
    e << YAML::Key << "diaries" << YAML::Value << t.diary_count;
    e << YAML::Key << "labeled_share" << YAML::Value << num(t.labeled_share);
    e << YAML::Key << "latitude_deg" << YAML::Value << num(t.latitude_deg);
    e << YAML::Key << "pv_specific_yield_kwh_per_kwp" << YAML::Value << num(t.pv_specific_yield_kwh_per_kwp);
    e << YAML::EndMap;

    e << YAML::Key << "classifier" << YAML::Value << YAML::BeginMap << YAML::Key << "max_depth" << YAML::Value
      << c.classifier.max_depth << YAML::Key << "min_leaf" << YAML::Value << c.classifier.min_leaf
      << YAML::EndMap;

    const auto& p = c.population;
    e << YAML::Key << "population" << YAML::Value << YAML::BeginMap;
    emit_mix<FamilyType>(e, "family_type_frequencies", p.family_type_frequencies);
    e << YAML::Key << "household_size" << YAML::Value << YAML::BeginMap;
    for (std::size_t i = 0; i < kFamilyTypeCount; ++i) {
        const auto& d = p.members_by_family_type[i];
        e << YAML::Key << std::string(to_string(static_cast<FamilyType>(i))) << YAML::Value << YAML::BeginMap;
        e << YAML::Key << "sizes" << YAML::Value << YAML::Flow << d.sizes;
        e << YAML::Key << "probabilities" << YAML::Value;
        emit_list(e, d.probabilities);
        e << YAML::EndMap;
    }
    e << YAML::EndMap;
    e << YAML::Key << "adult_child_share" << YAML::Value << num(p.adult_child_share);
    e << YAML::Key << "vehicles_per_adult_count" << YAML::Value << YAML::BeginMap;
    for (const auto& [adults, probs] : p.vehicles_per_adult_count) {
        e << YAML::Key << adults << YAML::Value;
        emit_list(e, probs);
    }
    e << YAML::EndMap;
    e << YAML::Key << "total_vehicles" << YAML::Value;
    if (p.total_vehicles_target) {
        e << *p.total_vehicles_target;
    } else {
        e << YAML::Null;
    }
    e << YAML::Key << "census_flats" << YAML::Value << p.census_flat_total;
    e << YAML::Key << "residential_meter_fraction" << YAML::Value << num(p.residential_meter_fraction);
    e << YAML::Key << "diary_assignment" << YAML::Value
      << (c.diary_assignment == DiaryAssignment::by_id ? "by_id" : "random");
    e << YAML::EndMap;

    e << YAML::Key << "mode_choice" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "bin_edges_km" << YAML::Value;
    emit_list(e, c.mode_choice.bin_edges_km);
    e << YAML::Key << "p_car_exclusive" << YAML::Value;
    emit_list(e, c.mode_choice.p_car_exclusive);
    e << YAML::Key << "p_car_shared" << YAML::Value;
    emit_list(e, c.mode_choice.p_car_shared);
    e << YAML::EndMap;

    e << YAML::Key << "ev" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "battery_capacity_kwh" << YAML::Value << num(c.ev.battery_capacity_kwh);
    e << YAML::Key << "consumption_kwh_per_km" << YAML::Value << num(c.ev.consumption_kwh_per_km);
    e << YAML::Key << "station_power_kw" << YAML::Value << num(c.ev.station_power_kw);
    e << YAML::Key << "connect_threshold_soc" << YAML::Value << num(c.ev.connect_threshold_soc);
    e << YAML::Key << "plug_interval_probabilities" << YAML::Value;
    emit_list(e, c.ev.plug_interval_probabilities);
    e << YAML::Key << "capacity_overrides" << YAML::Value << YAML::BeginMap;
    for (const auto& [id, kwh] : c.ev_capacity_overrides) e << YAML::Key << id << YAML::Value << num(kwh);
    e << YAML::EndMap;
    e << YAML::EndMap;

    e << YAML::Key << "pv" << YAML::Value << YAML::BeginMap << YAML::Key << "density_kwp_per_m2" << YAML::Value
      << num(c.pv_density_kwp_per_m2) << YAML::Key << "cap_kwp" << YAML::Value << num(c.pv_cap_kwp)
      << YAML::EndMap;
    e << YAML::Key << "bess" << YAML::Value << YAML::BeginMap << YAML::Key << "round_trip_efficiency"
      << YAML::Value << num(c.bess.round_trip_efficiency) << YAML::Key << "c_rate" << YAML::Value
      << num(c.bess.c_rate) << YAML::Key << "initial_soc_fraction" << YAML::Value
      << num(c.bess.initial_soc_fraction) << YAML::EndMap;

    e << YAML::Key << "scenarios" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto id : c.scenarios) e << std::string(to_string(id));
    e << YAML::EndSeq;
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

}  // namespace

RunConfig parse_config(const std::string& yaml_text, const fs::path& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: malformed YAML: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("config: top level must be a mapping" + where(root));

    RunConfig cfg;
    Section s(root, "");
    if (auto n = s.take("seed")) {
        if (n.IsScalar() && !n.Scalar().empty() && n.Scalar()[0] == '-') {
            fail("seed", n, "must be an unsigned 64-bit integer");
        }
        cfg.seed = scalar<std::uint64_t>(n, "seed", "an unsigned 64-bit integer");
    }
    s.get("year", cfg.year);
    if (auto n = s.take("output_dir")) {
        fs::path out = scalar<std::string>(n, "output_dir", "a path");
        cfg.output_dir = out.is_relative() ? fs::weakly_canonical(base_dir / out) : out;
    } else {
        cfg.output_dir = fs::weakly_canonical(base_dir / cfg.output_dir);
    }
    if (auto n = s.take("data")) {
        Section d(n, "data");
        DataPaths paths;
        for (auto [key, out] : {std::pair{"buildings", &paths.buildings}, {"demand", &paths.demand},
                                {"pv_profiles", &paths.pv_profiles}, {"diaries", &paths.diaries}}) {
            auto v = d.take(key);
            if (!v) fail(d.field(key), n, "required when data is given");
            *out = resolve_existing(v, d.field(key), base_dir);
        }
        if (auto v = d.take("labeled_buildings")) {
            paths.labeled_buildings = resolve_existing(v, d.field("labeled_buildings"), base_dir);
        }
        d.finish();
        cfg.data = std::move(paths);
    }
    parse_synthetic_town(s.sub("synthetic_town"), cfg.synthetic_town);
    {
        auto c = s.sub("classifier");
        c.get("max_depth", cfg.classifier.max_depth);
        c.get("min_leaf", cfg.classifier.min_leaf);
        c.finish();
    }
    parse_population(s.sub("population"), cfg);
    {
        auto n = s.take("mode_choice");
        if (!n || n.IsNull()) {
            throw ConfigError("mode_choice: missing; give a table or 'mode_choice: default'");
        }
        parse_mode_choice(n, cfg.mode_choice);
    }
    {
        auto e = s.sub("ev");
        e.get("battery_capacity_kwh", cfg.ev.battery_capacity_kwh);
        e.get("consumption_kwh_per_km", cfg.ev.consumption_kwh_per_km);
        e.get("station_power_kw", cfg.ev.station_power_kw);
        e.get("connect_threshold_soc", cfg.ev.connect_threshold_soc);
        e.get("plug_interval_probabilities", cfg.ev.plug_interval_probabilities);
        if (auto n = e.take("capacity_overrides")) {
            const auto field = e.field("capacity_overrides");
            if (!n.IsMap()) fail(field, n, "expected a mapping from vehicle id to kWh");
            for (const auto& kv : n) {
                const auto id = scalar<std::size_t>(kv.first, field, "a vehicle id");
                const double kwh = scalar<double>(kv.second, field + "." + kv.first.Scalar(), "a number");
                if (!(kwh > 0.0) || !std::isfinite(kwh)) fail(field + "." + kv.first.Scalar(), kv.second, "must be > 0");
                cfg.ev_capacity_overrides[id] = kwh;
            }
        }
        e.finish();
        rethrow_with_line("ev", e.node(), [&] { validate(cfg.ev); });
    }
    {
        auto p = s.sub("pv");
        p.get("density_kwp_per_m2", cfg.pv_density_kwp_per_m2);
        p.get("cap_kwp", cfg.pv_cap_kwp);
        p.finish();
    }
    {
        auto b = s.sub("bess");
        b.get("round_trip_efficiency", cfg.bess.round_trip_efficiency);
        b.get("c_rate", cfg.bess.c_rate);
        b.get("initial_soc_fraction", cfg.bess.initial_soc_fraction);
        b.finish();
    }
    if (auto n = s.take("scenarios")) {
        if (n.IsScalar() && n.Scalar() == "all") {
            cfg.scenarios.assign(kAllScenarios.begin(), kAllScenarios.end());
        } else {
            if (!n.IsSequence()) fail("scenarios", n, "expected a list of scenario ids or 'all'");
            cfg.scenarios.clear();
            for (std::size_t i = 0; i < n.size(); ++i) {
                const auto label = scalar<std::string>(n[i], "scenarios", "a scenario id");
                rethrow_with_line("scenarios", n[i], [&] { cfg.scenarios.push_back(parse_scenario(label)); });
            }
        }
    }
    s.finish();

    const YAML::Node& croot = root;
    rethrow_with_line("synthetic_town", croot["synthetic_town"], [&] { validate(cfg.synthetic_town); });
    rethrow_with_line("population", croot["population"], [&] { validate(cfg.population); });
    validate(cfg);
    return cfg;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const auto base = path.has_parent_path() ? path.parent_path() : fs::current_path();
    return parse_config(buf.str(), fs::absolute(base));
}

void validate(const RunConfig& c) {
    if (c.year < 1971 || c.year > 2200) throw ConfigError("year: out of range");
    if (hours_in_year(c.year) != 8760) {
        throw ConfigError("year: " + std::to_string(c.year) + " is a leap year; use a non-leap reference year");
    }
    if (c.classifier.max_depth < 0 || c.classifier.min_leaf < 1) {
        throw ConfigError("classifier: need max_depth >= 0 and min_leaf >= 1");
    }
    validate(c.synthetic_town);
    validate(c.population);
    validate(c.mode_choice);
    validate(c.ev);
    if (!(c.pv_density_kwp_per_m2 >= 0.0) || !(c.pv_cap_kwp >= 0.0)) {
        throw ConfigError("pv: density and cap must be >= 0");
    }
    if (!(c.bess.round_trip_efficiency > 0.0 && c.bess.round_trip_efficiency <= 1.0)) {
        throw ConfigError("bess.round_trip_efficiency: must lie in (0, 1]");
    }
    if (!(c.bess.c_rate > 0.0)) throw ConfigError("bess.c_rate: must be > 0");
    if (!(c.bess.initial_soc_fraction >= 0.0 && c.bess.initial_soc_fraction <= 1.0)) {
        throw ConfigError("bess.initial_soc_fraction: must lie in [0, 1]");
    }
    if (c.scenarios.empty()) throw ConfigError("scenarios: at least one scenario is required");
}

std::string dump_config(const RunConfig& cfg) { return dump(cfg, true); }

void save_config(const RunConfig& cfg, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("config: cannot write " + path.string());
    out << dump_config(cfg);
}

std::string config_hash(const RunConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(dump(cfg, false))));
    return buf;
}

}  // namespace evtwin

#include "evtwin/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "evtwin/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace evtwin {

namespace {

[[noreturn]] void bad(const std::string& source, std::size_t line, const std::string& msg) {
    throw ValidationError(source + ":" + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Line reader that skips comments and blank lines and counts line numbers.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    bool next(std::vector<std::string_view>& cells) {
        while (std::getline(in_, line_)) {
            ++line_no_;
            const auto t = trim(line_);
            if (t.empty() || t.front() == '#') continue;
            cells.clear();
            std::string_view rest = t;
            while (true) {
                const auto comma = rest.find(',');
                cells.push_back(trim(rest.substr(0, comma)));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
            return true;
        }
        return false;
    }

    std::size_t line() const { return line_no_; }
    const std::string& source() const { return source_; }
    [[noreturn]] void fail(const std::string& msg) const { bad(source_, line_no_, msg); }

    double number(std::string_view cell, const std::string& column) const {
        double v = 0.0;
        const auto* end = cell.data() + cell.size();
        auto r = std::from_chars(cell.data(), end, v);
        if (cell.empty() || r.ec != std::errc() || r.ptr != end) {
            fail("column " + column + ": '" + std::string(cell) + "' is not a number");
        }
        return v;
    }

    int integer(std::string_view cell, const std::string& column) const {
        int v = 0;
        const auto* end = cell.data() + cell.size();
        auto r = std::from_chars(cell.data(), end, v);
        if (cell.empty() || r.ec != std::errc() || r.ptr != end) {
            fail("column " + column + ": '" + std::string(cell) + "' is not an integer");
        }
        return v;
    }

    bool boolean(std::string_view cell, const std::string& column) const {
        if (cell == "1" || cell == "true" || cell == "True" || cell == "TRUE") return true;
        if (cell == "0" || cell == "false" || cell == "False" || cell == "FALSE") return false;
        fail("column " + column + ": '" + std::string(cell) + "' is not a boolean");
    }

private:
    std::istream& in_;
    std::string source_;
    std::string line_;
    std::size_t line_no_ = 0;
};

// Maps required and optional column names to their positions.
class Header {
public:
    Header(const CsvReader& r, const std::vector<std::string_view>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!pos_.emplace(std::string(cells[i]), i).second) {
                r.fail("duplicate column '" + std::string(cells[i]) + "'");
            }
        }
        width_ = cells.size();
    }
    std::size_t require(const CsvReader& r, const std::string& name) const {
        auto it = pos_.find(name);
        if (it == pos_.end()) r.fail("missing column '" + name + "'");
        return it->second;
    }
    std::optional<std::size_t> optional(const std::string& name) const {
        auto it = pos_.find(name);
        if (it == pos_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t width() const { return width_; }

private:
    std::map<std::string, std::size_t> pos_;
    std::size_t width_ = 0;
};

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path.string());
    return in;
}

// Reads a wide hourly table: returns the header labels and one column of
// values per label.
struct WideTable {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;
};

WideTable read_wide(std::istream& in, std::size_t rows, const std::string& source) {
    CsvReader r(in, source);
    std::vector<std::string_view> cells;
    if (!r.next(cells)) bad(source, r.line(), "empty file");
    WideTable t;
    std::size_t skip = 0;
    if (!cells.empty() && cells.front() == "timestamp") skip = 1;
    for (std::size_t i = skip; i < cells.size(); ++i) {
        if (cells[i].empty()) r.fail("empty column label");
        t.labels.emplace_back(cells[i]);
    }
    {
        std::vector<std::string> sorted = t.labels;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) r.fail("duplicate column '" + *dup + "'");
    }
    const std::size_t width = cells.size();
    t.columns.assign(t.labels.size(), std::vector<double>());
    for (auto& c : t.columns) c.reserve(rows);
    std::size_t row = 0;
    while (r.next(cells)) {
        ++row;
        if (row > rows) r.fail("more than " + std::to_string(rows) + " data rows");
        if (cells.size() != width) {
            r.fail("expected " + std::to_string(width) + " cells, got " + std::to_string(cells.size()));
        }
        for (std::size_t i = skip; i < width; ++i) {
            const auto& label = t.labels[i - skip];
            const double v = r.number(cells[i], label);
            if (!std::isfinite(v)) r.fail("column " + label + ": value is not finite (row " + std::to_string(row) + ")");
            if (v < 0.0) r.fail("column " + label + ": negative power " + std::string(cells[i]) + " (row " + std::to_string(row) + ")");
            t.columns[i - skip].push_back(v);
        }
    }
    if (row != rows) {
        bad(source, r.line(), "expected " + std::to_string(rows) + " data rows, got " + std::to_string(row));
    }
    return t;
}

void write_wide(std::ostream& out, const std::vector<std::string>& labels,
                const std::vector<const TimeSeries*>& series) {
    for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
    out << '\n';
    const std::size_t n = series.empty() ? 0 : series.front()->size();
    for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t i = 0; i < series.size(); ++i) out << (i ? "," : "") << format_number((*series[i])[h]);
        out << '\n';
    }
}

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string format_number(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_clock(Minutes m) {
    const long v = m.count();
    if (v < 0 || v >= kMinutesPerDay.count()) throw ValidationError("clock time out of range");
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02ld:%02ld", v / 60, v % 60);
    return buf;
}

Minutes parse_clock(std::string_view text) {
    int h = -1;
    int m = -1;
    const auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        auto a = std::from_chars(text.data(), text.data() + colon, h);
        auto b = std::from_chars(text.data() + colon + 1, text.data() + text.size(), m);
        if (a.ec != std::errc() || a.ptr != text.data() + colon || b.ec != std::errc() ||
            b.ptr != text.data() + text.size()) {
            h = -1;
        }
    }
    if (h < 0 || h > 23 || m < 0 || m > 59) {
        throw ValidationError("'" + std::string(text) + "' is not a HH:MM clock time");
    }
    return Minutes(h * 60 + m);
}

std::vector<Building> read_buildings_csv(std::istream& in, const std::string& source) {
    CsvReader r(in, source);
    std::vector<std::string_view> cells;
    if (!r.next(cells)) bad(source, r.line(), "empty file");
    const Header h(r, cells);
    const auto c_id = h.require(r, "id");
    const auto c_roof = h.require(r, "roof_area_m2");
    const auto c_orient = h.require(r, "orientation");
    const auto c_vol = h.require(r, "volume_m3");
    const auto c_meters = h.require(r, "meter_count");
    const auto c_pv = h.require(r, "has_pv");
    const auto c_hp = h.require(r, "has_hp");
    const auto c_ev = h.optional("has_ev");

    std::vector<Building> out;
    std::map<std::string, std::size_t> seen;
    while (r.next(cells)) {
        if (cells.size() != h.width()) {
            r.fail("expected " + std::to_string(h.width()) + " cells, got " + std::to_string(cells.size()));
        }
        Building b;
        b.id = std::string(cells[c_id]);
        if (b.id.empty()) r.fail("empty id");
        if (!seen.emplace(b.id, r.line()).second) r.fail("duplicate building id '" + b.id + "'");
        b.roof_area_m2 = r.number(cells[c_roof], "roof_area_m2");
        try {
            b.roof_orientation = parse_orientation(cells[c_orient]);
        } catch (const Error& e) {
            r.fail(e.what());
        }
        b.volume_m3 = r.number(cells[c_vol], "volume_m3");
        b.meter_count = r.integer(cells[c_meters], "meter_count");
        b.has_pv = r.boolean(cells[c_pv], "has_pv");
        b.has_heat_pump = r.boolean(cells[c_hp], "has_hp");
        if (c_ev) b.has_ev = r.boolean(cells[*c_ev], "has_ev");
        if (!std::isfinite(b.volume_m3) || b.volume_m3 < 0.0) r.fail("volume_m3 must be >= 0");
        try {
            validate(b);
        } catch (const Error& e) {
            r.fail(e.what());
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Building> read_buildings_csv(const fs::path& path) {
    auto in = open_in(path);
    return read_buildings_csv(in, path.string());
}

void join_demand_csv(std::vector<Building>& buildings, std::istream& in, int year,
                     const std::string& source) {
    auto table = read_wide(in, hours_in_year(year), source);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < table.labels.size(); ++i) column.emplace(table.labels[i], i);
    std::vector<std::string> missing;
    for (const auto& b : buildings) {
        if (!column.count(b.id)) missing.push_back(b.id);
    }
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i = 0; i < missing.size(); ++i) list += (i ? ", " : "") + missing[i];
        throw JoinError(source + ": no demand series for building ids: " + list);
    }
    for (auto& b : buildings) {
        b.demand = TimeSeries(year_start(year), std::move(table.columns[column.at(b.id)]));
    }
}

void join_demand_csv(std::vector<Building>& buildings, const fs::path& path, int year) {
    auto in = open_in(path);
    join_demand_csv(buildings, in, year, path.string());
}

PvProfileLibrary read_pv_profiles_csv(std::istream& in, int year, const std::string& source) {
    const std::size_t hours = hours_in_year(year);
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::istringstream probe(text);
    CsvReader first(probe, source);
    std::vector<std::string_view> cells;
    if (!first.next(cells)) bad(source, first.line(), "empty file");
    std::istringstream body(text);
    if (cells.size() != hours + 1) {
        // columns of the wide layout
        auto table = read_wide(body, hours, source);
        PvProfileLibrary lib;
        for (std::size_t i = 0; i < table.labels.size(); ++i) {
            Orientation o{};
            try {
                o = parse_orientation(table.labels[i]);
            } catch (const Error& e) {
                throw ValidationError(source + ":1: " + e.what());
            }
            lib.emplace(o, TimeSeries(year_start(year), std::move(table.columns[i])));
        }
        return lib;
    }
    // one row per orientation: label followed by the hourly values
    CsvReader r(body, source);
    PvProfileLibrary lib;
    while (r.next(cells)) {
        if (cells.size() != hours + 1) {
            r.fail("expected an orientation label and " + std::to_string(hours) + " values, got " +
                   std::to_string(cells.size()) + " cells");
        }
        Orientation o{};
        try {
            o = parse_orientation(cells[0]);
        } catch (const Error& e) {
            r.fail(e.what());
        }
        if (lib.count(o)) r.fail("duplicate orientation " + std::string(cells[0]));
        std::vector<double> v(hours);
        for (std::size_t h = 0; h < hours; ++h) {
            v[h] = r.number(cells[h + 1], std::string(cells[0]));
            if (!std::isfinite(v[h]) || v[h] < 0.0) {
                r.fail("orientation " + std::string(cells[0]) + ": invalid value at hour " + std::to_string(h));
            }
        }
        lib.emplace(o, TimeSeries(year_start(year), std::move(v)));
    }
    return lib;
}

PvProfileLibrary read_pv_profiles_csv(const fs::path& path, int year) {
    auto in = open_in(path);
    return read_pv_profiles_csv(in, year, path.string());
}

std::vector<LabeledBuildingExample> read_labeled_csv(std::istream& in, const std::string& source) {
    CsvReader r(in, source);
    std::vector<std::string_view> cells;
    if (!r.next(cells)) bad(source, r.line(), "empty file");
    const Header h(r, cells);
    const auto c_meters = h.require(r, "meter_count");
    const auto c_vol = h.require(r, "volume_m3");
    const auto c_pv = h.require(r, "has_pv");
    const auto c_hp = h.require(r, "has_hp");
    const auto c_label = h.require(r, "label");
    std::vector<LabeledBuildingExample> out;
    while (r.next(cells)) {
        if (cells.size() != h.width()) r.fail("wrong number of cells");
        LabeledBuildingExample e;
        e.meter_count = r.integer(cells[c_meters], "meter_count");
        e.volume_m3 = r.number(cells[c_vol], "volume_m3");
        e.has_pv = r.boolean(cells[c_pv], "has_pv");
        e.has_heat_pump = r.boolean(cells[c_hp], "has_hp");
        try {
            e.label = parse_building_type(cells[c_label]);
        } catch (const Error& err) {
            r.fail(err.what());
        }
        if (e.meter_count < 1) r.fail("meter_count must be >= 1");
        if (!std::isfinite(e.volume_m3) || e.volume_m3 < 0.0) r.fail("volume_m3 must be >= 0");
        out.push_back(e);
    }
    return out;
}

std::vector<LabeledBuildingExample> read_labeled_csv(const fs::path& path) {
    auto in = open_in(path);
    return read_labeled_csv(in, path.string());
}

std::vector<TripDiary> parse_diaries_json(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(source + ": malformed JSON: " + e.what());
    }
    // Either a bare list or {"provenance": ..., "diaries": [...]}.
    if (doc.is_object() && doc.contains("diaries")) doc = doc.at("diaries");
    if (!doc.is_array()) throw ValidationError(source + ": expected a list of diaries");
    std::vector<TripDiary> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& d = doc[i];
        const std::string at = source + ": diary " + std::to_string(i);
        try {
            TripDiary diary;
            diary.person_id = d.at("id").is_string() ? d.at("id").get<std::string>() : d.at("id").dump();
            const auto& trips = d.at("trips");
            for (std::size_t k = 0; k < trips.size(); ++k) {
                const auto& t = trips[k];
                const int day = t.at("day").get<int>();
                if (day < 0 || day > 6) throw ValidationError("trip " + std::to_string(k) + ": day must be 0..6");
                const Minutes dep = parse_clock(t.at("dep").get<std::string>());
                Minutes arr = parse_clock(t.at("arr").get<std::string>());
                if (arr < dep) arr += kMinutesPerDay;
                Trip trip;
                trip.departure = kMinutesPerDay * day + dep;
                trip.arrival = kMinutesPerDay * day + arr;
                trip.distance_km = t.at("km").get<double>();
                trip.origin_is_home = t.at("from_home").get<bool>();
                trip.destination_is_home = t.at("to_home").get<bool>();
                diary.days[static_cast<std::size_t>(day)].push_back(trip);
            }
            out.push_back(std::move(diary));
        } catch (const json::exception& e) {
            throw ValidationError(at + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(at + ": " + e.what());
        }
    }
    return out;
}

std::vector<TripDiary> read_diaries_json(const fs::path& path) {
    auto in = open_in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_diaries_json(buf.str(), path.string());
}

json diaries_to_json(std::span<const TripDiary> diaries) {
    json doc = json::array();
    for (const auto& d : diaries) {
        json trips = json::array();
        for (std::size_t day = 0; day < 7; ++day) {
            for (const auto& t : d.days[day]) {
                if (t.departure < kMinutesPerDay * static_cast<long>(day) ||
                    t.departure >= kMinutesPerDay * static_cast<long>(day + 1) ||
                    t.arrival < t.departure || t.arrival - t.departure >= kMinutesPerDay) {
                    throw ValidationError("diary " + d.person_id + ": trip cannot be written as day/clock times");
                }
                trips.push_back({{"day", day},
                                 {"dep", format_clock(t.departure % kMinutesPerDay)},
                                 {"arr", format_clock(t.arrival % kMinutesPerDay)},
                                 {"km", t.distance_km},
                                 {"from_home", t.origin_is_home},
                                 {"to_home", t.destination_is_home}});
            }
        }
        doc.push_back({{"id", d.person_id}, {"trips", std::move(trips)}});
    }
    return doc;
}

std::string dump_diaries_json(std::span<const TripDiary> diaries) { return diaries_to_json(diaries).dump(1) + "\n"; }

void write_buildings_csv(std::ostream& out, std::span<const Building> buildings) {
    out << "id,roof_area_m2,orientation,volume_m3,meter_count,has_pv,has_hp,has_ev\n";
    for (const auto& b : buildings) {
        out << b.id << ',' << format_number(b.roof_area_m2) << ',' << to_string(b.roof_orientation) << ','
            << format_number(b.volume_m3) << ',' << b.meter_count << ',' << flag(b.has_pv) << ','
            << flag(b.has_heat_pump) << ',' << flag(b.has_ev) << '\n';
    }
}

void write_demand_csv(std::ostream& out, std::span<const Building> buildings) {
    std::vector<std::string> labels;
    std::vector<const TimeSeries*> series;
    for (const auto& b : buildings) {
        if (!series.empty() && !b.demand.aligned_with(*series.front())) {
            throw AlignmentError("demand series of " + b.id + " is not aligned with the others");
        }
        labels.push_back(b.id);
        series.push_back(&b.demand);
    }
    write_wide(out, labels, series);
}

void write_pv_profiles_csv(std::ostream& out, const PvProfileLibrary& profiles) {
    for (const auto& [o, series] : profiles) {
        out << to_string(o);
        for (double v : series.values()) out << ',' << format_number(v);
        out << '\n';
    }
}

void write_labeled_csv(std::ostream& out, std::span<const LabeledBuildingExample> examples) {
    out << "meter_count,volume_m3,has_pv,has_hp,label\n";
    for (const auto& e : examples) {
        out << e.meter_count << ',' << format_number(e.volume_m3) << ',' << flag(e.has_pv) << ','
            << flag(e.has_heat_pump) << ',' << to_string(e.label) << '\n';
    }
}

}  // namespace evtwin

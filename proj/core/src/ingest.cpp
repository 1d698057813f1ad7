#include "sfair/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "sfair/csv.hpp"
#include "sfair/error.hpp"

namespace sfair {

using nlohmann::json;

std::string Issue::format() const {
    std::string out = file;
    if (line > 0) out += ":" + std::to_string(line);
    out += severity == Severity::Error ? ": error: " : ": warning: ";
    out += message;
    return out;
}

void ValidationReport::warn(std::string file, std::size_t line, std::string message) {
    issues_.push_back({Severity::Warning, std::move(file), line, std::move(message)});
}

void ValidationReport::error(std::string file, std::size_t line, std::string message) {
    issues_.push_back({Severity::Error, std::move(file), line, std::move(message)});
}

bool ValidationReport::has_errors() const noexcept {
    return std::any_of(issues_.begin(), issues_.end(),
                       [](const Issue& i) { return i.severity == Severity::Error; });
}

std::size_t ValidationReport::warning_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        issues_.begin(), issues_.end(), [](const Issue& i) { return i.severity == Severity::Warning; }));
}

std::vector<std::string> ValidationReport::lines() const {
    std::vector<std::string> out;
    for (const auto& i : issues_) out.push_back(i.format());
    return out;
}

namespace {

std::optional<double> parse_real(std::string_view text) noexcept {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<long long> parse_integer(std::string_view text) noexcept {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

bool is_slug(std::string_view id) noexcept {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
    });
}

bool is_upper_code(std::string_view code, std::size_t length) noexcept {
    return code.size() == length &&
           std::all_of(code.begin(), code.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

std::optional<CsvTable> read_table(const Source& src, std::initializer_list<std::string_view> header,
                                   ValidationReport& report) {
    try {
        CsvTable table = parse_csv(src.text, src.name);
        require_header(table, header, src.name);
        return table;
    } catch (const ParseError& e) {
        report.error(e.file(), e.line(), e.message());
        return std::nullopt;
    }
}

// Collects rows that name cities outside the corpus into one warning per id.
class OutsideCorpus {
public:
    OutsideCorpus(std::string file, std::span<const CityRecord> corpus) : file_(std::move(file)) {
        for (const auto& c : corpus) ids_.insert(c.id);
    }

    bool contains(const std::string& id) const { return ids_.count(id) > 0; }

    // True when the id is in the corpus; otherwise records the row.
    bool check(const std::string& id, std::size_t line) {
        if (contains(id)) return true;
        auto [it, inserted] = misses_.try_emplace(id, line, 0);
        ++it->second.second;
        return false;
    }

    void flush(ValidationReport& report) const {
        for (const auto& [id, hit] : misses_) {
            report.warn(file_, hit.first,
                        std::to_string(hit.second) + " row(s) reference city '" + id +
                            "' which is not in the corpus; skipped");
        }
    }

private:
    std::string file_;
    std::set<std::string, std::less<>> ids_;
    std::map<std::string, std::pair<std::size_t, std::size_t>> misses_;
};

std::size_t json_error_line(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

std::optional<json> read_json(const Source& src, ValidationReport& report) {
    try {
        return json::parse(src.text);
    } catch (const json::parse_error& e) {
        report.error(src.name, json_error_line(src.text, e.byte), std::string("invalid JSON: ") + e.what());
        return std::nullopt;
    }
}

}  // namespace

std::vector<CityRecord> load_cities(const Source& cities, const Source& airports,
                                    std::size_t corpus_size, ValidationReport& report) {
    const auto city_table =
        read_table(cities, {"id", "name", "country", "lat", "lng", "population"}, report);
    const auto airport_table = read_table(airports, {"iata", "city_id"}, report);
    if (!city_table || !airport_table) return {};

    std::vector<CityRecord> all;
    std::map<std::string, std::size_t> index;
    for (const auto& row : city_table->rows) {
        if (row.fields.size() != 6) {
            report.error(cities.name, row.line,
                         "expected 6 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        CityRecord c;
        c.id = std::string(trim(row.fields[0]));
        c.name = std::string(trim(row.fields[1]));
        c.country = std::string(trim(row.fields[2]));
        const auto lat = parse_real(row.fields[3]);
        const auto lon = parse_real(row.fields[4]);
        const auto population = parse_integer(row.fields[5]);
        if (!is_slug(c.id)) {
            report.error(cities.name, row.line, "city id '" + c.id + "' is not a lowercase slug");
            continue;
        }
        if (c.name.empty()) {
            report.error(cities.name, row.line, "city '" + c.id + "' has no name");
            continue;
        }
        if (!is_upper_code(c.country, 2)) {
            report.error(cities.name, row.line, "country '" + c.country + "' is not a 2-letter code");
            continue;
        }
        if (!lat || !lon || !GeoPoint::valid(*lat, *lon)) {
            report.error(cities.name, row.line, "invalid coordinates for city '" + c.id + "'");
            continue;
        }
        if (!population || *population < 0) {
            report.error(cities.name, row.line, "invalid population for city '" + c.id + "'");
            continue;
        }
        c.location = GeoPoint{*lat, *lon};
        c.population = *population;
        if (!index.emplace(c.id, all.size()).second) {
            report.error(cities.name, row.line, "duplicate city id '" + c.id + "'");
            continue;
        }
        all.push_back(std::move(c));
    }

    std::set<std::string> seen_iata;
    if (airport_table->rows.empty()) {
        report.warn(airports.name, 0, "no airports listed; the corpus will be empty");
    }
    for (const auto& row : airport_table->rows) {
        if (row.fields.size() != 2) {
            report.error(airports.name, row.line,
                         "expected 2 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        const std::string iata(trim(row.fields[0]));
        const std::string city_id(trim(row.fields[1]));
        if (!is_upper_code(iata, 3)) {
            report.error(airports.name, row.line, "'" + iata + "' is not a 3-letter IATA code");
            continue;
        }
        const auto it = index.find(city_id);
        if (it == index.end()) {
            report.warn(airports.name, row.line,
                        "airport " + iata + " references unknown city '" + city_id + "'; skipped");
            continue;
        }
        if (!seen_iata.insert(iata).second) {
            report.warn(airports.name, row.line, "duplicate airport " + iata + "; first entry kept");
            continue;
        }
        all[it->second].airports.push_back(iata);
    }

    std::vector<CityRecord> corpus;
    for (auto& c : all) {
        if (c.airports.empty()) continue;
        std::sort(c.airports.begin(), c.airports.end());
        corpus.push_back(std::move(c));
    }
    std::sort(corpus.begin(), corpus.end(), [](const CityRecord& a, const CityRecord& b) {
        return std::tie(b.population, a.id) < std::tie(a.population, b.id);
    });
    if (corpus.size() > corpus_size) corpus.resize(corpus_size);
    return corpus;
}

std::vector<RouteRecord> load_routes(const Source& routes, std::span<const CityRecord> corpus,
                                     ValidationReport& report) {
    const auto table = read_table(
        routes,
        {"origin", "dest", "mode", "distance_km", "duration_h", "carrier", "fuel_liters", "source"},
        report);
    if (!table) return {};

    std::map<std::string, const CityRecord*> cities;
    for (const auto& c : corpus) cities.emplace(c.id, &c);
    OutsideCorpus outside(routes.name, corpus);

    using Key = std::tuple<std::string, std::string, TransportMode, std::string, std::string>;
    std::map<Key, RouteRecord> kept;
    for (const auto& row : table->rows) {
        if (row.fields.size() != 8) {
            report.error(routes.name, row.line,
                         "expected 8 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        RouteRecord r;
        r.origin = std::string(trim(row.fields[0]));
        r.destination = std::string(trim(row.fields[1]));
        const auto mode = parse_mode(trim(row.fields[2]));
        if (!mode) {
            report.error(routes.name, row.line,
                         "unknown mode '" + std::string(trim(row.fields[2])) + "'");
            continue;
        }
        r.mode = *mode;
        const std::string_view distance_text = trim(row.fields[3]);
        const std::string_view duration_text = trim(row.fields[4]);
        const std::string_view fuel_text = trim(row.fields[6]);
        const auto distance = parse_real(distance_text);
        const auto duration = parse_real(duration_text);
        const auto fuel = parse_real(fuel_text);
        if ((!distance_text.empty() && !distance) || (!duration_text.empty() && !duration) ||
            (!fuel_text.empty() && !fuel)) {
            report.error(routes.name, row.line, "unparseable number");
            continue;
        }
        const bool origin_known = outside.check(r.origin, row.line);
        const bool destination_known = outside.check(r.destination, row.line);
        if (!origin_known || !destination_known) continue;
        if (r.origin == r.destination) {
            report.warn(routes.name, row.line, "route from a city to itself; skipped");
            continue;
        }
        if (!distance) {
            if (r.mode != TransportMode::Flight) {
                report.warn(routes.name, row.line, "missing distance; row rejected");
                continue;
            }
            r.distance_km = great_circle_km(cities.at(r.origin)->location,
                                            cities.at(r.destination)->location);
        } else {
            r.distance_km = *distance;
        }
        if (!(r.distance_km > 0.0)) {
            report.warn(routes.name, row.line, "nonpositive distance; row rejected");
            continue;
        }
        if (!duration || !(*duration > 0.0)) {
            report.warn(routes.name, row.line, "missing or nonpositive duration; row rejected");
            continue;
        }
        r.duration_h = *duration;
        if (r.mode == TransportMode::Drive && r.distance_km > kMaxDrivingDistanceKm) {
            report.warn(routes.name, row.line,
                        "driving distance " + std::to_string(r.distance_km) +
                            " km exceeds 1000 km; excluded");
            continue;
        }
        if (fuel) {
            if (!(*fuel > 0.0)) {
                report.warn(routes.name, row.line, "nonpositive fuel volume; row rejected");
                continue;
            }
            r.fuel_liters = *fuel;
        }
        const std::string carrier(trim(row.fields[5]));
        if (!carrier.empty()) r.carrier = carrier;
        r.source = std::string(trim(row.fields[7]));
        if (r.source.empty()) r.source = "unspecified";

        Key key{r.origin, r.destination, r.mode, r.source, carrier};
        auto [it, inserted] = kept.try_emplace(std::move(key), r);
        if (!inserted && r.distance_km < it->second.distance_km) it->second = std::move(r);
    }
    outside.flush(report);

    std::vector<RouteRecord> out;
    out.reserve(kept.size());
    for (auto& [_, r] : kept) out.push_back(std::move(r));
    return out;
}

std::optional<double> parse_price(std::string_view text) noexcept {
    text = trim(text);
    auto numeric = [](char c) { return (c >= '0' && c <= '9') || c == '.'; };
    std::size_t first = 0;
    while (first < text.size() && !numeric(text[first]) && text[first] != '-') ++first;
    std::size_t last = text.size();
    while (last > first && !numeric(text[last - 1])) --last;
    if (first >= last) return std::nullopt;
    // Anything stripped must look like a currency marker, not a digit run.
    std::string digits;
    for (char c : text.substr(first, last - first)) {
        if (c == ',') continue;
        if (!numeric(c) && c != '-') return std::nullopt;
        digits.push_back(c);
    }
    const auto prefix = text.substr(0, first);
    if (std::any_of(prefix.begin(), prefix.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
        return std::nullopt;
    }
    return parse_real(digits);
}

CalendarData load_calendar(const Source& calendar, std::span<const CityRecord> corpus,
                           ValidationReport& report) {
    CalendarData out;
    const auto table =
        read_table(calendar, {"listing_id", "city_id", "date", "available", "price"}, report);
    if (!table) return out;
    OutsideCorpus outside(calendar.name, corpus);

    struct Entry {
        std::string city;
        bool available;
        double price;
    };
    std::map<std::pair<std::string, Date>, Entry> entries;
    std::size_t bad_price = 0;
    std::size_t first_bad_price = 0;
    for (const auto& row : table->rows) {
        if (row.fields.size() != 5) {
            report.error(calendar.name, row.line,
                         "expected 5 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        const std::string listing(trim(row.fields[0]));
        const std::string city(trim(row.fields[1]));
        const auto date = Date::parse_iso(trim(row.fields[2]));
        const std::string_view available = trim(row.fields[3]);
        if (!date) {
            report.warn(calendar.name, row.line, "invalid date; row skipped");
            continue;
        }
        bool is_available = false;
        if (available == "t" || available == "true") {
            is_available = true;
        } else if (available != "f" && available != "false") {
            report.warn(calendar.name, row.line, "invalid availability flag; row skipped");
            continue;
        }
        const auto price = parse_price(row.fields[4]);
        if (!price || !(*price > 0.0)) {
            if (bad_price++ == 0) first_bad_price = row.line;
            continue;
        }
        if (!outside.check(city, row.line)) continue;
        auto [it, inserted] = entries.insert_or_assign({listing, *date}, Entry{city, is_available, *price});
        if (!inserted) {
            report.warn(calendar.name, row.line,
                        "duplicate listing " + listing + " on " + date->iso() + "; last row wins");
        }
    }
    if (bad_price > 0) {
        report.warn(calendar.name, first_bad_price,
                    std::to_string(bad_price) + " row(s) with unparseable or nonpositive price skipped");
    }
    outside.flush(report);

    struct Day {
        double available_sum = 0.0;
        std::size_t available_count = 0;
        double all_sum = 0.0;
        std::size_t all_count = 0;
    };
    std::map<std::pair<std::string, Date>, Day> days;
    for (const auto& [key, e] : entries) {
        Day& d = days[{e.city, key.second}];
        d.all_sum += e.price;
        ++d.all_count;
        if (e.available) {
            d.available_sum += e.price;
            ++d.available_count;
        }
    }
    for (const auto& [key, d] : days) {
        auto& series = out.series[key.first];
        series.city_id = key.first;
        const double rate = d.available_count > 0
                                ? d.available_sum / static_cast<double>(d.available_count)
                                : d.all_sum / static_cast<double>(d.all_count);
        series.entries.emplace(key.second, rate);
        if (!out.window.first || key.second < *out.window.first) out.window.first = key.second;
        if (!out.window.last || *out.window.last < key.second) out.window.last = key.second;
    }
    if (out.window.first &&
        out.window.last->serial() - out.window.first->serial() + 1 > kMaxCalendarWindowDays) {
        report.error(calendar.name, 0,
                     "calendar spans " + out.window.first->iso() + " to " + out.window.last->iso() +
                         ", longer than " + std::to_string(kMaxCalendarWindowDays) + " days");
    }
    return out;
}

std::map<std::string, MonthlyVisitorSeries> load_avc(const Source& avc,
                                                     std::span<const CityRecord> corpus,
                                                     ValidationReport& report) {
    std::map<std::string, MonthlyVisitorSeries> out;
    const auto table = read_table(avc,
                                  {"city_id", "m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8",
                                   "m9", "m10", "m11", "m12"},
                                  report);
    if (!table) return out;
    OutsideCorpus outside(avc.name, corpus);
    for (const auto& row : table->rows) {
        if (row.fields.empty() || row.fields.size() > 1 + kMonths) {
            report.error(avc.name, row.line,
                         "expected at most 13 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        MonthlyVisitorSeries s;
        s.city_id = std::string(trim(row.fields[0]));
        bool ok = true;
        for (std::size_t m = 0; m < kMonths && ok; ++m) {
            if (m + 1 >= row.fields.size() || trim(row.fields[m + 1]).empty()) continue;
            const auto v = parse_real(row.fields[m + 1]);
            if (!v) {
                report.error(avc.name, row.line, "unparseable count for month " + std::to_string(m + 1));
                ok = false;
            } else if (*v < 0.0) {
                report.warn(avc.name, row.line, "negative visitor count; row rejected");
                ok = false;
            } else {
                s.avc[m] = *v;
            }
        }
        if (!ok || !outside.check(s.city_id, row.line)) continue;
        if (out.count(s.city_id)) {
            report.warn(avc.name, row.line, "duplicate row for '" + s.city_id + "'; first kept");
            continue;
        }
        if (!s.complete()) {
            report.warn(avc.name, row.line,
                        "'" + s.city_id + "' lacks some months; excluded from the visitor Gini");
        } else if (!(s.total() > 0.0)) {
            report.warn(avc.name, row.line,
                        "'" + s.city_id + "' has zero arrivals; visitor Gini undefined");
        }
        out.emplace(s.city_id, std::move(s));
    }
    outside.flush(report);
    return out;
}

std::map<std::string, PopularityRaw> load_popularity(const Source& popularity, const Source& trends,
                                                     std::span<const CityRecord> corpus,
                                                     ValidationReport& report) {
    std::map<std::string, PopularityRaw> out;
    const auto pop_table = read_table(popularity,
                                      {"city_id", "poi_count", "reviews_opinions",
                                       "attraction_reviews", "attraction_photos"},
                                      report);
    const auto gt_table = read_table(trends, {"city_id", "week", "value"}, report);
    if (!pop_table || !gt_table) return out;

    OutsideCorpus outside(popularity.name, corpus);
    for (const auto& row : pop_table->rows) {
        if (row.fields.size() != 5) {
            report.error(popularity.name, row.line,
                         "expected 5 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        PopularityRaw raw;
        raw.city_id = std::string(trim(row.fields[0]));
        std::array<long long, 4> counts{};
        bool parsed = true;
        bool negative = false;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto v = parse_integer(row.fields[i + 1]);
            if (!v) {
                parsed = false;
            } else {
                counts[i] = *v;
                negative = negative || *v < 0;
            }
        }
        if (!parsed) {
            report.error(popularity.name, row.line, "counts must be integers");
            continue;
        }
        if (negative) {
            report.warn(popularity.name, row.line, "negative count; row rejected");
            continue;
        }
        if (!outside.check(raw.city_id, row.line)) continue;
        raw.poi_count = static_cast<std::uint64_t>(counts[0]);
        raw.ugc_count = static_cast<std::uint64_t>(counts[1]);
        raw.attraction_reviews = static_cast<std::uint64_t>(counts[2]);
        raw.attraction_photos = static_cast<std::uint64_t>(counts[3]);
        if (!out.emplace(raw.city_id, raw).second) {
            report.warn(popularity.name, row.line, "duplicate row for '" + raw.city_id + "'; first kept");
        }
    }
    outside.flush(report);

    OutsideCorpus gt_outside(trends.name, corpus);
    std::map<std::string, std::map<std::string, double>> weekly;
    std::map<std::string, std::size_t> first_line;
    for (const auto& row : gt_table->rows) {
        if (row.fields.size() != 3) {
            report.error(trends.name, row.line,
                         "expected 3 fields, got " + std::to_string(row.fields.size()));
            continue;
        }
        const std::string city(trim(row.fields[0]));
        const std::string week(trim(row.fields[1]));
        const auto value = parse_real(row.fields[2]);
        if (!value) {
            report.error(trends.name, row.line, "unparseable search-interest value");
            continue;
        }
        if (*value < 0.0 || *value > 100.0) {
            report.warn(trends.name, row.line, "search-interest value outside [0, 100]; skipped");
            continue;
        }
        if (!gt_outside.check(city, row.line)) continue;
        first_line.try_emplace(city, row.line);
        auto [it, inserted] = weekly[city].insert_or_assign(week, *value);
        if (!inserted) {
            report.warn(trends.name, row.line,
                        "duplicate week '" + week + "' for '" + city + "'; last row wins");
        }
    }
    gt_outside.flush(report);
    for (const auto& [city, weeks] : weekly) {
        const auto it = out.find(city);
        if (it == out.end()) {
            report.warn(trends.name, first_line.at(city),
                        "'" + city + "' has search data but no popularity row; search data dropped");
            continue;
        }
        double sum = 0.0;
        for (const auto& [_, v] : weeks) sum += v;
        it->second.gt_index = sum / static_cast<double>(weeks.size());
    }
    return out;
}

CostTables load_costs(const Source& costs, ValidationReport& report) {
    CostTables out;
    const auto doc = read_json(costs, report);
    if (!doc) return out;
    try {
        if (!doc->is_object()) throw DomainError("top level must be an object");
        for (const auto& [key, _] : doc->items()) {
            if (key != "airlines" && key != "train_eur_per_km" && key != "fuel_eur_per_km") {
                throw DomainError("unknown key '" + key + "'");
            }
        }
        if (doc->contains("airlines")) {
            for (const auto& [carrier, rate] : doc->at("airlines").items()) {
                out.airline_eur_per_km.emplace(
                    carrier, AirlineRate{rate.at("domestic").get<double>(),
                                         rate.at("international").get<double>()});
            }
        }
        if (doc->contains("train_eur_per_km")) {
            out.train_eur_per_km = doc->at("train_eur_per_km").get<double>();
        }
        if (doc->contains("fuel_eur_per_km")) {
            out.fuel_eur_per_km_by_country =
                doc->at("fuel_eur_per_km").get<std::map<std::string, double>>();
        }
        out.validate();
    } catch (const json::exception& e) {
        report.error(costs.name, 0, std::string("invalid cost table: ") + e.what());
    } catch (const DomainError& e) {
        report.error(costs.name, 0, std::string("invalid cost table: ") + e.what());
    }
    return out;
}

WeightConfig load_weights(const std::optional<Source>& weights, ValidationReport& report) {
    if (!weights) return default_weights();
    const auto doc = read_json(*weights, report);
    if (!doc) return default_weights();
    try {
        return weights_from_json(*doc, default_weights(), kPublishedSumTolerance);
    } catch (const DomainError& e) {
        report.error(weights->name, 0, e.what());
        return default_weights();
    }
}

EmissionFactors load_factors(const std::optional<Source>& factors, ValidationReport& report) {
    EmissionFactors out;
    if (!factors) return out;
    const auto doc = read_json(*factors, report);
    if (!doc) return out;
    try {
        if (!doc->is_object()) throw DomainError("top level must be an object");
        for (const auto& [key, value] : doc->items()) {
            if (key == "flight_g_per_km") {
                for (const auto& [haul, g] : value.items()) {
                    bool matched = false;
                    for (auto c : {HaulCategory::VeryShort, HaulCategory::Short,
                                   HaulCategory::Medium, HaulCategory::Long}) {
                        if (haul == to_string(c)) {
                            out.flight_g_per_km[static_cast<std::size_t>(c)] = g.get<double>();
                            matched = true;
                        }
                    }
                    if (!matched) throw DomainError("unknown haul category '" + haul + "'");
                }
            } else if (key == "drive_g_per_km") {
                out.drive_g_per_km = value.get<double>();
            } else if (key == "train_g_per_km") {
                out.train_g_per_km = value.get<double>();
            } else if (key == "fuel_kg_per_liter") {
                out.fuel_kg_per_liter = value.get<double>();
            } else if (key == "flight_distance_correction") {
                out.flight_distance_correction = value.get<double>();
            } else {
                throw DomainError("unknown key '" + key + "'");
            }
        }
        out.validate();
    } catch (const json::exception& e) {
        report.error(factors->name, 0, std::string("invalid emission factors: ") + e.what());
        return EmissionFactors{};
    } catch (const DomainError& e) {
        report.error(factors->name, 0, std::string("invalid emission factors: ") + e.what());
        return EmissionFactors{};
    }
    return out;
}

std::optional<Snapshot> build_snapshot(DatasetInputs inputs, ValidationReport& report,
                                       std::string ingested_at) {
    if (inputs.cities.empty()) {
        report.error("cities.csv", 0, "corpus is empty; snapshot refused");
        return std::nullopt;
    }
    std::optional<Snapshot> snapshot;
    try {
        snapshot = Snapshot::build(std::move(inputs), std::move(ingested_at));
    } catch (const Error& e) {
        report.error("snapshot", 0, e.what());
        return std::nullopt;
    }
    for (const auto& note : snapshot->derived().notes) report.warn("routes.csv", 0, note);

    std::set<std::string> reachable;
    for (const auto& [pair, _] : snapshot->derived().trips) reachable.insert(pair.second);
    for (const auto& city : snapshot->cities()) {
        const CityDerived& d = *snapshot->find_derived(city.id);
        std::vector<std::string> missing;
        if (!reachable.count(city.id)) missing.push_back("no feasible trip from any origin");
        if (!d.popularity) missing.push_back("no popularity data");
        const bool any_seasonality =
            d.ginis.gini_avc || std::any_of(d.ginis.gini_adr.begin(), d.ginis.gini_adr.end(),
                                            [](const auto& g) { return g.has_value(); });
        if (!any_seasonality) missing.push_back("no seasonality data");
        if (missing.empty()) continue;
        std::string text;
        for (const auto& m : missing) text += (text.empty() ? "" : ", ") + m;
        report.warn("snapshot", 0, "city '" + city.id + "' is unscored: " + text);
    }
    return snapshot;
}

namespace {

std::optional<Source> read_source(const std::filesystem::path& dir, const std::string& name,
                                  bool required, ValidationReport& report) {
    const auto path = dir / name;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (required) report.error(name, 0, "required file is missing: " + path.string());
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return Source{name, buffer.str()};
}

}  // namespace

IngestOutcome ingest_directory(const std::filesystem::path& data_dir, const IngestOptions& options) {
    IngestOutcome outcome;
    auto& report = outcome.report;
    const char* required[] = {"cities.csv",   "airports.csv",   "routes.csv", "avc.csv",
                              "calendar.csv", "popularity.csv", "gt.csv",     "costs.json"};
    std::map<std::string, Source> sources;
    for (const char* name : required) {
        if (auto s = read_source(data_dir, name, true, report)) sources.emplace(name, std::move(*s));
    }
    const auto weights_src = read_source(data_dir, "weights.json", false, report);
    const auto factors_src = read_source(data_dir, "factors.json", false, report);
    if (report.has_errors()) return outcome;

    DatasetInputs inputs;
    inputs.corpus_size = options.corpus_size;
    inputs.cities = load_cities(sources.at("cities.csv"), sources.at("airports.csv"),
                                options.corpus_size, report);
    inputs.routes = load_routes(sources.at("routes.csv"), inputs.cities, report);
    auto calendar = load_calendar(sources.at("calendar.csv"), inputs.cities, report);
    inputs.daily_rates = std::move(calendar.series);
    inputs.calendar_window = calendar.window;
    inputs.visitors = load_avc(sources.at("avc.csv"), inputs.cities, report);
    inputs.popularity = load_popularity(sources.at("popularity.csv"), sources.at("gt.csv"),
                                        inputs.cities, report);
    inputs.costs = load_costs(sources.at("costs.json"), report);
    inputs.weights = load_weights(weights_src, report);
    inputs.factors = load_factors(factors_src, report);
    if (report.has_errors()) return outcome;

    outcome.snapshot = build_snapshot(std::move(inputs), report,
                                      options.ingested_at.empty() ? utc_timestamp_now()
                                                                  : options.ingested_at);
    return outcome;
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace sfair

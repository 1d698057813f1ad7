#include "sfair/snapshot.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>
#include <openssl/sha.h>

#include "sfair/error.hpp"

namespace sfair {

using nlohmann::json;

namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'S', 'F', 'A', 'I', 'R', 'S', 'N', 'P'};

template <typename T>
json optional_to_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

json city_to_json(const CityRecord& c) {
    return {{"id", c.id},
            {"name", c.name},
            {"country", c.country},
            {"lat", c.location.lat},
            {"lon", c.location.lon},
            {"population", c.population},
            {"airports", c.airports}};
}

CityRecord city_from_json(const json& j) {
    CityRecord c;
    c.id = j.at("id").get<std::string>();
    c.name = j.at("name").get<std::string>();
    c.country = j.at("country").get<std::string>();
    c.location = GeoPoint::checked(j.at("lat").get<double>(), j.at("lon").get<double>());
    c.population = j.at("population").get<long long>();
    c.airports = j.at("airports").get<std::vector<std::string>>();
    return c;
}

json route_to_json(const RouteRecord& r) {
    return {{"origin", r.origin},
            {"destination", r.destination},
            {"mode", std::string(to_string(r.mode))},
            {"distance_km", r.distance_km},
            {"duration_h", r.duration_h},
            {"carrier", optional_to_json(r.carrier)},
            {"fuel_liters", optional_to_json(r.fuel_liters)},
            {"source", r.source}};
}

RouteRecord route_from_json(const json& j) {
    RouteRecord r;
    r.origin = j.at("origin").get<std::string>();
    r.destination = j.at("destination").get<std::string>();
    const auto mode = parse_mode(j.at("mode").get<std::string>());
    if (!mode) throw Error("snapshot: unknown transport mode");
    r.mode = *mode;
    r.distance_km = j.at("distance_km").get<double>();
    r.duration_h = j.at("duration_h").get<double>();
    r.carrier = optional_from_json<std::string>(j.at("carrier"));
    r.fuel_liters = optional_from_json<double>(j.at("fuel_liters"));
    r.source = j.at("source").get<std::string>();
    return r;
}

json weights_group(std::span<const double> values) { return json(std::vector<double>(values.begin(), values.end())); }

template <std::size_t N>
void read_group(const json& j, std::array<double, N>& out) {
    const auto v = j.get<std::vector<double>>();
    if (v.size() != N) throw Error("snapshot: weight group has wrong size");
    std::copy(v.begin(), v.end(), out.begin());
}

json inputs_to_json(const DatasetInputs& in) {
    json doc;
    doc["corpus_size"] = in.corpus_size;

    json cities = json::array();
    for (const auto& c : in.cities) cities.push_back(city_to_json(c));
    doc["cities"] = std::move(cities);

    json routes = json::array();
    for (const auto& r : in.routes) routes.push_back(route_to_json(r));
    doc["routes"] = std::move(routes);

    json visitors = json::object();
    for (const auto& [id, s] : in.visitors) {
        json months = json::array();
        for (const auto& v : s.avc) months.push_back(optional_to_json(v));
        visitors[id] = std::move(months);
    }
    doc["visitors"] = std::move(visitors);

    json rates = json::object();
    for (const auto& [id, s] : in.daily_rates) {
        json days = json::object();
        for (const auto& [date, rate] : s.entries) days[date.iso()] = rate;
        rates[id] = std::move(days);
    }
    doc["daily_rates"] = std::move(rates);

    json popularity = json::object();
    for (const auto& [id, p] : in.popularity) {
        popularity[id] = {{"poi_count", p.poi_count},
                          {"ugc_count", p.ugc_count},
                          {"attraction_reviews", p.attraction_reviews},
                          {"attraction_photos", p.attraction_photos},
                          {"gt_index", optional_to_json(p.gt_index)}};
    }
    doc["popularity"] = std::move(popularity);

    json airlines = json::object();
    for (const auto& [carrier, rate] : in.costs.airline_eur_per_km) {
        airlines[carrier] = {{"domestic", rate.domestic}, {"international", rate.international}};
    }
    doc["costs"] = {{"airlines", std::move(airlines)},
                    {"train_eur_per_km", in.costs.train_eur_per_km},
                    {"fuel_eur_per_km", in.costs.fuel_eur_per_km_by_country}};

    doc["factors"] = {{"flight_g_per_km", in.factors.flight_g_per_km},
                      {"drive_g_per_km", in.factors.drive_g_per_km},
                      {"train_g_per_km", in.factors.train_g_per_km},
                      {"fuel_kg_per_liter", in.factors.fuel_kg_per_liter},
                      {"flight_distance_correction", in.factors.flight_distance_correction}};

    doc["weights"] = {{"tradeoff", weights_group(in.weights.tradeoff.values)},
                      {"popularity", weights_group(in.weights.popularity.values)},
                      {"seasonality", weights_group(in.weights.seasonality.values)},
                      {"composite", weights_group(in.weights.composite.values)}};

    doc["calendar_window"] = {
        {"first", in.calendar_window.first ? json(in.calendar_window.first->iso()) : json(nullptr)},
        {"last", in.calendar_window.last ? json(in.calendar_window.last->iso()) : json(nullptr)}};
    return doc;
}

Date date_from_json(const json& j) {
    const auto d = Date::parse_iso(j.get<std::string>());
    if (!d) throw Error("snapshot: malformed date");
    return *d;
}

DatasetInputs inputs_from_json(const json& doc) {
    DatasetInputs in;
    in.corpus_size = doc.at("corpus_size").get<std::size_t>();
    for (const auto& c : doc.at("cities")) in.cities.push_back(city_from_json(c));
    for (const auto& r : doc.at("routes")) in.routes.push_back(route_from_json(r));
    for (const auto& [id, months] : doc.at("visitors").items()) {
        MonthlyVisitorSeries s;
        s.city_id = id;
        if (months.size() != kMonths) throw Error("snapshot: visitor series needs 12 months");
        for (unsigned m = 0; m < kMonths; ++m) s.avc[m] = optional_from_json<double>(months[m]);
        in.visitors.emplace(id, std::move(s));
    }
    for (const auto& [id, days] : doc.at("daily_rates").items()) {
        DailyRateSeries s;
        s.city_id = id;
        for (const auto& [date, rate] : days.items()) {
            s.entries.emplace(date_from_json(json(date)), rate.get<double>());
        }
        in.daily_rates.emplace(id, std::move(s));
    }
    for (const auto& [id, p] : doc.at("popularity").items()) {
        PopularityRaw raw;
        raw.city_id = id;
        raw.poi_count = p.at("poi_count").get<std::uint64_t>();
        raw.ugc_count = p.at("ugc_count").get<std::uint64_t>();
        raw.attraction_reviews = p.at("attraction_reviews").get<std::uint64_t>();
        raw.attraction_photos = p.at("attraction_photos").get<std::uint64_t>();
        raw.gt_index = optional_from_json<double>(p.at("gt_index"));
        in.popularity.emplace(id, std::move(raw));
    }
    const auto& costs = doc.at("costs");
    for (const auto& [carrier, rate] : costs.at("airlines").items()) {
        in.costs.airline_eur_per_km.emplace(
            carrier, AirlineRate{rate.at("domestic").get<double>(),
                                 rate.at("international").get<double>()});
    }
    in.costs.train_eur_per_km = costs.at("train_eur_per_km").get<double>();
    in.costs.fuel_eur_per_km_by_country =
        costs.at("fuel_eur_per_km").get<std::map<std::string, double>>();

    const auto& f = doc.at("factors");
    read_group(f.at("flight_g_per_km"), in.factors.flight_g_per_km);
    in.factors.drive_g_per_km = f.at("drive_g_per_km").get<double>();
    in.factors.train_g_per_km = f.at("train_g_per_km").get<double>();
    in.factors.fuel_kg_per_liter = f.at("fuel_kg_per_liter").get<double>();
    in.factors.flight_distance_correction = f.at("flight_distance_correction").get<double>();

    const auto& w = doc.at("weights");
    read_group(w.at("tradeoff"), in.weights.tradeoff.values);
    read_group(w.at("popularity"), in.weights.popularity.values);
    read_group(w.at("seasonality"), in.weights.seasonality.values);
    read_group(w.at("composite"), in.weights.composite.values);

    const auto& window = doc.at("calendar_window");
    if (!window.at("first").is_null()) in.calendar_window.first = date_from_json(window.at("first"));
    if (!window.at("last").is_null()) in.calendar_window.last = date_from_json(window.at("last"));
    return in;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::span<const std::uint8_t> take(std::size_t n) {
        if (bytes_.size() - pos_ < n) throw Error("snapshot file is truncated");
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }
    std::uint64_t uint(std::size_t width) {
        const auto b = take(width);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        return v;
    }
    bool done() const { return pos_ == bytes_.size(); }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::array<std::uint8_t, SHA256_DIGEST_LENGTH> sha256(std::span<const std::uint8_t> bytes) {
    std::array<std::uint8_t, SHA256_DIGEST_LENGTH> out{};
    SHA256(bytes.data(), bytes.size(), out.data());
    return out;
}

}  // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (std::uint8_t b : sha256(bytes)) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xF]);
    }
    return out;
}

std::vector<std::uint8_t> encode_inputs(const DatasetInputs& inputs) {
    return json::to_cbor(inputs_to_json(inputs));
}

DatasetInputs decode_inputs(std::span<const std::uint8_t> bytes) {
    try {
        return inputs_from_json(json::from_cbor(bytes.begin(), bytes.end()));
    } catch (const json::exception& e) {
        throw Error(std::string("snapshot payload is malformed: ") + e.what());
    }
}

Snapshot Snapshot::build(DatasetInputs inputs, std::string ingested_at) {
    inputs.factors.validate();
    inputs.costs.validate();
    inputs.weights.validate(kPublishedSumTolerance);

    Snapshot snap;
    snap.inputs_ = std::move(inputs);
    snap.ingested_at_ = std::move(ingested_at);
    const auto& in = snap.inputs_;

    for (std::size_t i = 0; i < in.cities.size(); ++i) {
        if (!snap.city_index_.emplace(in.cities[i].id, i).second) {
            throw Error("snapshot: duplicate city id " + in.cities[i].id);
        }
    }

    std::vector<PopularityRaw> raws;
    for (const auto& [id, raw] : in.popularity) {
        if (snap.city_index_.count(id)) raws.push_back(raw);
    }
    std::map<std::string, PopularityComponents> components;
    if (!raws.empty()) components = normalize_components(raws);

    for (const auto& city : in.cities) {
        CityDerived d;
        if (auto it = components.find(city.id); it != components.end()) d.popularity = it->second;
        const auto v = in.visitors.find(city.id);
        const auto r = in.daily_rates.find(city.id);
        d.ginis = compute_ginis(v == in.visitors.end() ? nullptr : &v->second,
                                r == in.daily_rates.end() ? nullptr : &r->second);
        if (r != in.daily_rates.end()) d.mean_adr = monthly_mean_adr(r->second);
        snap.derived_.cities.emplace(city.id, std::move(d));
    }

    std::map<CityPair, std::vector<RouteRecord>> grouped;
    for (const auto& route : in.routes) {
        if (!snap.city_index_.count(route.origin) || !snap.city_index_.count(route.destination)) {
            throw Error("snapshot: route references a city outside the corpus");
        }
        grouped[{route.origin, route.destination}].push_back(route);
    }
    for (const auto& [pair, routes] : grouped) {
        const auto& origin = in.cities[snap.city_index_.at(pair.first)];
        const auto& destination = in.cities[snap.city_index_.at(pair.second)];
        auto options = feasible_modes(origin, destination, routes, in.factors, in.costs,
                                      &snap.derived_.notes);
        if (!options.empty()) snap.derived_.trips.emplace(pair, std::move(options));
    }

    snap.digest_ = sha256_hex(encode_inputs(in));
    return snap;
}

const CityRecord* Snapshot::find_city(std::string_view id) const {
    const auto it = city_index_.find(id);
    return it == city_index_.end() ? nullptr : &inputs_.cities[it->second];
}

const CityDerived* Snapshot::find_derived(std::string_view id) const {
    const auto it = derived_.cities.find(std::string(id));
    return it == derived_.cities.end() ? nullptr : &it->second;
}

std::span<const TripOption> Snapshot::trips(std::string_view origin,
                                            std::string_view destination) const {
    const auto it = derived_.trips.find({std::string(origin), std::string(destination)});
    if (it == derived_.trips.end()) return {};
    return it->second;
}

std::vector<std::uint8_t> serialize_snapshot(const Snapshot& snapshot) {
    const auto payload = encode_inputs(snapshot.inputs());
    const auto digest = sha256(payload);
    const auto meta = json::to_cbor(json{{"ingested_at", snapshot.ingested_at()},
                                         {"digest", snapshot.digest()}});

    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    put_u32(out, kSnapshotFormatVersion);
    out.insert(out.end(), digest.begin(), digest.end());
    put_u32(out, static_cast<std::uint32_t>(meta.size()));
    out.insert(out.end(), meta.begin(), meta.end());
    put_u64(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Snapshot deserialize_snapshot(std::span<const std::uint8_t> bytes) {
    Reader reader(bytes);
    const auto magic = reader.take(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
        throw Error("not a snapshot file (bad magic)");
    }
    const auto version = reader.uint(4);
    if (version != kSnapshotFormatVersion) {
        throw Error("unsupported snapshot format version " + std::to_string(version) +
                    " (expected " + std::to_string(kSnapshotFormatVersion) + ")");
    }
    const auto stored = reader.take(SHA256_DIGEST_LENGTH);
    const auto meta_bytes = reader.take(reader.uint(4));
    const auto payload = reader.take(reader.uint(8));
    if (!reader.done()) throw Error("trailing bytes after snapshot payload");

    const auto digest = sha256(payload);
    if (!std::equal(digest.begin(), digest.end(), stored.begin())) {
        throw Error("snapshot digest mismatch: file is corrupt");
    }
    std::string ingested_at;
    try {
        const auto meta = json::from_cbor(meta_bytes.begin(), meta_bytes.end());
        ingested_at = meta.at("ingested_at").get<std::string>();
    } catch (const json::exception& e) {
        throw Error(std::string("snapshot metadata is malformed: ") + e.what());
    }
    return Snapshot::build(decode_inputs(payload), std::move(ingested_at));
}

void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& path) {
    const auto bytes = serialize_snapshot(snapshot);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error("failed writing " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Snapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open snapshot " + path.string());
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                          std::istreambuf_iterator<char>());
    return deserialize_snapshot(bytes);
}

}  // namespace sfair

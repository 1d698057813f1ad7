#include "sfair/server.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "sfair/error.hpp"
#include "sfair/render.hpp"
#include "sfair/sfairness.hpp"

namespace sfair {

using nlohmann::json;

std::shared_ptr<const Snapshot> SnapshotStore::current() const {
    std::lock_guard lock(mutex_);
    return snapshot_;
}

void SnapshotStore::publish(std::shared_ptr<const Snapshot> snapshot) {
    std::lock_guard lock(mutex_);
    snapshot_ = std::move(snapshot);
}

ApiResponse api_error(int status, std::string_view code, std::string_view message,
                      std::optional<std::string> details) {
    json err = {{"code", code}, {"message", message}};
    if (details) err["details"] = *details;
    return {status, dump_json(json{{"error", std::move(err)}}), "application/json"};
}

namespace {

constexpr std::size_t kMaxPageSize = 1000;

ApiResponse ok(const json& body) { return {200, dump_json(body), "application/json"}; }

const std::string* param(const QueryParams& params, const std::string& key) {
    const auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
}

std::optional<long long> parse_int(std::string_view text) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_number(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

// Reads the required month parameter; returns an error response when invalid.
std::optional<ApiResponse> read_month(const QueryParams& params, unsigned& month) {
    const std::string* text = param(params, "month");
    if (!text) return api_error(400, "missing_parameter", "month is required");
    const auto m = parse_int(*text);
    if (!m || *m < 1 || *m > 12) {
        return api_error(400, "invalid_month", "month must be an integer in 1..12", *text);
    }
    month = static_cast<unsigned>(*m);
    return std::nullopt;
}

std::optional<ApiResponse> read_weights(const QueryParams& params, const Snapshot& snapshot,
                                        WeightConfig& weights) {
    weights = snapshot.inputs().weights;
    const std::string* text = param(params, "weights");
    if (!text) return std::nullopt;
    try {
        weights = weights_from_json_text(*text, weights, kOverrideSumTolerance);
    } catch (const DomainError& e) {
        return api_error(400, "invalid_weights", e.what());
    }
    return std::nullopt;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

ApiResponse no_snapshot() {
    return api_error(503, "no_snapshot", "no snapshot has been published yet");
}

}  // namespace

ApiResponse Api::health() const {
    const auto snap = store_.current();
    if (!snap) return no_snapshot();
    return ok({{"status", "ok"},
               {"snapshot", snap->digest()},
               {"ingested_at", snap->ingested_at()},
               {"cities", snap->cities().size()},
               {"format_version", kSnapshotFormatVersion}});
}

ApiResponse Api::cities(const QueryParams& params) const {
    const auto snap = store_.current();
    if (!snap) return no_snapshot();

    long long offset = 0;
    long long limit = 100;
    if (const auto* t = param(params, "offset")) {
        const auto v = parse_int(*t);
        if (!v || *v < 0) return api_error(400, "invalid_paging", "offset must be a nonnegative integer");
        offset = *v;
    }
    if (const auto* t = param(params, "limit")) {
        const auto v = parse_int(*t);
        if (!v || *v < 1 || *v > static_cast<long long>(kMaxPageSize)) {
            return api_error(400, "invalid_paging", "limit must be an integer in 1..1000");
        }
        limit = *v;
    }
    const std::string* country = param(params, "country");
    const std::string query = param(params, "q") ? lower(*param(params, "q")) : std::string();

    std::vector<const CityRecord*> matches;
    for (const auto& c : snap->cities()) {
        if (country && !country->empty() && c.country != *country) continue;
        if (!query.empty() && lower(c.name).find(query) == std::string::npos &&
            c.id.find(query) == std::string::npos) {
            continue;
        }
        matches.push_back(&c);
    }
    std::sort(matches.begin(), matches.end(), [](const CityRecord* a, const CityRecord* b) {
        return std::tie(a->name, a->id) < std::tie(b->name, b->id);
    });
    json list = json::array();
    for (std::size_t i = static_cast<std::size_t>(offset);
         i < matches.size() && list.size() < static_cast<std::size_t>(limit); ++i) {
        list.push_back(to_json(*matches[i]));
    }
    return ok({{"total", matches.size()}, {"offset", offset}, {"limit", limit}, {"cities", std::move(list)}});
}

ApiResponse Api::city_indices(std::string_view city_id, const QueryParams& params) const {
    const auto snap = store_.current();
    if (!snap) return no_snapshot();
    if (!snap->find_city(city_id)) {
        return api_error(404, "unknown_city", "no city with id '" + std::string(city_id) + "'");
    }
    unsigned month = 0;
    if (auto err = read_month(params, month)) return *err;
    WeightConfig weights;
    if (auto err = read_weights(params, *snap, weights)) return *err;
    json body = to_json(sfair::city_indices(*snap, city_id, month, weights));
    body["snapshot"] = snap->digest();
    return ok(body);
}

ApiResponse Api::recommendations(const QueryParams& params) const {
    const auto snap = store_.current();
    if (!snap) return no_snapshot();

    RankQuery query;
    const std::string* origin = param(params, "origin");
    if (!origin || origin->empty()) return api_error(400, "missing_parameter", "origin is required");
    query.origin = *origin;
    if (!snap->find_city(query.origin)) {
        return api_error(404, "unknown_origin", "no city with id '" + query.origin + "'");
    }
    if (auto err = read_month(params, query.month)) return *err;
    if (auto err = read_weights(params, *snap, query.weights)) return *err;

    if (const auto* t = param(params, "limit")) {
        const auto v = parse_int(*t);
        if (!v || *v < 1) return api_error(400, "invalid_limit", "limit must be a positive integer");
        query.limit = static_cast<std::size_t>(*v);
    }
    if (const auto* t = param(params, "sort")) {
        const auto key = parse_sort_key(*t);
        if (!key) {
            return api_error(400, "invalid_sort",
                             "sort must be one of psi, tradeoff, popularity, seasonality", *t);
        }
        query.sort = *key;
    }
    if (const auto* t = param(params, "max_psi")) {
        const auto v = parse_number(*t);
        if (!v || *v < 0.0 || *v > 1.0) {
            return api_error(400, "invalid_filter", "max_psi must be a number in [0, 1]");
        }
        query.filters.max_psi = *v;
    }
    for (const auto& [key, slot] :
         {std::pair{"popularity_label", &query.filters.popularity_label},
          std::pair{"seasonality_label", &query.filters.seasonality_label}}) {
        if (const auto* t = param(params, key)) {
            const auto label = parse_label(*t);
            if (!label) {
                return api_error(400, "invalid_filter",
                                 std::string(key) + " must be high, medium or low");
            }
            *slot = *label;
        }
    }
    if (const auto* t = param(params, "country"); t && !t->empty()) query.filters.country = *t;
    if (const auto* t = param(params, "mode")) {
        const auto mode = parse_mode(*t);
        if (!mode) return api_error(400, "invalid_filter", "mode must be flight, drive or train");
        query.filters.mode = *mode;
    }

    try {
        const Ranking ranking = rank_destinations(*snap, query);
        return ok(ranking_to_json(*snap, query, ranking));
    } catch (const NotFound& e) {
        return api_error(404, "unknown_origin", e.what());
    } catch (const DomainError& e) {
        return api_error(400, "invalid_request", e.what());
    }
}

ApiResponse Api::get(std::string_view path, const QueryParams& params) const {
    if (path == "/health") return health();
    if (path == "/cities") return cities(params);
    if (path == "/recommendations") return recommendations(params);
    constexpr std::string_view kPrefix = "/cities/";
    constexpr std::string_view kSuffix = "/indices";
    if (path.starts_with(kPrefix) && path.ends_with(kSuffix) &&
        path.size() > kPrefix.size() + kSuffix.size()) {
        const auto id = path.substr(kPrefix.size(), path.size() - kPrefix.size() - kSuffix.size());
        if (id.find('/') == std::string_view::npos) return city_indices(id, params);
    }
    return api_error(404, "not_found", "no endpoint at " + std::string(path));
}

ServerOptions parse_listen_address(std::string_view address, ServerOptions base) {
    std::string_view port_text = address;
    if (const auto colon = address.rfind(':'); colon != std::string_view::npos) {
        if (colon > 0) base.host = std::string(address.substr(0, colon));
        port_text = address.substr(colon + 1);
    }
    const auto port = parse_int(port_text);
    if (!port || *port < 0 || *port > 65535) {
        throw DomainError("invalid listen address '" + std::string(address) + "'");
    }
    base.port = static_cast<int>(*port);
    return base;
}

struct HttpServer::Impl {
    Impl(const SnapshotStore& store, ServerOptions opts) : api(store), options(std::move(opts)) {}

    Api api;
    ServerOptions options;
    httplib::Server server;

    void apply_cors(const httplib::Request& req, httplib::Response& res) const {
        if (options.cors_origins.empty()) return;
        const std::string origin = req.get_header_value("Origin");
        const bool any = std::find(options.cors_origins.begin(), options.cors_origins.end(), "*") !=
                         options.cors_origins.end();
        if (any) {
            res.set_header("Access-Control-Allow-Origin", "*");
        } else if (!origin.empty() && std::find(options.cors_origins.begin(),
                                                options.cors_origins.end(),
                                                origin) != options.cors_origins.end()) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
        }
    }

    void respond(const httplib::Request& req, httplib::Response& res, const ApiResponse& out) const {
        res.status = out.status;
        res.set_content(out.body, out.content_type);
        apply_cors(req, res);
    }

    static QueryParams params_of(const httplib::Request& req) {
        QueryParams params;
        for (const auto& [k, v] : req.params) params.emplace(k, v);
        return params;
    }

    void install() {
        auto handle = [this](const httplib::Request& req, httplib::Response& res) {
            respond(req, res, api.get(req.path, params_of(req)));
        };
        server.Get("/health", handle);
        server.Get("/cities", handle);
        server.Get(R"(/cities/[^/]+/indices)", handle);
        server.Get("/recommendations", handle);
        server.Options(R"(.*)", [this](const httplib::Request& req, httplib::Response& res) {
            res.status = 204;
            apply_cors(req, res);
            res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        });
        if (options.static_dir) server.set_mount_point("/", options.static_dir->string());
        server.set_error_handler([this](const httplib::Request& req, httplib::Response& res) {
            if (!res.body.empty()) return;
            const auto out = api_error(res.status, res.status == 404 ? "not_found" : "http_error",
                                       "request failed for " + req.path);
            res.set_content(out.body, out.content_type);
            apply_cors(req, res);
        });
    }
};

HttpServer::HttpServer(const SnapshotStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
    impl_->install();
}

HttpServer::~HttpServer() {
    if (impl_->server.is_running()) impl_->server.stop();
}

int HttpServer::bind() {
    auto& o = impl_->options;
    if (o.port == 0) {
        o.port = impl_->server.bind_to_any_port(o.host);
        return o.port > 0 ? o.port : -1;
    }
    return impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace sfair

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfair/snapshot.hpp"

namespace sfair {

// Holds the published snapshot. Readers get a shared reference to either the
// old or the new snapshot, never a partially replaced one.
class SnapshotStore {
public:
    std::shared_ptr<const Snapshot> current() const;
    void publish(std::shared_ptr<const Snapshot> snapshot);

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> snapshot_;
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

using QueryParams = std::multimap<std::string, std::string>;

// Request handling without the transport, so handlers can be exercised
// directly. Every non-2xx body is {"error": {"code", "message", "details"?}}.
class Api {
public:
    explicit Api(const SnapshotStore& store) : store_(store) {}

    ApiResponse health() const;
    ApiResponse cities(const QueryParams& params) const;
    ApiResponse city_indices(std::string_view city_id, const QueryParams& params) const;
    ApiResponse recommendations(const QueryParams& params) const;

    // Dispatches a GET by path.
    ApiResponse get(std::string_view path, const QueryParams& params) const;

private:
    const SnapshotStore& store_;
};

ApiResponse api_error(int status, std::string_view code, std::string_view message,
                      std::optional<std::string> details = std::nullopt);

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::vector<std::string> cors_origins;  // "*" allows any origin
    std::optional<std::filesystem::path> static_dir;
};

// Parses "host:port", ":port" or "port".
ServerOptions parse_listen_address(std::string_view address, ServerOptions base = {});

class HttpServer {
public:
    HttpServer(const SnapshotStore& store, ServerOptions options);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Binds the configured address (port 0 picks a free one) and returns the
    // bound port, or -1 on failure.
    int bind();
    // Serves until stop(); requires a successful bind().
    bool serve();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace sfair

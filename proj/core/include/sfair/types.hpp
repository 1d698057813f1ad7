#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfair/geo.hpp"

namespace sfair {

enum class TransportMode { Flight = 0, Drive = 1, Train = 2 };

inline constexpr TransportMode kAllModes[] = {TransportMode::Flight, TransportMode::Drive,
                                              TransportMode::Train};

std::string_view to_string(TransportMode mode) noexcept;
std::optional<TransportMode> parse_mode(std::string_view text) noexcept;

struct CityRecord {
    std::string id;  // slug
    std::string name;
    std::string country;  // ISO 3166 alpha-2
    GeoPoint location;
    long long population = 0;
    std::vector<std::string> airports;  // IATA codes, sorted

    bool operator==(const CityRecord&) const = default;
};

struct RouteRecord {
    std::string origin;
    std::string destination;
    TransportMode mode = TransportMode::Flight;
    double distance_km = 0.0;  // flights: uncorrected great-circle distance
    double duration_h = 0.0;
    std::optional<std::string> carrier;
    std::optional<double> fuel_liters;
    std::string source;

    bool operator==(const RouteRecord&) const = default;
};

}  // namespace sfair

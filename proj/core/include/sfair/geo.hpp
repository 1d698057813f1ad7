#pragma once

#include <string_view>

namespace sfair {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kFlightDistanceCorrection = 1.09;

struct GeoPoint {
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]

    // Throws DomainError when a coordinate is out of range or not finite.
    static GeoPoint checked(double lat, double lon);
    static bool valid(double lat, double lon) noexcept;
    bool operator==(const GeoPoint&) const = default;
};

// Flight distance classes selecting the per-km emission factor.
// VeryShort [0,500), Short [500,1500), Medium [1500,4000), Long [4000,inf).
enum class HaulCategory { VeryShort = 0, Short = 1, Medium = 2, Long = 3 };

std::string_view to_string(HaulCategory category) noexcept;

// Haversine distance on a sphere of radius kEarthRadiusKm.
double great_circle_km(GeoPoint a, GeoPoint b) noexcept;

// Adds the detour allowance applied to flight distances.
double corrected_flight_km(double gcd_km, double correction = kFlightDistanceCorrection);

HaulCategory haul_category(double gcd_km);

}  // namespace sfair

#include "sfair/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sfair/error.hpp"

namespace sfair {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require_distance(double km, const char* what) {
    if (!std::isfinite(km) || km < 0.0) {
        throw DomainError(std::string(what) + ": distance must be finite and nonnegative, got " +
                          std::to_string(km));
    }
}

}  // namespace

bool GeoPoint::valid(double lat, double lon) noexcept {
    return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0 &&
           lon >= -180.0 && lon <= 180.0;
}

GeoPoint GeoPoint::checked(double lat, double lon) {
    if (!valid(lat, lon)) {
        throw DomainError("coordinates out of range: (" + std::to_string(lat) + ", " +
                          std::to_string(lon) + ")");
    }
    return GeoPoint{lat, lon};
}

std::string_view to_string(HaulCategory category) noexcept {
    switch (category) {
        case HaulCategory::VeryShort: return "very_short";
        case HaulCategory::Short: return "short";
        case HaulCategory::Medium: return "medium";
        case HaulCategory::Long: return "long";
    }
    return "unknown";
}

double great_circle_km(GeoPoint a, GeoPoint b) noexcept {
    const double phi1 = a.lat * kDegToRad;
    const double phi2 = b.lat * kDegToRad;
    const double dphi = (b.lat - a.lat) * kDegToRad;
    const double dlambda = (b.lon - a.lon) * kDegToRad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

double corrected_flight_km(double gcd_km, double correction) {
    require_distance(gcd_km, "corrected_flight_km");
    return gcd_km * correction;
}

HaulCategory haul_category(double gcd_km) {
    require_distance(gcd_km, "haul_category");
    if (gcd_km < 500.0) return HaulCategory::VeryShort;
    if (gcd_km < 1500.0) return HaulCategory::Short;
    if (gcd_km < 4000.0) return HaulCategory::Medium;
    return HaulCategory::Long;
}

}  // namespace sfair

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfair/geo.hpp"
#include "sfair/types.hpp"
#include "sfair/weights.hpp"

namespace sfair {

inline constexpr double kMaxDrivingDistanceKm = 1000.0;

struct EmissionFactors {
    // Indexed by HaulCategory.
    std::array<double, 4> flight_g_per_km{155.0, 110.0, 75.0, 95.0};
    double drive_g_per_km = 96.0;
    double train_g_per_km = 24.0;
    double fuel_kg_per_liter = 2.3;
    double flight_distance_correction = kFlightDistanceCorrection;

    double flight_factor(HaulCategory category) const noexcept {
        return flight_g_per_km[static_cast<std::size_t>(category)];
    }
    void validate() const;
    bool operator==(const EmissionFactors&) const = default;
};

struct AirlineRate {
    double domestic = 0.0;       // EUR per km
    double international = 0.0;  // EUR per km
    bool operator==(const AirlineRate&) const = default;
};

struct CostTables {
    std::map<std::string, AirlineRate> airline_eur_per_km;
    double train_eur_per_km = 0.14;
    std::map<std::string, double> fuel_eur_per_km_by_country;

    void validate() const;
    bool operator==(const CostTables&) const = default;
};

struct TripOption {
    TransportMode mode = TransportMode::Flight;
    double distance_km = 0.0;  // distance the emissions and cost were computed on
    double travel_time_h = 0.0;
    double emissions_kg = 0.0;
    double cost_eur = 0.0;
    std::optional<std::string> carrier;
    // Drive only: estimate from reported fuel use, when available.
    std::optional<double> fuel_emissions_kg;

    bool operator==(const TripOption&) const = default;
};

struct ModeScore {
    TransportMode mode = TransportMode::Flight;
    double tau_travel_time = 0.0;
    double tau_emissions = 0.0;
    double tau_cost = 0.0;
    double score = 0.0;
};

struct TradeoffBreakdown {
    std::vector<ModeScore> modes;  // same order as the input options
    double index = 0.0;            // min over modes
    TransportMode best_mode = TransportMode::Flight;
};

double flight_emissions_kg(double gcd_km, const EmissionFactors& factors = {});
double drive_emissions_kg(double distance_km, const EmissionFactors& factors = {});
double drive_emissions_from_fuel_kg(double liters, const EmissionFactors& factors = {});
double train_emissions_kg(double distance_km, const EmissionFactors& factors = {});

// Carriers joined with '+', '/' or ',' denote multi-carrier itineraries.
bool is_multi_carrier(std::string_view carrier) noexcept;

// Flight: airline rate (domestic or international) x corrected distance,
// where distance_km is the great-circle distance. Train: flat rate x distance.
// Drive: origin-country fuel rate x distance. Throws MissingRate.
double trip_cost_eur(TransportMode mode, double distance_km, std::string_view origin_country,
                     std::string_view carrier, bool domestic, const CostTables& tables,
                     double flight_correction = kFlightDistanceCorrection);

// Builds at most one TripOption per mode from the route records of a single
// origin -> destination pair. Options that cannot be costed are dropped and
// described in `notes` when given.
std::vector<TripOption> feasible_modes(const CityRecord& origin, const CityRecord& destination,
                                       std::span<const RouteRecord> routes,
                                       const EmissionFactors& factors, const CostTables& tables,
                                       std::vector<std::string>* notes = nullptr);

// Min-max normalizes time, emissions and cost across the options, scores each
// mode by the weighted sum and reduces to the minimum. Ties in the minimum go
// to the earliest mode in Flight < Drive < Train order.
TradeoffBreakdown emissions_tradeoff_index(std::span<const TripOption> options,
                                           const TradeoffWeights& weights);

}  // namespace sfair

#include "sfair/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "sfair/error.hpp"
#include "sfair/numerics.hpp"

namespace sfair {

std::string_view to_string(TransportMode mode) noexcept {
    switch (mode) {
        case TransportMode::Flight: return "flight";
        case TransportMode::Drive: return "drive";
        case TransportMode::Train: return "train";
    }
    return "unknown";
}

std::optional<TransportMode> parse_mode(std::string_view text) noexcept {
    if (text == "flight") return TransportMode::Flight;
    if (text == "drive") return TransportMode::Drive;
    if (text == "train") return TransportMode::Train;
    return std::nullopt;
}

namespace {

void require_positive(double value, const char* what) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw DomainError(std::string(what) + " must be positive, got " + std::to_string(value));
    }
}

}  // namespace

void EmissionFactors::validate() const {
    for (double f : flight_g_per_km) require_positive(f, "flight emission factor");
    require_positive(drive_g_per_km, "drive emission factor");
    require_positive(train_g_per_km, "train emission factor");
    require_positive(fuel_kg_per_liter, "fuel emission factor");
    require_positive(flight_distance_correction, "flight distance correction");
}

void CostTables::validate() const {
    for (const auto& [carrier, rate] : airline_eur_per_km) {
        require_positive(rate.domestic, ("domestic rate of " + carrier).c_str());
        require_positive(rate.international, ("international rate of " + carrier).c_str());
    }
    require_positive(train_eur_per_km, "train rate");
    for (const auto& [country, rate] : fuel_eur_per_km_by_country) {
        require_positive(rate, ("fuel rate of " + country).c_str());
    }
}

double flight_emissions_kg(double gcd_km, const EmissionFactors& factors) {
    require_positive(gcd_km, "flight distance");
    const double grams_per_km = factors.flight_factor(haul_category(gcd_km));
    return grams_per_km * corrected_flight_km(gcd_km, factors.flight_distance_correction) / 1000.0;
}

double drive_emissions_kg(double distance_km, const EmissionFactors& factors) {
    require_positive(distance_km, "driving distance");
    return factors.drive_g_per_km * distance_km / 1000.0;
}

double drive_emissions_from_fuel_kg(double liters, const EmissionFactors& factors) {
    require_positive(liters, "fuel volume");
    return factors.fuel_kg_per_liter * liters;
}

double train_emissions_kg(double distance_km, const EmissionFactors& factors) {
    require_positive(distance_km, "train distance");
    return factors.train_g_per_km * distance_km / 1000.0;
}

bool is_multi_carrier(std::string_view carrier) noexcept {
    return carrier.find_first_of("+/,") != std::string_view::npos;
}

double trip_cost_eur(TransportMode mode, double distance_km, std::string_view origin_country,
                     std::string_view carrier, bool domestic, const CostTables& tables,
                     double flight_correction) {
    require_positive(distance_km, "trip distance");
    switch (mode) {
        case TransportMode::Flight: {
            if (carrier.empty() || is_multi_carrier(carrier)) {
                throw MissingRate("no single-carrier rate for flight carrier '" +
                                  std::string(carrier) + "'");
            }
            const auto it = tables.airline_eur_per_km.find(std::string(carrier));
            if (it == tables.airline_eur_per_km.end()) {
                throw MissingRate("no cost rate for airline '" + std::string(carrier) + "'");
            }
            const double rate = domestic ? it->second.domestic : it->second.international;
            return rate * corrected_flight_km(distance_km, flight_correction);
        }
        case TransportMode::Train:
            return tables.train_eur_per_km * distance_km;
        case TransportMode::Drive: {
            const auto it = tables.fuel_eur_per_km_by_country.find(std::string(origin_country));
            if (it == tables.fuel_eur_per_km_by_country.end()) {
                throw MissingRate("no fuel cost rate for country '" + std::string(origin_country) +
                                  "'");
            }
            return it->second * distance_km;
        }
    }
    throw DomainError("unknown transport mode");
}

namespace {

std::string describe(const CityRecord& origin, const CityRecord& destination, TransportMode mode) {
    return origin.id + " -> " + destination.id + " (" + std::string(to_string(mode)) + ")";
}

// Shortest record of a surface mode; ties by duration, then source.
const RouteRecord* shortest(std::span<const RouteRecord> routes, TransportMode mode) {
    const RouteRecord* best = nullptr;
    for (const auto& r : routes) {
        if (r.mode != mode) continue;
        if (mode == TransportMode::Drive && r.distance_km > kMaxDrivingDistanceKm) continue;
        if (!best || std::tie(r.distance_km, r.duration_h, r.source) <
                         std::tie(best->distance_km, best->duration_h, best->source)) {
            best = &r;
        }
    }
    return best;
}

}  // namespace

std::vector<TripOption> feasible_modes(const CityRecord& origin, const CityRecord& destination,
                                       std::span<const RouteRecord> routes,
                                       const EmissionFactors& factors, const CostTables& tables,
                                       std::vector<std::string>* notes) {
    auto note = [&](std::string text) {
        if (notes) notes->push_back(std::move(text));
    };
    std::vector<TripOption> options;
    const bool domestic = origin.country == destination.country;

    if (!origin.airports.empty() && !destination.airports.empty()) {
        std::optional<TripOption> best;
        bool any_flight = false;
        for (const auto& r : routes) {
            if (r.mode != TransportMode::Flight) continue;
            any_flight = true;
            const std::string carrier = r.carrier.value_or("");
            double cost = 0.0;
            try {
                cost = trip_cost_eur(TransportMode::Flight, r.distance_km, origin.country, carrier,
                                     domestic, tables, factors.flight_distance_correction);
            } catch (const MissingRate& e) {
                note(describe(origin, destination, TransportMode::Flight) + ": " + e.what());
                continue;
            }
            TripOption option{TransportMode::Flight,
                              corrected_flight_km(r.distance_km, factors.flight_distance_correction),
                              r.duration_h,
                              flight_emissions_kg(r.distance_km, factors),
                              cost,
                              carrier,
                              std::nullopt};
            if (!best || std::tie(option.cost_eur, option.travel_time_h, *option.carrier) <
                             std::tie(best->cost_eur, best->travel_time_h, *best->carrier)) {
                best = std::move(option);
            }
        }
        if (best) {
            options.push_back(std::move(*best));
        } else if (any_flight) {
            note(describe(origin, destination, TransportMode::Flight) +
                 ": dropped, no flight could be costed");
        }
    }

    if (const RouteRecord* r = shortest(routes, TransportMode::Drive)) {
        try {
            TripOption option{TransportMode::Drive,
                              r->distance_km,
                              r->duration_h,
                              drive_emissions_kg(r->distance_km, factors),
                              trip_cost_eur(TransportMode::Drive, r->distance_km, origin.country, "",
                                            domestic, tables),
                              std::nullopt,
                              std::nullopt};
            if (r->fuel_liters) {
                option.fuel_emissions_kg = drive_emissions_from_fuel_kg(*r->fuel_liters, factors);
            }
            options.push_back(std::move(option));
        } catch (const MissingRate& e) {
            note(describe(origin, destination, TransportMode::Drive) + ": " + e.what());
        }
    }

    if (const RouteRecord* r = shortest(routes, TransportMode::Train)) {
        options.push_back(TripOption{TransportMode::Train,
                                     r->distance_km,
                                     r->duration_h,
                                     train_emissions_kg(r->distance_km, factors),
                                     trip_cost_eur(TransportMode::Train, r->distance_km,
                                                   origin.country, "", domestic, tables),
                                     r->carrier,
                                     std::nullopt});
    }
    return options;
}

TradeoffBreakdown emissions_tradeoff_index(std::span<const TripOption> options,
                                           const TradeoffWeights& weights) {
    if (options.empty()) throw DomainError("trade-off index of an empty option set");
    weights.validate(kPublishedSumTolerance, "tradeoff");

    std::vector<double> time;
    std::vector<double> emissions;
    std::vector<double> cost;
    for (const auto& o : options) {
        if (!std::isfinite(o.travel_time_h) || !std::isfinite(o.emissions_kg) ||
            !std::isfinite(o.cost_eur)) {
            throw DomainError("trip option with non-finite magnitude");
        }
        time.push_back(o.travel_time_h);
        emissions.push_back(o.emissions_kg);
        cost.push_back(o.cost_eur);
    }
    const auto time_range = MinMaxRange::of(time);
    const auto emissions_range = MinMaxRange::of(emissions);
    const auto cost_range = MinMaxRange::of(cost);

    TradeoffBreakdown out;
    out.modes.reserve(options.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < options.size(); ++i) {
        ModeScore s;
        s.mode = options[i].mode;
        s.tau_travel_time = time_range.normalize(time[i]);
        s.tau_emissions = emissions_range.normalize(emissions[i]);
        s.tau_cost = cost_range.normalize(cost[i]);
        s.score = weights.travel_time() * s.tau_travel_time +
                  weights.emissions() * s.tau_emissions + weights.cost() * s.tau_cost;
        out.modes.push_back(s);
        const auto& b = out.modes[best];
        if (s.score < b.score || (s.score == b.score && s.mode < b.mode)) best = i;
    }
    out.index = out.modes[best].score;
    out.best_mode = out.modes[best].mode;
    return out;
}

}  // namespace sfair

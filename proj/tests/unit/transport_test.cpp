#include <gtest/gtest.h>

#include <random>

#include "../oracle/reference.hpp"
#include "sfair/error.hpp"
#include "sfair/transport.hpp"

using namespace sfair;

namespace {

TripOption option(TransportMode m, double h, double kg, double eur) {
    TripOption o;
    o.mode = m;
    o.travel_time_h = h;
    o.emissions_kg = kg;
    o.cost_eur = eur;
    return o;
}

TradeoffWeights published_alpha() { return default_weights().tradeoff; }

CityRecord city(std::string id, std::string country, GeoPoint at, bool airport = true) {
    CityRecord c;
    c.id = std::move(id);
    c.name = c.id;
    c.country = std::move(country);
    c.location = at;
    c.population = 1000;
    if (airport) c.airports = {"X" + c.id};
    return c;
}

}  // namespace

TEST(EmissionFactors, Constants) {
    const EmissionFactors f;
    EXPECT_EQ(f.flight_factor(HaulCategory::VeryShort), 155.0);
    EXPECT_EQ(f.flight_factor(HaulCategory::Short), 110.0);
    EXPECT_EQ(f.flight_factor(HaulCategory::Medium), 75.0);
    EXPECT_EQ(f.flight_factor(HaulCategory::Long), 95.0);
    EXPECT_EQ(f.drive_g_per_km, 96.0);
    EXPECT_EQ(f.train_g_per_km, 24.0);
    EXPECT_EQ(f.fuel_kg_per_liter, 2.3);
    EXPECT_EQ(f.flight_distance_correction, 1.09);
    EXPECT_EQ(CostTables{}.train_eur_per_km, 0.14);
    EXPECT_EQ(kMaxDrivingDistanceKm, 1000.0);
}

TEST(Emissions, Flight) {
    EXPECT_NEAR(flight_emissions_kg(1000), 119.9, 1e-9);
    EXPECT_NEAR(flight_emissions_kg(400), 67.58, 1e-9);
    EXPECT_NEAR(flight_emissions_kg(2000), 0.075 * 2180, 1e-9);
    EXPECT_NEAR(flight_emissions_kg(5000), 0.095 * 5450, 1e-9);
    // haul is chosen on the raw distance: 480 km corrects to 523 km but stays very short
    EXPECT_NEAR(flight_emissions_kg(480), 0.155 * 480 * 1.09, 1e-9);
    EXPECT_THROW(flight_emissions_kg(0), DomainError);
    EXPECT_THROW(flight_emissions_kg(-5), DomainError);
}

TEST(Emissions, DriveTrainFuel) {
    EXPECT_NEAR(drive_emissions_kg(500), 48.0, 1e-12);
    EXPECT_NEAR(drive_emissions_kg(1), 0.096, 1e-12);
    EXPECT_NEAR(drive_emissions_kg(851.51), 81.74, 0.01);
    EXPECT_NEAR(train_emissions_kg(250), 6.0, 1e-12);
    EXPECT_NEAR(train_emissions_kg(1), 0.024, 1e-12);
    EXPECT_NEAR(train_emissions_kg(524.75), 12.59, 0.01);
    EXPECT_NEAR(drive_emissions_from_fuel_kg(10), 23.0, 1e-12);
    EXPECT_NEAR(drive_emissions_from_fuel_kg(40), 92.0, 1e-12);
    EXPECT_THROW(drive_emissions_kg(0), DomainError);
    EXPECT_THROW(train_emissions_kg(0), DomainError);
    EXPECT_THROW(drive_emissions_from_fuel_kg(0), DomainError);
}

TEST(Emissions, LinearInDistance) {
    for (double d : {10.0, 120.5, 333.0, 700.0}) {
        EXPECT_NEAR(drive_emissions_kg(3 * d), 3 * drive_emissions_kg(d), 1e-9);
        EXPECT_NEAR(train_emissions_kg(3 * d), 3 * train_emissions_kg(d), 1e-9);
    }
    // within one haul band the flight estimate is linear as well
    EXPECT_NEAR(flight_emissions_kg(1400), 2 * flight_emissions_kg(700), 1e-9);
}

TEST(Cost, Examples) {
    CostTables t;
    t.airline_eur_per_km["AB"] = {0.10, 0.08};
    t.fuel_eur_per_km_by_country["DE"] = 0.10;
    EXPECT_NEAR(trip_cost_eur(TransportMode::Train, 500, "DE", "", false, t), 70.0, 1e-9);
    EXPECT_NEAR(trip_cost_eur(TransportMode::Drive, 300, "DE", "", false, t), 30.0, 1e-9);
    EXPECT_NEAR(trip_cost_eur(TransportMode::Flight, 1000, "DE", "AB", false, t), 87.2, 1e-9);
    EXPECT_NEAR(trip_cost_eur(TransportMode::Flight, 1000, "DE", "AB", true, t), 109.0, 1e-9);
    EXPECT_THROW(trip_cost_eur(TransportMode::Flight, 1000, "DE", "ZZ", false, t), MissingRate);
    EXPECT_THROW(trip_cost_eur(TransportMode::Flight, 1000, "DE", "AB+CD", false, t), MissingRate);
    EXPECT_THROW(trip_cost_eur(TransportMode::Drive, 300, "FR", "", false, t), MissingRate);
    EXPECT_THROW(trip_cost_eur(TransportMode::Train, 0, "DE", "", false, t), DomainError);
}

TEST(Cost, MultiCarrier) {
    EXPECT_TRUE(is_multi_carrier("LH+OK"));
    EXPECT_TRUE(is_multi_carrier("LH/OS"));
    EXPECT_TRUE(is_multi_carrier("LH, OS"));
    EXPECT_FALSE(is_multi_carrier("LH"));
}

class FeasibleModes : public ::testing::Test {
protected:
    CityRecord a = city("a", "DE", {48.0, 11.0});
    CityRecord b = city("b", "AT", {48.2, 16.3});
    CostTables tables;
    void SetUp() override {
        tables.airline_eur_per_km["AB"] = {0.2, 0.15};
        tables.airline_eur_per_km["CD"] = {0.2, 0.12};
        tables.fuel_eur_per_km_by_country["DE"] = 0.1;
    }
    RouteRecord route(TransportMode m, double km, double h, std::optional<std::string> carrier = {}) {
        return {"a", "b", m, km, h, std::move(carrier), std::nullopt, "test"};
    }
};

TEST_F(FeasibleModes, DriveCapIsInclusive) {
    std::vector<RouteRecord> r{route(TransportMode::Drive, 1000.0, 10)};
    auto opts = feasible_modes(a, b, r, {}, tables);
    ASSERT_EQ(opts.size(), 1u);
    EXPECT_EQ(opts[0].mode, TransportMode::Drive);

    r = {route(TransportMode::Drive, 1200.0, 12), route(TransportMode::Flight, 900, 1.5, "AB")};
    opts = feasible_modes(a, b, r, {}, tables);
    ASSERT_EQ(opts.size(), 1u);
    EXPECT_EQ(opts[0].mode, TransportMode::Flight);
}

TEST_F(FeasibleModes, AllThree) {
    std::vector<RouteRecord> r{route(TransportMode::Flight, 420, 1.2, "AB"),
                               route(TransportMode::Drive, 800, 8), route(TransportMode::Train, 450, 4)};
    const auto opts = feasible_modes(a, b, r, {}, tables);
    ASSERT_EQ(opts.size(), 3u);
    EXPECT_EQ(opts[0].mode, TransportMode::Flight);
    EXPECT_NEAR(opts[0].distance_km, 420 * 1.09, 1e-9);
    EXPECT_NEAR(opts[0].emissions_kg, 0.155 * 420 * 1.09, 1e-9);
    EXPECT_NEAR(opts[0].cost_eur, 0.15 * 420 * 1.09, 1e-9);
    EXPECT_NEAR(opts[1].emissions_kg, 76.8, 1e-9);
    EXPECT_NEAR(opts[1].cost_eur, 80.0, 1e-9);
    EXPECT_NEAR(opts[2].cost_eur, 63.0, 1e-9);
    EXPECT_NEAR(opts[2].emissions_kg, 10.8, 1e-9);
}

TEST_F(FeasibleModes, FlightNeedsAirportsAndACostableCarrier) {
    std::vector<RouteRecord> r{route(TransportMode::Flight, 420, 1.2, "AB+CD"),
                               route(TransportMode::Flight, 420, 1.1, "CD"),
                               route(TransportMode::Flight, 420, 1.0, "AB")};
    std::vector<std::string> notes;
    auto opts = feasible_modes(a, b, r, {}, tables, &notes);
    ASSERT_EQ(opts.size(), 1u);
    EXPECT_EQ(opts[0].carrier, "CD");  // cheapest
    EXPECT_FALSE(notes.empty());

    r = {route(TransportMode::Flight, 420, 1.2, "AB+CD")};
    EXPECT_TRUE(feasible_modes(a, b, r, {}, tables).empty());

    CityRecord no_airport = b;
    no_airport.airports.clear();
    r = {route(TransportMode::Flight, 420, 1.0, "AB")};
    EXPECT_TRUE(feasible_modes(a, no_airport, r, {}, tables).empty());
}

TEST(Tradeoff, WorkedExample) {
    const std::vector<TripOption> opts{option(TransportMode::Flight, 2, 120, 150),
                                       option(TransportMode::Train, 6, 12, 70),
                                       option(TransportMode::Drive, 8, 48, 60)};
    const auto z = emissions_tradeoff_index(opts, published_alpha());
    EXPECT_NEAR(z.modes[0].score, 0.649, 1e-5);
    EXPECT_NEAR(z.modes[1].score, 0.28255, 1e-5);
    EXPECT_NEAR(z.modes[2].score, 0.42467, 1e-5);
    EXPECT_NEAR(z.index, 0.28255, 1e-5);
    EXPECT_EQ(z.best_mode, TransportMode::Train);
}

TEST(Tradeoff, DegenerateSets) {
    const auto single = emissions_tradeoff_index(std::vector{option(TransportMode::Train, 3, 5, 20)},
                                                 published_alpha());
    EXPECT_EQ(single.index, 0.0);
    EXPECT_EQ(single.best_mode, TransportMode::Train);
    const auto twins = emissions_tradeoff_index(
        std::vector{option(TransportMode::Train, 3, 5, 20), option(TransportMode::Drive, 3, 5, 20)},
        published_alpha());
    EXPECT_EQ(twins.index, 0.0);
    EXPECT_EQ(twins.best_mode, TransportMode::Drive);
    EXPECT_THROW(emissions_tradeoff_index(std::vector<TripOption>{}, published_alpha()), DomainError);
}

TEST(Tradeoff, RejectsBadWeights) {
    TradeoffWeights w;
    w.values = {0.5, 0.5, 0.1};
    EXPECT_THROW(emissions_tradeoff_index(std::vector{option(TransportMode::Train, 1, 1, 1)}, w),
                 DomainError);
}

TEST(Tradeoff, MatchesReferenceAndStaysInUnitInterval) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.5, 40.0);
    const auto w = default_weights().normalized().tradeoff;
    for (int k = 0; k < 500; ++k) {
        std::vector<TripOption> opts;
        std::vector<oracle::Option> ref;
        const int n = 1 + k % 3;
        for (int i = 0; i < n; ++i) {
            opts.push_back(option(kAllModes[i], u(rng), u(rng) * 3, u(rng) * 5));
            ref.push_back({opts.back().travel_time_h, opts.back().emissions_kg, opts.back().cost_eur});
        }
        const auto z = emissions_tradeoff_index(opts, w);
        const auto zs = oracle::mode_scores(ref, w[0], w[1], w[2]);
        for (int i = 0; i < n; ++i) ASSERT_NEAR(z.modes[i].score, zs[i], 1e-12);
        ASSERT_NEAR(z.index, *std::min_element(zs.begin(), zs.end()), 1e-12);
        ASSERT_GE(z.index, 0.0);
        ASSERT_LE(z.index, 1.0);
    }
}

TEST(Tradeoff, InteriorImprovementNeverRaisesTheIndex) {
    // with the per-element ranges held fixed only the improved option moves
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(1.0, 30.0);
    const auto w = default_weights().normalized().tradeoff;
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
        std::vector<TripOption> opts{option(TransportMode::Flight, u(rng), u(rng), u(rng)),
                                     option(TransportMode::Drive, u(rng), u(rng), u(rng)),
                                     option(TransportMode::Train, u(rng), u(rng), u(rng))};
        const double before = emissions_tradeoff_index(opts, w).index;
        auto& o = opts[k % 3];
        double* field = k % 9 / 3 == 0 ? &o.travel_time_h : k % 9 / 3 == 1 ? &o.emissions_kg : &o.cost_eur;
        double lo = 1e300;
        for (const auto& x : opts) {
            const double v = field == &o.travel_time_h ? x.travel_time_h
                             : field == &o.emissions_kg ? x.emissions_kg : x.cost_eur;
            lo = std::min(lo, v);
        }
        bool is_max = true;
        for (const auto& x : opts) {
            const double v = field == &o.travel_time_h ? x.travel_time_h
                             : field == &o.emissions_kg ? x.emissions_kg : x.cost_eur;
            if (&x != &o && v >= *field) is_max = false;
        }
        const double improved = *field * 0.9;
        if (is_max || improved < lo) continue;  // would move a range endpoint
        *field = improved;
        ++checked;
        ASSERT_LE(emissions_tradeoff_index(opts, w).index, before + 1e-12);
    }
    EXPECT_GT(checked, 100);
}

TEST(Tradeoff, MovingAnEndpointCanRaiseTheIndex) {
    // lowering the fastest time stretches the range and pushes the others up
    const auto w = default_weights().normalized().tradeoff;
    std::vector<TripOption> opts{option(TransportMode::Flight, 2, 100, 100),
                                 option(TransportMode::Drive, 3, 40, 40),
                                 option(TransportMode::Train, 4, 10, 50)};
    const auto before = emissions_tradeoff_index(opts, w);
    EXPECT_EQ(before.best_mode, TransportMode::Drive);
    opts[0].travel_time_h = 1;
    const auto after = emissions_tradeoff_index(opts, w);
    EXPECT_EQ(after.best_mode, TransportMode::Drive);
    EXPECT_GT(after.index, before.index + 0.05);
}

TEST(Tradeoff, UnitConversionIsBitIdentical) {
    // on a grid of quarter hours and whole euros both conversions are exact,
    // so min-max sees the same ratios
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> quarters(2, 64);
    std::uniform_int_distribution<int> euros(5, 900);
    std::uniform_real_distribution<double> kg(1.0, 300.0);
    const auto w = published_alpha();
    for (int k = 0; k < 200; ++k) {
        std::vector<TripOption> opts;
        for (int i = 0; i < 3; ++i) {
            opts.push_back(option(kAllModes[i], quarters(rng) / 4.0, kg(rng), euros(rng)));
        }
        auto cents = opts;
        auto minutes = opts;
        for (auto& o : cents) o.cost_eur *= 100;
        for (auto& o : minutes) o.travel_time_h *= 60;
        const auto base = emissions_tradeoff_index(opts, w);
        for (const auto& variant : {cents, minutes}) {
            const auto z = emissions_tradeoff_index(variant, w);
            ASSERT_EQ(z.index, base.index);
            ASSERT_EQ(z.best_mode, base.best_mode);
            for (int i = 0; i < 3; ++i) {
                ASSERT_EQ(z.modes[i].score, base.modes[i].score);
                ASSERT_EQ(z.modes[i].tau_cost, base.modes[i].tau_cost);
                ASSERT_EQ(z.modes[i].tau_travel_time, base.modes[i].tau_travel_time);
            }
        }
    }
}

TEST(Tradeoff, NormalizedWeightsKeepTheBestMode) {
    const std::vector<TripOption> opts{option(TransportMode::Flight, 2, 120, 150),
                                       option(TransportMode::Train, 6, 12, 70),
                                       option(TransportMode::Drive, 8, 48, 60)};
    TradeoffWeights scaled;
    scaled.values = {0.352 / 1.001, 0.218 / 1.001, 0.431 / 1.001};
    EXPECT_EQ(emissions_tradeoff_index(opts, scaled).best_mode, TransportMode::Train);
}

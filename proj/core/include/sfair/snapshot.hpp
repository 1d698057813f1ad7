#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sfair/date.hpp"
#include "sfair/popularity.hpp"
#include "sfair/seasonality.hpp"
#include "sfair/transport.hpp"
#include "sfair/types.hpp"
#include "sfair/weights.hpp"

namespace sfair {

inline constexpr std::uint32_t kSnapshotFormatVersion = 1;

struct CalendarWindow {
    std::optional<Date> first;
    std::optional<Date> last;
    bool operator==(const CalendarWindow&) const = default;
};

// Everything ingested from the data directory. Cities are ordered by
// population (descending, ties by id); routes by (origin, destination, mode,
// source, carrier).
struct DatasetInputs {
    std::size_t corpus_size = 200;
    std::vector<CityRecord> cities;
    std::vector<RouteRecord> routes;
    std::map<std::string, MonthlyVisitorSeries> visitors;
    std::map<std::string, DailyRateSeries> daily_rates;
    std::map<std::string, PopularityRaw> popularity;
    CostTables costs;
    EmissionFactors factors;
    WeightConfig weights;
    CalendarWindow calendar_window;

    bool operator==(const DatasetInputs&) const = default;
};

using CityPair = std::pair<std::string, std::string>;

// Weight-independent quantities computed once per snapshot.
struct CityDerived {
    std::optional<PopularityComponents> popularity;
    SeasonalGinis ginis;
    MonthArray<std::optional<double>> mean_adr{};
};

struct DerivedData {
    std::map<std::string, CityDerived> cities;
    std::map<CityPair, std::vector<TripOption>> trips;
    // Non-fatal observations made while deriving (dropped options, ...).
    std::vector<std::string> notes;
};

// Immutable, digest-identified dataset plus derived indices. The digest is
// the SHA-256 of the canonical encoding of the inputs, so identical inputs
// always produce the same digest.
class Snapshot {
public:
    static Snapshot build(DatasetInputs inputs, std::string ingested_at = {});

    const DatasetInputs& inputs() const noexcept { return inputs_; }
    const DerivedData& derived() const noexcept { return derived_; }
    const std::string& digest() const noexcept { return digest_; }
    const std::string& ingested_at() const noexcept { return ingested_at_; }
    const std::vector<CityRecord>& cities() const noexcept { return inputs_.cities; }

    const CityRecord* find_city(std::string_view id) const;
    const CityDerived* find_derived(std::string_view id) const;
    std::span<const TripOption> trips(std::string_view origin, std::string_view destination) const;

private:
    Snapshot() = default;

    DatasetInputs inputs_;
    DerivedData derived_;
    std::map<std::string, std::size_t, std::less<>> city_index_;
    std::string digest_;
    std::string ingested_at_;
};

// Canonical byte encoding of the inputs (CBOR); the digest is taken over it.
std::vector<std::uint8_t> encode_inputs(const DatasetInputs& inputs);
DatasetInputs decode_inputs(std::span<const std::uint8_t> bytes);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

// File layout (little-endian):
//   magic "SFAIRSNP" | u32 version | 32-byte SHA-256 of the payload |
//   u32 metadata length | metadata (CBOR) | u64 payload length | payload (CBOR)
std::vector<std::uint8_t> serialize_snapshot(const Snapshot& snapshot);
Snapshot deserialize_snapshot(std::span<const std::uint8_t> bytes);

void save_snapshot(const Snapshot& snapshot, const std::filesystem::path& path);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace sfair

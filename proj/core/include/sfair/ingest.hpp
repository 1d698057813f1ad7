#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfair/popularity.hpp"
#include "sfair/seasonality.hpp"
#include "sfair/snapshot.hpp"
#include "sfair/transport.hpp"
#include "sfair/types.hpp"
#include "sfair/weights.hpp"

namespace sfair {

enum class Severity { Warning, Error };

struct Issue {
    Severity severity = Severity::Warning;
    std::string file;
    std::size_t line = 0;  // 0 for file-level issues
    std::string message;

    std::string format() const;
};

class ValidationReport {
public:
    void warn(std::string file, std::size_t line, std::string message);
    void error(std::string file, std::size_t line, std::string message);

    bool has_errors() const noexcept;
    std::size_t warning_count() const noexcept;
    const std::vector<Issue>& issues() const noexcept { return issues_; }
    std::vector<std::string> lines() const;

private:
    std::vector<Issue> issues_;
};

// A named input; `name` is what issues refer to.
struct Source {
    std::string name;
    std::string text;
};

inline constexpr std::size_t kDefaultCorpusSize = 200;
inline constexpr long long kMaxCalendarWindowDays = 400;

// Joins cities with their airports, keeps those with at least one airport,
// and returns the `corpus_size` most populous.
std::vector<CityRecord> load_cities(const Source& cities, const Source& airports,
                                    std::size_t corpus_size, ValidationReport& report);

// Validated route records, sorted. Rows sharing (origin, destination, mode,
// source, carrier) collapse to the shortest distance. Blank flight distances
// are filled in from the city coordinates.
std::vector<RouteRecord> load_routes(const Source& routes, std::span<const CityRecord> corpus,
                                     ValidationReport& report);

struct CalendarData {
    std::map<std::string, DailyRateSeries> series;
    CalendarWindow window;
};

// Parses "$1,234.00" style prices. nullopt when no number can be read.
std::optional<double> parse_price(std::string_view text) noexcept;

// City-level daily rate: mean price over listings available that day, or
// over all listed prices when none is available.
CalendarData load_calendar(const Source& calendar, std::span<const CityRecord> corpus,
                           ValidationReport& report);

std::map<std::string, MonthlyVisitorSeries> load_avc(const Source& avc,
                                                     std::span<const CityRecord> corpus,
                                                     ValidationReport& report);

// Joins popularity counts with the weekly search-interest file; the trends
// index is the arithmetic mean of the weekly values.
std::map<std::string, PopularityRaw> load_popularity(const Source& popularity, const Source& trends,
                                                     std::span<const CityRecord> corpus,
                                                     ValidationReport& report);

CostTables load_costs(const Source& costs, ValidationReport& report);
WeightConfig load_weights(const std::optional<Source>& weights, ValidationReport& report);
EmissionFactors load_factors(const std::optional<Source>& factors, ValidationReport& report);

struct IngestOptions {
    std::size_t corpus_size = kDefaultCorpusSize;
    std::string ingested_at;  // left empty: current UTC time
};

struct IngestOutcome {
    std::optional<Snapshot> snapshot;
    ValidationReport report;
};

// Cross-validates the loaded inputs and builds the snapshot. Refuses an
// empty corpus.
std::optional<Snapshot> build_snapshot(DatasetInputs inputs, ValidationReport& report,
                                       std::string ingested_at = {});

// Required files: cities.csv airports.csv routes.csv avc.csv calendar.csv
// popularity.csv gt.csv costs.json. Optional: weights.json factors.json.
IngestOutcome ingest_directory(const std::filesystem::path& data_dir, const IngestOptions& options);

std::string utc_timestamp_now();

}  // namespace sfair

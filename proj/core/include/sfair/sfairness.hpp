#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfair/popularity.hpp"
#include "sfair/snapshot.hpp"
#include "sfair/transport.hpp"
#include "sfair/weights.hpp"

namespace sfair {

// psi = a*Z + b*rho + c*sigma. Lower is more sustainable.
double s_fairness(double tradeoff, double popularity, double seasonality,
                  const CompositeWeights& weights);

// round(psi * 100), halves away from zero.
int display_score(double psi);

enum class SustainabilityLabel { High, Medium, Low };

std::string_view to_string(SustainabilityLabel label) noexcept;
std::optional<SustainabilityLabel> parse_label(std::string_view text) noexcept;

// Nearest-rank percentile labels on the descending order: values reaching
// the top 5% threshold are High, the top 50% Medium, the rest Low. Output is
// aligned with the input.
std::vector<SustainabilityLabel> percentile_labels(std::span<const double> values);

enum class SortKey { Psi, Tradeoff, Popularity, Seasonality };

std::string_view to_string(SortKey key) noexcept;
std::optional<SortKey> parse_sort_key(std::string_view text) noexcept;

struct RankFilters {
    std::optional<double> max_psi;
    std::optional<SustainabilityLabel> popularity_label;
    std::optional<SustainabilityLabel> seasonality_label;
    std::optional<std::string> country;
    std::optional<TransportMode> mode;
};

struct RankQuery {
    std::string origin;
    unsigned month = 1;
    WeightConfig weights = default_weights();
    SortKey sort = SortKey::Psi;
    RankFilters filters;
    std::optional<std::size_t> limit;
};

struct ModeDetail {
    TripOption option;
    ModeScore score;
};

struct Recommendation {
    std::size_t rank = 0;
    std::string city_id;
    std::string city_name;
    std::string country;
    double psi = 0.0;
    int display = 0;
    double tradeoff = 0.0;
    double popularity = 0.0;
    double seasonality = 0.0;
    SustainabilityLabel popularity_label = SustainabilityLabel::Low;
    SustainabilityLabel seasonality_label = SustainabilityLabel::Low;
    TransportMode best_mode = TransportMode::Flight;
    std::vector<ModeDetail> modes;
};

// Which inputs a city's indices could draw on.
struct Completeness {
    bool popularity = false;
    bool trends = false;
    bool visitor_counts = false;
    bool daily_rates = false;  // for the queried month
};

// Origin-independent indices of one city for one month.
struct CityIndexView {
    std::string city_id;
    std::string city_name;
    std::string country;
    unsigned month = 1;
    std::optional<PopularityComponents> components;
    std::optional<double> popularity;
    std::optional<SustainabilityLabel> popularity_label;
    std::optional<double> gini_avc;
    std::optional<double> gini_adr;
    std::optional<double> seasonality;
    std::optional<SustainabilityLabel> seasonality_label;
    Completeness completeness;
};

// rho and sigma(month) for every city of the snapshot, with labels computed
// over the cities where the index is present.
struct CorpusScores {
    std::map<std::string, double> popularity;
    std::map<std::string, SustainabilityLabel> popularity_labels;
    std::map<std::string, double> seasonality;
    std::map<std::string, SustainabilityLabel> seasonality_labels;
};

CorpusScores corpus_scores(const Snapshot& snapshot, unsigned month, const WeightConfig& weights);

CityIndexView city_indices(const Snapshot& snapshot, std::string_view city_id, unsigned month,
                           const WeightConfig& weights);

struct Ranking {
    std::vector<Recommendation> items;
    // Destinations without a complete set of indices this month.
    std::vector<std::string> unscored;
};

// Ranks every scoreable destination other than the origin, ascending by the
// sort key (psi by default), ties by city name then id. Throws NotFound for
// an unknown origin and DomainError for a bad month or weight vector.
Ranking rank_destinations(const Snapshot& snapshot, const RankQuery& query);

}  // namespace sfair

#include "sfair/sfairness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <tuple>

#include "sfair/error.hpp"
#include "sfair/seasonality.hpp"

namespace sfair {

double s_fairness(double tradeoff, double popularity, double seasonality,
                  const CompositeWeights& weights) {
    weights.validate(kPublishedSumTolerance, "composite");
    for (double v : {tradeoff, popularity, seasonality}) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw DomainError("S-Fairness component " + std::to_string(v) + " outside [0, 1]");
        }
    }
    return weights.tradeoff() * tradeoff + weights.popularity() * popularity +
           weights.seasonality() * seasonality;
}

int display_score(double psi) {
    if (!(psi >= 0.0 && psi <= 1.0)) {
        throw DomainError("S-Fairness indicator " + std::to_string(psi) + " outside [0, 1]");
    }
    return static_cast<int>(std::lround(psi * 100.0));
}

std::string_view to_string(SustainabilityLabel label) noexcept {
    switch (label) {
        case SustainabilityLabel::High: return "high";
        case SustainabilityLabel::Medium: return "medium";
        case SustainabilityLabel::Low: return "low";
    }
    return "unknown";
}

namespace {

bool iequals(std::string_view a, std::string_view b) noexcept {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

}  // namespace

std::optional<SustainabilityLabel> parse_label(std::string_view text) noexcept {
    if (iequals(text, "high")) return SustainabilityLabel::High;
    if (iequals(text, "medium")) return SustainabilityLabel::Medium;
    if (iequals(text, "low")) return SustainabilityLabel::Low;
    return std::nullopt;
}

std::vector<SustainabilityLabel> percentile_labels(std::span<const double> values) {
    if (values.empty()) return {};
    std::vector<double> descending(values.begin(), values.end());
    std::sort(descending.begin(), descending.end(), std::greater<>());
    const std::size_t n = descending.size();
    // Nearest rank: ceil(p * n) with p = 5% and 50%, in integer arithmetic.
    const std::size_t high_rank = std::max<std::size_t>(1, (5 * n + 99) / 100);
    const std::size_t medium_rank = (n + 1) / 2;
    const double high_threshold = descending[high_rank - 1];
    const double medium_threshold = descending[medium_rank - 1];

    std::vector<SustainabilityLabel> out;
    out.reserve(n);
    for (double v : values) {
        if (v >= high_threshold) {
            out.push_back(SustainabilityLabel::High);
        } else if (v >= medium_threshold) {
            out.push_back(SustainabilityLabel::Medium);
        } else {
            out.push_back(SustainabilityLabel::Low);
        }
    }
    return out;
}

std::string_view to_string(SortKey key) noexcept {
    switch (key) {
        case SortKey::Psi: return "psi";
        case SortKey::Tradeoff: return "tradeoff";
        case SortKey::Popularity: return "popularity";
        case SortKey::Seasonality: return "seasonality";
    }
    return "unknown";
}

std::optional<SortKey> parse_sort_key(std::string_view text) noexcept {
    if (iequals(text, "psi") || iequals(text, "sfairness")) return SortKey::Psi;
    if (iequals(text, "tradeoff") || iequals(text, "z")) return SortKey::Tradeoff;
    if (iequals(text, "popularity") || iequals(text, "rho")) return SortKey::Popularity;
    if (iequals(text, "seasonality") || iequals(text, "sigma")) return SortKey::Seasonality;
    return std::nullopt;
}

namespace {

WeightConfig effective_weights(const WeightConfig& weights) {
    weights.validate(kPublishedSumTolerance);
    return weights.normalized();
}

std::map<std::string, SustainabilityLabel> label_map(const std::map<std::string, double>& values) {
    std::vector<double> flat;
    for (const auto& [_, v] : values) flat.push_back(v);
    const auto labels = percentile_labels(flat);
    std::map<std::string, SustainabilityLabel> out;
    std::size_t i = 0;
    for (const auto& [id, _] : values) out.emplace(id, labels[i++]);
    return out;
}

CorpusScores scores_with(const Snapshot& snapshot, unsigned month, const WeightConfig& w) {
    CorpusScores out;
    for (const auto& city : snapshot.cities()) {
        const CityDerived* d = snapshot.find_derived(city.id);
        if (!d) continue;
        if (d->popularity) out.popularity.emplace(city.id, popularity_index(*d->popularity, w.popularity));
        if (auto s = seasonality_index(d->ginis.gini_avc, d->ginis.gini_adr[month - 1], w.seasonality)) {
            out.seasonality.emplace(city.id, *s);
        }
    }
    out.popularity_labels = label_map(out.popularity);
    out.seasonality_labels = label_map(out.seasonality);
    return out;
}

double sort_value(const Recommendation& r, SortKey key) {
    switch (key) {
        case SortKey::Psi: return r.psi;
        case SortKey::Tradeoff: return r.tradeoff;
        case SortKey::Popularity: return r.popularity;
        case SortKey::Seasonality: return r.seasonality;
    }
    return r.psi;
}

bool passes(const Recommendation& r, const RankFilters& f) {
    if (f.max_psi && r.psi > *f.max_psi) return false;
    if (f.popularity_label && r.popularity_label != *f.popularity_label) return false;
    if (f.seasonality_label && r.seasonality_label != *f.seasonality_label) return false;
    if (f.country && r.country != *f.country) return false;
    if (f.mode) {
        const bool has = std::any_of(r.modes.begin(), r.modes.end(),
                                     [&](const ModeDetail& m) { return m.option.mode == *f.mode; });
        if (!has) return false;
    }
    return true;
}

}  // namespace

CorpusScores corpus_scores(const Snapshot& snapshot, unsigned month, const WeightConfig& weights) {
    check_month(month);
    return scores_with(snapshot, month, effective_weights(weights));
}

CityIndexView city_indices(const Snapshot& snapshot, std::string_view city_id, unsigned month,
                           const WeightConfig& weights) {
    check_month(month);
    const CityRecord* city = snapshot.find_city(city_id);
    if (!city) throw NotFound("unknown city '" + std::string(city_id) + "'");
    const WeightConfig w = effective_weights(weights);
    const CorpusScores scores = scores_with(snapshot, month, w);
    const CityDerived& d = *snapshot.find_derived(city_id);

    CityIndexView view;
    view.city_id = city->id;
    view.city_name = city->name;
    view.country = city->country;
    view.month = month;
    view.components = d.popularity;
    if (auto it = scores.popularity.find(city->id); it != scores.popularity.end()) {
        view.popularity = it->second;
        view.popularity_label = scores.popularity_labels.at(city->id);
    }
    view.gini_avc = d.ginis.gini_avc;
    view.gini_adr = d.ginis.gini_adr[month - 1];
    if (auto it = scores.seasonality.find(city->id); it != scores.seasonality.end()) {
        view.seasonality = it->second;
        view.seasonality_label = scores.seasonality_labels.at(city->id);
    }
    view.completeness.popularity = d.popularity.has_value();
    view.completeness.trends = d.popularity && d.popularity->trends.has_value();
    view.completeness.visitor_counts = d.ginis.gini_avc.has_value();
    view.completeness.daily_rates = view.gini_adr.has_value();
    return view;
}

Ranking rank_destinations(const Snapshot& snapshot, const RankQuery& query) {
    check_month(query.month);
    const CityRecord* origin = snapshot.find_city(query.origin);
    if (!origin) throw NotFound("unknown origin '" + query.origin + "'");
    const WeightConfig w = effective_weights(query.weights);
    const CorpusScores scores = scores_with(snapshot, query.month, w);

    Ranking ranking;
    for (const auto& city : snapshot.cities()) {
        if (city.id == origin->id) continue;
        const auto options = snapshot.trips(origin->id, city.id);
        const auto rho = scores.popularity.find(city.id);
        const auto sigma = scores.seasonality.find(city.id);
        if (options.empty() || rho == scores.popularity.end() || sigma == scores.seasonality.end()) {
            ranking.unscored.push_back(city.id);
            continue;
        }
        const TradeoffBreakdown tradeoff = emissions_tradeoff_index(options, w.tradeoff);

        Recommendation r;
        r.city_id = city.id;
        r.city_name = city.name;
        r.country = city.country;
        r.tradeoff = tradeoff.index;
        r.popularity = rho->second;
        r.seasonality = sigma->second;
        r.psi = s_fairness(r.tradeoff, r.popularity, r.seasonality, w.composite);
        r.display = display_score(r.psi);
        r.popularity_label = scores.popularity_labels.at(city.id);
        r.seasonality_label = scores.seasonality_labels.at(city.id);
        r.best_mode = tradeoff.best_mode;
        for (std::size_t i = 0; i < options.size(); ++i) {
            r.modes.push_back(ModeDetail{options[i], tradeoff.modes[i]});
        }
        if (passes(r, query.filters)) ranking.items.push_back(std::move(r));
    }

    const SortKey key = query.sort;
    std::sort(ranking.items.begin(), ranking.items.end(),
              [key](const Recommendation& a, const Recommendation& b) {
                  const double ka = sort_value(a, key);
                  const double kb = sort_value(b, key);
                  return std::tie(ka, a.psi, a.city_name, a.city_id) <
                         std::tie(kb, b.psi, b.city_name, b.city_id);
              });
    if (query.limit && ranking.items.size() > *query.limit) ranking.items.resize(*query.limit);
    for (std::size_t i = 0; i < ranking.items.size(); ++i) ranking.items[i].rank = i + 1;
    std::sort(ranking.unscored.begin(), ranking.unscored.end());
    return ranking;
}

}  // namespace sfair

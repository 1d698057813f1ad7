#include "sfair/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "sfair/csv.hpp"

namespace sfair {

using nlohmann::json;

namespace {

template <typename T>
json nullable(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json label_json(const std::optional<SustainabilityLabel>& label) {
    return label ? json(std::string(to_string(*label))) : json(nullptr);
}

std::string fixed(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

}  // namespace

json to_json(const CityRecord& city) {
    return {{"id", city.id},
            {"name", city.name},
            {"country", city.country},
            {"lat", city.location.lat},
            {"lon", city.location.lon},
            {"population", city.population},
            {"airports", city.airports}};
}

json to_json(const TripOption& option) {
    return {{"mode", std::string(to_string(option.mode))},
            {"distance_km", option.distance_km},
            {"travel_time_h", option.travel_time_h},
            {"emissions_kg", option.emissions_kg},
            {"cost_eur", option.cost_eur},
            {"carrier", nullable(option.carrier)},
            {"fuel_emissions_kg", nullable(option.fuel_emissions_kg)}};
}

json to_json(const Recommendation& item) {
    json modes = json::array();
    for (const auto& m : item.modes) {
        json entry = to_json(m.option);
        entry["tau"] = {{"travel_time", m.score.tau_travel_time},
                        {"emissions", m.score.tau_emissions},
                        {"cost", m.score.tau_cost}};
        entry["score"] = m.score.score;
        modes.push_back(std::move(entry));
    }
    return {{"rank", item.rank},
            {"city", {{"id", item.city_id}, {"name", item.city_name}, {"country", item.country}}},
            {"psi", item.psi},
            {"score", item.display},
            {"tradeoff", item.tradeoff},
            {"popularity", item.popularity},
            {"seasonality", item.seasonality},
            {"labels",
             {{"popularity", std::string(to_string(item.popularity_label))},
              {"seasonality", std::string(to_string(item.seasonality_label))}}},
            {"best_mode", std::string(to_string(item.best_mode))},
            {"modes", std::move(modes)}};
}

json to_json(const CityIndexView& view) {
    json components = nullptr;
    if (view.components) {
        components = {{"poi", view.components->poi},
                      {"ugc", view.components->ugc},
                      {"trends", nullable(view.components->trends)}};
    }
    return {{"city", {{"id", view.city_id}, {"name", view.city_name}, {"country", view.country}}},
            {"month", view.month},
            {"popularity", nullable(view.popularity)},
            {"popularity_components", std::move(components)},
            {"gini_avc", nullable(view.gini_avc)},
            {"gini_adr", nullable(view.gini_adr)},
            {"seasonality", nullable(view.seasonality)},
            {"labels",
             {{"popularity", label_json(view.popularity_label)},
              {"seasonality", label_json(view.seasonality_label)}}},
            {"completeness",
             {{"popularity", view.completeness.popularity},
              {"trends", view.completeness.trends},
              {"visitor_counts", view.completeness.visitor_counts},
              {"daily_rates", view.completeness.daily_rates}}}};
}

json ranking_to_json(const Snapshot& snapshot, const RankQuery& query, const Ranking& ranking) {
    json items = json::array();
    for (const auto& r : ranking.items) items.push_back(to_json(r));
    return {{"snapshot", snapshot.digest()},
            {"origin", query.origin},
            {"month", query.month},
            {"sort", std::string(to_string(query.sort))},
            {"weights", weights_to_json(query.weights.normalized())},
            {"count", ranking.items.size()},
            {"recommendations", std::move(items)},
            {"unscored", ranking.unscored}};
}

std::string ranking_to_csv(const Ranking& ranking) {
    std::string out =
        "rank,city_id,city,psi,score,tradeoff,popularity,seasonality,popularity_label,"
        "seasonality_label,best_mode\n";
    for (const auto& r : ranking.items) {
        out += std::to_string(r.rank) + ',' + csv_escape(r.city_id) + ',' + csv_escape(r.city_name) +
               ',' + fixed(r.psi) + ',' + std::to_string(r.display) + ',' + fixed(r.tradeoff) + ',' +
               fixed(r.popularity) + ',' + fixed(r.seasonality) + ',' +
               std::string(to_string(r.popularity_label)) + ',' +
               std::string(to_string(r.seasonality_label)) + ',' +
               std::string(to_string(r.best_mode)) + '\n';
    }
    return out;
}

std::string ranking_to_table(const Ranking& ranking) {
    const std::vector<std::string> header = {"#",       "city",   "psi",        "score",   "Z",
                                             "rho",     "sigma",  "popularity", "season", "best"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : ranking.items) {
        rows.push_back({std::to_string(r.rank), r.city_name, fixed(r.psi, 4), std::to_string(r.display),
                        fixed(r.tradeoff, 4), fixed(r.popularity, 4), fixed(r.seasonality, 4),
                        std::string(to_string(r.popularity_label)),
                        std::string(to_string(r.seasonality_label)),
                        std::string(to_string(r.best_mode))});
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << "  ";
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size(), ' ');
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out.str();
}

std::string dump_json(const json& doc) { return doc.dump(); }

}  // namespace sfair

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sfair/sfairness.hpp"
#include "sfair/snapshot.hpp"

namespace sfair {

nlohmann::json to_json(const Recommendation& item);
nlohmann::json to_json(const CityIndexView& view);
nlohmann::json to_json(const CityRecord& city);
nlohmann::json to_json(const TripOption& option);
nlohmann::json ranking_to_json(const Snapshot& snapshot, const RankQuery& query,
                               const Ranking& ranking);

// Columns: rank,city_id,city,psi,score,tradeoff,popularity,seasonality,
// popularity_label,seasonality_label,best_mode. Reals with six decimals.
std::string ranking_to_csv(const Ranking& ranking);
std::string ranking_to_table(const Ranking& ranking);

// Compact JSON with doubles written at full round-trip precision.
std::string dump_json(const nlohmann::json& doc);

}  // namespace sfair

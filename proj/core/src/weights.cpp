#include "sfair/weights.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "sfair/csv.hpp"
#include "sfair/error.hpp"

namespace sfair {

template <std::size_t N>
void WeightGroup<N>::validate(double tolerance, std::string_view group_name) const {
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError(std::string(group_name) + " weights must be finite and nonnegative");
        }
    }
    const double s = sum();
    if (std::abs(s - 1.0) > tolerance) {
        throw DomainError(std::string(group_name) + " weights sum to " + std::to_string(s) +
                          ", expected 1");
    }
}

template <std::size_t N>
WeightGroup<N> WeightGroup<N>::normalized() const {
    const double s = sum();
    if (!(s > 0.0)) throw DomainError("cannot normalize a zero weight group");
    WeightGroup out = *this;
    for (double& v : out.values) v /= s;
    return out;
}

template struct WeightGroup<2>;
template struct WeightGroup<3>;

void WeightConfig::validate(double tolerance) const {
    tradeoff.validate(tolerance, "tradeoff");
    popularity.validate(tolerance, "popularity");
    seasonality.validate(tolerance, "seasonality");
    composite.validate(tolerance, "composite");
}

WeightConfig WeightConfig::normalized() const {
    WeightConfig out;
    out.tradeoff.values = tradeoff.normalized().values;
    out.popularity.values = popularity.normalized().values;
    out.seasonality.values = seasonality.normalized().values;
    out.composite.values = composite.normalized().values;
    return out;
}

WeightConfig default_weights() {
    WeightConfig w;
    w.tradeoff.values = {0.352, 0.218, 0.431};
    w.popularity.values = {0.469, 0.325, 0.206};
    w.seasonality.values = {0.443, 0.557};
    w.composite.values = {0.281, 0.334, 0.385};
    return w;
}

double likert_mean(std::span<const int> scores) {
    if (scores.empty()) throw DomainError("Likert mean of an empty score list");
    long long total = 0;
    for (int s : scores) {
        if (s < 1 || s > 5) {
            throw DomainError("Likert score " + std::to_string(s) + " outside 1..5");
        }
        total += s;
    }
    return static_cast<double>(total) / static_cast<double>(scores.size());
}

std::vector<double> normalize_group(std::span<const double> raw_averages) {
    if (raw_averages.size() < 2) throw DomainError("a weight group needs at least two factors");
    for (double a : raw_averages) {
        if (!std::isfinite(a) || !(a > 0.0)) {
            throw DomainError("raw factor averages must be positive");
        }
    }
    const double total = std::accumulate(raw_averages.begin(), raw_averages.end(), 0.0);
    std::vector<double> out(raw_averages.begin(), raw_averages.end());
    for (double& v : out) v /= total;
    return out;
}

namespace {

struct GroupSpec {
    std::string_view name;
    std::array<std::string_view, 3> factors;
    std::size_t size;
};

constexpr GroupSpec kGroups[] = {
    {"tradeoff", {"travel_time", "emissions", "cost"}, 3},
    {"popularity", {"poi", "ugc", "trends"}, 3},
    {"seasonality", {"avc", "adr", ""}, 2},
    {"composite", {"tradeoff", "popularity", "seasonality"}, 3},
};

double* group_slot(WeightConfig& w, std::size_t group, std::size_t factor) {
    switch (group) {
        case 0: return &w.tradeoff.values[factor];
        case 1: return &w.popularity.values[factor];
        case 2: return &w.seasonality.values[factor];
        default: return &w.composite.values[factor];
    }
}

}  // namespace

WeightConfig weights_from_json(const nlohmann::json& doc, const WeightConfig& base,
                               double tolerance) {
    if (!doc.is_object()) throw DomainError("weights must be a JSON object");
    for (const auto& [key, _] : doc.items()) {
        bool known = false;
        for (const auto& g : kGroups) known = known || key == g.name;
        if (!known) throw DomainError("unknown weight group '" + key + "'");
    }
    // groups taken over from `base` are not re-checked
    WeightConfig out = base;
    for (std::size_t gi = 0; gi < std::size(kGroups); ++gi) {
        const auto& spec = kGroups[gi];
        const auto it = doc.find(std::string(spec.name));
        if (it == doc.end()) continue;
        if (!it->is_object()) {
            throw DomainError("weight group '" + std::string(spec.name) + "' must be an object");
        }
        if (it->size() != spec.size) {
            throw DomainError("weight group '" + std::string(spec.name) + "' needs exactly " +
                              std::to_string(spec.size) + " factors");
        }
        for (std::size_t fi = 0; fi < spec.size; ++fi) {
            const auto f = it->find(std::string(spec.factors[fi]));
            if (f == it->end() || !f->is_number()) {
                throw DomainError("weight group '" + std::string(spec.name) + "' is missing numeric '" +
                                  std::string(spec.factors[fi]) + "'");
            }
            *group_slot(out, gi, fi) = f->get<double>();
        }
        switch (gi) {
            case 0: out.tradeoff.validate(tolerance, spec.name); break;
            case 1: out.popularity.validate(tolerance, spec.name); break;
            case 2: out.seasonality.validate(tolerance, spec.name); break;
            default: out.composite.validate(tolerance, spec.name); break;
        }
    }
    return out;
}

WeightConfig weights_from_json_text(std::string_view text, const WeightConfig& base,
                                    double tolerance) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("weights are not valid JSON: ") + e.what());
    }
    return weights_from_json(doc, base, tolerance);
}

nlohmann::json weights_to_json(const WeightConfig& weights) {
    nlohmann::json doc = nlohmann::json::object();
    WeightConfig copy = weights;
    for (std::size_t gi = 0; gi < std::size(kGroups); ++gi) {
        const auto& spec = kGroups[gi];
        nlohmann::json group = nlohmann::json::object();
        for (std::size_t fi = 0; fi < spec.size; ++fi) {
            group[std::string(spec.factors[fi])] = *group_slot(copy, gi, fi);
        }
        doc[std::string(spec.name)] = std::move(group);
    }
    return doc;
}

SurveyWeights weights_from_survey(std::string_view csv_text, std::string_view file_name) {
    const CsvTable table = parse_csv(csv_text, file_name);
    if (table.header.empty()) throw ParseError(std::string(file_name), 1, "empty survey file");

    std::vector<std::ptrdiff_t> column_of(kSurveyColumns.size(), -1);
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        bool matched = false;
        for (std::size_t k = 0; k < kSurveyColumns.size(); ++k) {
            if (table.header[c] == kSurveyColumns[k]) {
                if (column_of[k] >= 0) {
                    throw ParseError(std::string(file_name), 1,
                                     "duplicate column '" + table.header[c] + "'");
                }
                column_of[k] = static_cast<std::ptrdiff_t>(c);
                matched = true;
            }
        }
        if (!matched && table.header[c] != "respondent_id") {
            throw ParseError(std::string(file_name), 1, "unknown column '" + table.header[c] + "'");
        }
    }

    std::vector<std::vector<int>> scores(kSurveyColumns.size());
    for (const auto& row : table.rows) {
        if (row.fields.size() != table.header.size()) {
            throw ParseError(std::string(file_name), row.line,
                             "expected " + std::to_string(table.header.size()) + " fields, got " +
                                 std::to_string(row.fields.size()));
        }
        for (std::size_t k = 0; k < kSurveyColumns.size(); ++k) {
            if (column_of[k] < 0) continue;
            const std::string_view cell = trim(row.fields[static_cast<std::size_t>(column_of[k])]);
            if (cell.empty()) continue;
            int value = 0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size() || value < 1 || value > 5) {
                throw ParseError(std::string(file_name), row.line,
                                 "Likert score '" + std::string(cell) + "' in column '" +
                                     std::string(kSurveyColumns[k]) + "' is not an integer 1..5");
            }
            scores[k].push_back(value);
        }
    }

    SurveyWeights result{default_weights(), {}};
    std::size_t first = 0;
    for (std::size_t gi = 0; gi < std::size(kGroups); ++gi) {
        const auto& spec = kGroups[gi];
        std::size_t present = 0;
        for (std::size_t fi = 0; fi < spec.size; ++fi) present += column_of[first + fi] >= 0;
        if (present == 0) {
            result.defaulted_groups.emplace_back(spec.name);
        } else if (present != spec.size) {
            throw ParseError(std::string(file_name), 1,
                             "group '" + std::string(spec.name) + "' is missing factor columns");
        } else {
            std::vector<double> means;
            for (std::size_t fi = 0; fi < spec.size; ++fi) {
                if (scores[first + fi].empty()) {
                    throw ParseError(std::string(file_name), 1,
                                     "no responses for '" +
                                         std::string(kSurveyColumns[first + fi]) + "'");
                }
                means.push_back(likert_mean(scores[first + fi]));
            }
            const auto normalized = normalize_group(means);
            for (std::size_t fi = 0; fi < spec.size; ++fi) {
                *group_slot(result.weights, gi, fi) = normalized[fi];
            }
        }
        first += spec.size;
    }
    return result;
}

}  // namespace sfair

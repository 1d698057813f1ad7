#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace sfair {

// Proleptic Gregorian calendar date.
struct Date {
    int year = 1970;
    unsigned month = 1;
    unsigned day = 1;

    static std::optional<Date> parse_iso(std::string_view text) noexcept;
    std::string iso() const;
    // Days since 1970-01-01.
    long long serial() const noexcept;

    auto operator<=>(const Date&) const = default;
};

bool is_valid_date(int year, unsigned month, unsigned day) noexcept;

}  // namespace sfair

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tcrank {

enum class AdopterClass : std::uint8_t {
    Innovator = 0,
    EarlyAdopter = 1,
    EarlyMajority = 2,
    LateMajority = 3,
    Laggard = 4,
    Unclassified = 255,
};

inline constexpr std::size_t kAdopterClassCount = 5;

inline constexpr std::array<AdopterClass, kAdopterClassCount> kAdopterClasses = {
    AdopterClass::Innovator, AdopterClass::EarlyAdopter, AdopterClass::EarlyMajority,
    AdopterClass::LateMajority, AdopterClass::Laggard};

constexpr std::size_t class_index(AdopterClass c) noexcept { return static_cast<std::size_t>(c); }

constexpr std::string_view class_name(AdopterClass c) noexcept {
    switch (c) {
    case AdopterClass::Innovator: return "innovators";
    case AdopterClass::EarlyAdopter: return "early_adopters";
    case AdopterClass::EarlyMajority: return "early_majority";
    case AdopterClass::LateMajority: return "late_majority";
    case AdopterClass::Laggard: return "laggards";
    case AdopterClass::Unclassified: break;
    }
    return "unclassified";
}

constexpr std::optional<AdopterClass> parse_class(std::string_view s) noexcept {
    for (auto c : kAdopterClasses)
        if (class_name(c) == s) return c;
    return std::nullopt;
}

} // namespace tcrank

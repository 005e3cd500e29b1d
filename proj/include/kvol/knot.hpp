#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace kvol {

/// The three hyperbolic knots with closed-form Kashaev invariants.
enum class KnotId { FourOne, FiveTwo, SixOne };

inline constexpr std::array<KnotId, 3> kAllKnots{KnotId::FourOne, KnotId::FiveTwo, KnotId::SixOne};

/// Table name as used on the command line: "4_1", "5_2", "6_1".
std::string_view knot_name(KnotId knot) noexcept;

std::optional<KnotId> parse_knot(std::string_view name) noexcept;

}  // namespace kvol

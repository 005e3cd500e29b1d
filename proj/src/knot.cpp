#include "kvol/knot.hpp"

namespace kvol {

std::string_view knot_name(KnotId knot) noexcept {
    switch (knot) {
        case KnotId::FourOne: return "4_1";
        case KnotId::FiveTwo: return "5_2";
        case KnotId::SixOne: return "6_1";
    }
    return "?";
}

std::optional<KnotId> parse_knot(std::string_view name) noexcept {
    for (KnotId k : kAllKnots) {
        if (knot_name(k) == name) return k;
    }
    return std::nullopt;
}

}  // namespace kvol

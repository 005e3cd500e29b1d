#pragma once

// Growth-rate extraction: fit log|<L>| ~ a N + b log N + c over a window of
// orders and read off the volume estimate 2 pi a.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "kvol/invariant.hpp"
#include "kvol/knot.hpp"

namespace kvol::asymfit {

enum class GrowthModel { Linear, LinearPlusLog };

std::string_view model_name(GrowthModel model) noexcept;
std::optional<GrowthModel> parse_model(std::string_view name) noexcept;

struct GrowthSeries {
    KnotId knot = KnotId::FourOne;
    std::vector<GrowthPoint> points;
};

struct FitResult {
    GrowthModel model = GrowthModel::LinearPlusLog;
    std::array<double, 3> coefficients{};  ///< (a, b, c); b = 0 for the linear model
    double rms_residual = 0.0;
    double volume_estimate = 0.0;          ///< 2 pi a
    unsigned n_min = 0;
    unsigned n_max = 0;
    std::size_t point_count = 0;
};

struct Window {
    unsigned n_min = 0;
    unsigned n_max = 0;
    unsigned step = 1;
};

/// One logscale growth point per N in n_min, n_min + step, ..., <= n_max.
/// Requires 2 <= n_min < n_max and step >= 1. Orders are evaluated
/// concurrently when options.threads > 1; each evaluation is single-threaded.
GrowthSeries collect_series(KnotId knot, const Window& window, const EvalOptions& options = {});

/// Ordinary least squares. Points are sorted by N first, so the result does
/// not depend on input order. Throws std::invalid_argument on too few points
/// or repeated N, and Error on a rank-deficient design.
FitResult fit_growth(const GrowthSeries& series, GrowthModel model);

struct ClaimReport {
    KnotId knot = KnotId::FourOne;
    FitResult fit;
    double saddle_volume = 0.0;
    double abs_gap = 0.0;
    double rel_gap = 0.0;
    /// The same comparison with n_min doubled.
    FitResult shifted_fit;
    double shifted_rel_gap = 0.0;
    bool gap_shrinks = false;
};

ClaimReport main_claim_report(KnotId knot, const Window& window,
                              GrowthModel model = GrowthModel::LinearPlusLog,
                              const EvalOptions& options = {});

}  // namespace kvol::asymfit

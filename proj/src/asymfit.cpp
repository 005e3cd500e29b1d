#include "kvol/asymfit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "kvol/error.hpp"
#include "kvol/saddle.hpp"

namespace kvol::asymfit {

std::string_view model_name(GrowthModel model) noexcept {
    return model == GrowthModel::Linear ? "linear" : "linear_plus_log";
}

std::optional<GrowthModel> parse_model(std::string_view name) noexcept {
    if (name == "linear") return GrowthModel::Linear;
    if (name == "linear_plus_log") return GrowthModel::LinearPlusLog;
    return std::nullopt;
}

GrowthSeries collect_series(KnotId knot, const Window& window, const EvalOptions& options) {
    if (window.n_min < 2 || window.n_min >= window.n_max || window.step == 0) {
        throw std::invalid_argument("collect_series: need 2 <= n_min < n_max and step >= 1 (got " +
                                    std::to_string(window.n_min) + ", " + std::to_string(window.n_max) +
                                    ", " + std::to_string(window.step) + ")");
    }
    std::vector<unsigned> orders;
    for (unsigned n = window.n_min; n <= window.n_max; n += window.step) orders.push_back(n);

    GrowthSeries series;
    series.knot = knot;
    series.points.resize(orders.size());
    const EvalOptions single{1, options.chunk_size};
    auto work = [&](std::size_t i) { series.points[i] = growth_point(knot, orders[i], single); };

    const std::size_t workers = std::min<std::size_t>(std::max(1u, options.threads), orders.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < orders.size(); ++i) work(i);
        return series;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < orders.size(); i = next++) work(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return series;
}

FitResult fit_growth(const GrowthSeries& series, GrowthModel model) {
    std::vector<GrowthPoint> pts = series.points;
    std::sort(pts.begin(), pts.end(), [](const GrowthPoint& a, const GrowthPoint& b) { return a.n < b.n; });
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].n == pts[i - 1].n) {
            throw std::invalid_argument("fit_growth: repeated N = " + std::to_string(pts[i].n));
        }
    }
    for (const GrowthPoint& p : pts) {
        if (!std::isfinite(p.log_abs)) throw std::invalid_argument("fit_growth: non-finite log_abs");
        if (p.n == 0) throw std::invalid_argument("fit_growth: N must be positive");
    }
    const std::size_t cols = model == GrowthModel::Linear ? 2 : 3;
    const std::size_t needed = model == GrowthModel::Linear ? 2 : 4;
    if (pts.size() < needed) {
        throw std::invalid_argument("fit_growth: model " + std::string(model_name(model)) + " needs at least " +
                                    std::to_string(needed) + " points, got " + std::to_string(pts.size()));
    }

    const auto rows = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd design(rows, static_cast<Eigen::Index>(cols));
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto n = static_cast<double>(pts[static_cast<std::size_t>(i)].n);
        design(i, 0) = n;
        if (cols == 3) {
            design(i, 1) = std::log(n);
            design(i, 2) = 1.0;
        } else {
            design(i, 1) = 1.0;
        }
        rhs(i) = pts[static_cast<std::size_t>(i)].log_abs;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    if (qr.rank() < static_cast<Eigen::Index>(cols)) {
        throw Error("fit_growth: rank-deficient design (collinear columns)");
    }
    const Eigen::VectorXd coef = qr.solve(rhs);
    const Eigen::VectorXd resid = rhs - design * coef;

    FitResult r;
    r.model = model;
    if (cols == 3) {
        r.coefficients = {coef(0), coef(1), coef(2)};
    } else {
        r.coefficients = {coef(0), 0.0, coef(1)};
    }
    r.rms_residual = std::sqrt(resid.squaredNorm() / static_cast<double>(rows));
    r.volume_estimate = 2.0 * std::numbers::pi * r.coefficients[0];
    r.n_min = pts.front().n;
    r.n_max = pts.back().n;
    r.point_count = pts.size();
    return r;
}

ClaimReport main_claim_report(KnotId knot, const Window& window, GrowthModel model, const EvalOptions& options) {
    ClaimReport report;
    report.knot = knot;
    report.saddle_volume = saddle::hyperbolic_volume(knot).volume;

    report.fit = fit_growth(collect_series(knot, window, options), model);
    report.abs_gap = std::abs(report.fit.volume_estimate - report.saddle_volume);
    report.rel_gap = report.abs_gap / report.saddle_volume;

    const Window shifted{2 * window.n_min, window.n_max, window.step};
    report.shifted_fit = fit_growth(collect_series(knot, shifted, options), model);
    report.shifted_rel_gap =
        std::abs(report.shifted_fit.volume_estimate - report.saddle_volume) / report.saddle_volume;
    report.gap_shrinks = report.shifted_rel_gap < report.rel_gap;
    return report;
}

}  // namespace kvol::asymfit

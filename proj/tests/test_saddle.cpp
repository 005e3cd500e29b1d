#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "kvol/error.hpp"
#include "kvol/qdilog.hpp"
#include "kvol/saddle.hpp"

using namespace kvol;
using namespace kvol::saddle;
using std::numbers::pi;

namespace {

double norm_inf(const std::vector<cplx>& v) {
    double m = 0.0;
    for (auto x : v) m = std::max(m, std::abs(x));
    return m;
}

// Holomorphic derivative along each coordinate by a 4-point stencil in the
// imaginary direction, independent of the library's gradient.
std::vector<cplx> gradient_imag_step(KnotId knot, std::vector<cplx> pt) {
    std::vector<cplx> g;
    const double h = 1e-4;
    for (std::size_t i = 0; i < pt.size(); ++i) {
        auto at = [&](double s) {
            auto q = pt;
            q[i] += cplx(0.0, s * h);
            return potential(knot, q).value;
        };
        const cplx d = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
        g.push_back(d / cplx(0.0, 1.0));
    }
    return g;
}

}  // namespace

TEST_CASE("companion-matrix roots") {
    const std::vector<double> cubic{-1.0, 2.0, -3.0, 1.0};
    const auto roots = polynomial_roots(cubic);
    REQUIRE(roots.size() == 3);
    for (auto r : roots) CHECK(std::abs(((r - 3.0) * r + 2.0) * r - 1.0) < 1e-13);
    CHECK(std::any_of(roots.begin(), roots.end(), [](cplx r) { return std::abs(r - 2.324717957244746) < 1e-12; }));
}

TEST_CASE("4_1 stationary points") {
    const auto sols = solve_stationary(KnotId::FourOne);
    REQUIRE(sols.size() == 2);
    for (const auto& s : sols) {
        CHECK(std::abs(s.point[0].real() - 0.5) < 1e-14);
        CHECK(std::abs(std::abs(s.point[0].imag()) - 0.8660254037844386) < 1e-14);
    }
    const auto pick = select_geometric(sols, KnotId::FourOne);
    CHECK(std::abs(pick.point[0] - std::polar(1.0, -pi / 3.0)) < 1e-14);
    CHECK(pick.selected);
}

TEST_CASE("5_2 stationary points") {
    const auto sols = solve_stationary(KnotId::FiveTwo);
    REQUIRE(sols.size() == 3);
    for (const auto& s : sols) {
        CHECK(s.residual < 1e-12);
        CHECK(std::abs(s.point[1] - (1.0 - s.point[0]) * (1.0 - s.point[0])) < 1e-12);
    }
    const auto pick = select_geometric(sols, KnotId::FiveTwo);
    CHECK(std::abs(pick.point[0] - cplx(0.33764102, -0.56227951)) < 1e-8);
    CHECK(std::abs(pick.point[1] - cplx(0.12256117, 0.74486177)) < 1e-8);
}

TEST_CASE("6_1 stationary points") {
    const auto sols = solve_stationary(KnotId::SixOne);
    CHECK_FALSE(sols.empty());
    for (const auto& s : sols) CHECK(norm_inf(stationary_equations(KnotId::SixOne, s.point)) < 1e-12);
    const auto pick = select_geometric(sols, KnotId::SixOne);
    CHECK(pick.point[0].imag() < 0.0);
    CHECK((pick.point[1] * pick.point[2]).imag() > 0.0);
    CHECK_THROWS_AS(select_geometric({}, KnotId::SixOne), SolverError);
}

TEST_CASE("selection rejects ambiguous lists") {
    auto sols = solve_stationary(KnotId::FiveTwo);
    const auto pick = select_geometric(sols, KnotId::FiveTwo);
    sols.push_back(pick);
    CHECK_THROWS_AS(select_geometric(sols, KnotId::FiveTwo), SolverError);
}

TEST_CASE("volumes") {
    CHECK(hyperbolic_volume(KnotId::FourOne).volume == doctest::Approx(2.02988321).epsilon(1e-8));
    CHECK(hyperbolic_volume(KnotId::FiveTwo).volume == doctest::Approx(2.82812208).epsilon(1e-8));
    CHECK(hyperbolic_volume(KnotId::SixOne).volume == doctest::Approx(3.16396322).epsilon(1e-8));
}

TEST_CASE("three routes to the 4_1 volume") {
    const double saddle = hyperbolic_volume(KnotId::FourOne).volume;
    const double lob = 4.0 * qdilog::lobachevsky(pi / 6.0);
    const double li = 2.0 * qdilog::li2(std::polar(1.0, pi / 3.0)).imag();
    CHECK(std::abs(saddle - lob) < 1e-10);
    CHECK(std::abs(saddle - li) < 1e-10);
    CHECK(std::abs(lob - li) < 1e-10);
}

TEST_CASE("potential values") {
    const std::vector<cplx> z0{std::polar(1.0, -pi / 3.0)};
    CHECK(potential(KnotId::FourOne, z0).value.imag() == doctest::Approx(-2.02988321).epsilon(1e-8));
    for (double x : {0.1, 0.4, 0.77}) {
        const std::vector<cplx> z{x};
        CHECK(std::abs(potential(KnotId::FourOne, z).value.imag()) < 1e-12);
    }
    CHECK_THROWS_AS(potential(KnotId::FiveTwo, z0), std::invalid_argument);
}

TEST_CASE("gradient vanishes at the selected saddle") {
    for (KnotId knot : kAllKnots) {
        const auto v = hyperbolic_volume(knot);
        CHECK(norm_inf(numerical_gradient(knot, v.solution.point)) < 1e-6);
        CHECK(norm_inf(gradient_imag_step(knot, v.solution.point)) < 1e-6);
    }
}

TEST_CASE("Newton from random starts lands on a known solution or gives up") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (KnotId knot : kAllKnots) {
        const auto sols = solve_stationary(knot);
        int converged = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<cplx> start;
            for (std::size_t i = 0; i < dimension(knot); ++i) start.emplace_back(d(rng), d(rng));
            const auto r = newton_polish(knot, start);
            if (!r) continue;
            if (std::abs(r->point[0]) < 1e-8) continue;
            ++converged;
            const bool known = std::any_of(sols.begin(), sols.end(), [&](const SaddleSolution& s) {
                double dist = 0.0;
                for (std::size_t i = 0; i < s.point.size(); ++i) dist = std::max(dist, std::abs(s.point[i] - r->point[i]));
                return dist < 1e-8;
            });
            CHECK_MESSAGE(known, knot_name(knot) << " trial " << trial);
        }
        CHECK(converged > 0);
    }
}

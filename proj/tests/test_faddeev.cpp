#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "kvol/error.hpp"
#include "kvol/qdilog.hpp"

using namespace kvol::qdilog;
using std::numbers::pi;

namespace {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n) {
    GaussRule g;
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(pi * (i - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.nodes.push_back(x);
        g.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    }
    return g;
}

// log S_gamma(p) on the real axis indented by a semicircle of radius delta
// above the origin, integrated with composite Gauss-Legendre.
cplx log_s_indented(double gamma, cplx p) {
    const GaussRule g = gauss_legendre(20);
    auto f = [&](cplx x) { return 0.25 * std::exp(p * x) / (std::sinh(pi * x) * std::sinh(gamma * x) * x); };
    const double delta = 0.4;
    const double reach = 40.0 / (pi + gamma - std::abs(p.real()));
    const int panels = 400;
    cplx total = 0.0;
    const double w = (reach - delta) / panels;
    for (int k = 0; k < panels; ++k) {
        const double a = delta + k * w;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double x = a + 0.5 * w * (g.nodes[i] + 1.0);
            total += 0.5 * w * g.weights[i] * (f(x) + f(-x));
        }
    }
    // x = delta e^{i t}, t from pi down to 0
    const int arcs = 16;
    for (int k = 0; k < arcs; ++k) {
        const double a = pi - k * pi / arcs;
        const double hw = 0.5 * pi / arcs;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const double t = a - hw * (g.nodes[i] + 1.0);
            const cplx x = std::polar(delta, t);
            total -= hw * g.weights[i] * f(x) * cplx(0.0, 1.0) * x;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(QdParams::for_gamma(pi / 5.0).validate());
    CHECK_THROWS_AS(QdParams::for_gamma(0.0).validate(), std::invalid_argument);
    QdParams bad = QdParams::for_gamma(pi / 5.0);
    bad.quadrature.offset = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("shift equation at p = 0 fixes the ratio S(-gamma)/S(gamma) = 2") {
    for (double gamma : {pi / 5.0, pi / 10.0, 0.9}) {
        const auto params = QdParams::for_gamma(gamma);
        const cplx ratio = faddeev_s(params, -gamma) / faddeev_s(params, gamma);
        CHECK(std::abs(ratio - 2.0) < 1e-10);
    }
}

TEST_CASE("independent quadrature on an indented contour") {
    const double gamma = pi / 10.0;
    const auto params = QdParams::for_gamma(gamma);
    for (cplx p : {cplx(0.0), cplx(0.3), cplx(-1.2, 0.2), cplx(2.5)}) {
        const cplx a = faddeev_s(params, p);
        const cplx b = std::exp(log_s_indented(gamma, p));
        CHECK_MESSAGE(std::abs(a - b) <= 1e-8 * std::abs(b), "p = " << p);
    }
}

TEST_CASE("functional equation across the strip and beyond") {
    for (double gamma : {pi / 5.0, pi / 10.0, 2.0}) {
        const auto params = QdParams::for_gamma(gamma);
        for (int i = 0; i < 25; ++i) {
            const cplx p(-7.0 + 0.57 * i, 0.1 * std::sin(i));
            const cplx lhs = (1.0 + std::exp(cplx(0.0, 1.0) * p)) * faddeev_s(params, p + gamma);
            const cplx rhs = faddeev_s(params, p - gamma);
            CHECK_MESSAGE(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs), "gamma = " << gamma << " p = " << p);
        }
    }
}

TEST_CASE("semiclassical limit approaches Euler's dilogarithm") {
    const cplx target = li2(-std::exp(cplx(0.0, 0.3)));
    double previous = INFINITY;
    for (double div : {10.0, 20.0, 40.0, 80.0}) {
        const double gamma = pi / div;
        const cplx v = 2.0 * cplx(0.0, 1.0) * gamma * log_faddeev_s(QdParams::for_gamma(gamma), 0.3);
        const double gap = std::abs(v - target);
        CHECK_MESSAGE(gap < previous, "gamma = pi/" << div << " gap " << gap);
        previous = gap;
    }
    CHECK(previous < 1e-2);
}

TEST_CASE("f_gamma interpolates the cyclic Pochhammer symbol") {
    const unsigned n = 10;
    const double gamma = pi / n;
    const auto params = QdParams::for_gamma(gamma);
    CHECK(std::abs(f_gamma(params, -pi + gamma) - 1.0) < 1e-12);
    cplx poch = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        if (k > 0) poch *= 1.0 - std::polar(1.0, 2.0 * pi * k / n);
        const double p = -pi + (2.0 * k + 1.0) * gamma;
        CHECK_MESSAGE(std::abs(f_gamma(params, p) - poch) < 1e-6, "k = " << k);
        CHECK_MESSAGE(std::abs(f_bar_gamma(params, p) - std::conj(poch)) < 1e-6, "k = " << k);
    }
}

TEST_CASE("poles and zeros are rejected") {
    const double gamma = pi / 5.0;
    const auto params = QdParams::for_gamma(gamma);
    CHECK_THROWS_AS(log_faddeev_s(params, pi + gamma), kvol::PoleError);
    CHECK_THROWS_AS(log_faddeev_s(params, -pi - gamma), kvol::PoleError);
}

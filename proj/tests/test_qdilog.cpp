#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "kvol/qdilog.hpp"

using namespace kvol::qdilog;
using std::numbers::pi;

namespace {

cplx li2_series(cplx z, int terms = 4000) {
    cplx s = 0.0;
    cplx zn = 1.0;
    for (int n = 1; n <= terms; ++n) {
        zn *= z;
        s += zn / (static_cast<double>(n) * n);
    }
    return s;
}

// -int_0^theta log|2 sin t| dt for 0 < theta <= pi/2, splitting off log t and
// integrating the smooth remainder by composite Simpson.
double lobachevsky_quadrature(double theta) {
    const int m = 20000;
    const double h = theta / m;
    auto f = [](double t) { return t == 0.0 ? std::log(2.0) : std::log(2.0 * std::sin(t) / t); };
    double s = f(0.0) + f(theta);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    const double smooth = s * h / 3.0;
    return -(smooth + theta * std::log(theta) - theta);
}

}  // namespace

TEST_CASE("li2 special values") {
    CHECK(li2(0.0) == cplx(0.0, 0.0));
    CHECK(li2(1.0).real() == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
    CHECK(li2(-1.0).real() == doctest::Approx(-pi * pi / 12.0).epsilon(1e-14));
    CHECK(std::abs(li2(-1.0).imag()) < 1e-15);
    CHECK(li2(0.5).real() == doctest::Approx(pi * pi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0)).epsilon(1e-14));
    CHECK(li2(std::polar(1.0, pi / 3.0)).imag() == doctest::Approx(1.01494161).epsilon(1e-8));
}

TEST_CASE("li2 against the power series inside the unit disk") {
    for (double r : {0.1, 0.35, 0.6, 0.85, 0.95}) {
        for (double t = -3.1; t <= 3.1; t += 0.37) {
            const cplx z = std::polar(r, t);
            CHECK_MESSAGE(std::abs(li2(z) - li2_series(z)) < 1e-13, "z = " << z);
        }
    }
}

TEST_CASE("li2 inversion and reflection identities") {
    for (double r : {1.3, 2.0, 5.0, 40.0}) {
        for (double t = -2.75; t <= 3.0; t += 0.5) {
            const cplx z = std::polar(r, t);
            const cplx l = principal_log(-z);
            const cplx lhs = li2(z) + li2(1.0 / z);
            const cplx rhs = -pi * pi / 6.0 - 0.5 * l * l;
            CHECK_MESSAGE(std::abs(lhs - rhs) < 1e-11, "z = " << z);
        }
    }
    for (double r : {0.3, 0.7, 1.0}) {
        for (double t = -2.25; t <= 2.5; t += 0.5) {
            const cplx z = std::polar(r, t);
            const cplx lhs = li2(z) + li2(1.0 - z);
            const cplx rhs = pi * pi / 6.0 - principal_log(z) * principal_log(1.0 - z);
            CHECK_MESSAGE(std::abs(lhs - rhs) < 1e-12, "z = " << z);
        }
    }
}

TEST_CASE("li2 on the cut returns the real part") {
    const cplx v = li2(2.0);
    CHECK(v.imag() == 0.0);
    CHECK(v.real() == doctest::Approx(pi * pi / 4.0).epsilon(1e-13));
}

TEST_CASE("lobachevsky values and symmetries") {
    CHECK(lobachevsky(0.0) == 0.0);
    CHECK(std::abs(lobachevsky(pi)) < 1e-15);
    CHECK(lobachevsky(pi / 6.0) == doctest::Approx(0.5074708035).epsilon(1e-8));
    CHECK(4.0 * lobachevsky(pi / 6.0) == doctest::Approx(2.0 * li2(std::polar(1.0, pi / 3.0)).imag()).epsilon(1e-13));
    for (double t = -4.0; t <= 4.0; t += 0.3) {
        CHECK(lobachevsky(-t) == doctest::Approx(-lobachevsky(t)).epsilon(1e-14));
        CHECK(std::abs(lobachevsky(t + pi) - lobachevsky(t)) < 1e-14);
    }
}

TEST_CASE("lobachevsky against direct quadrature and the Fourier series") {
    for (double t = 0.05; t <= 1.5; t += 0.09) {
        CHECK_MESSAGE(std::abs(lobachevsky(t) - lobachevsky_quadrature(t)) < 1e-10, "theta = " << t);
        CHECK_MESSAGE(std::abs(lobachevsky(t) - lobachevsky_fourier(t, 20000)) < 1e-9, "theta = " << t);
    }
}

TEST_CASE("phi angle") {
    CHECK(phi_angle({0.4, 0.0}) == 0.0);
    CHECK(phi_angle({1.0, pi / 3.0}) == doctest::Approx(pi / 3.0).epsilon(1e-15));
    CHECK(phi_angle({0.5, pi / 2.0}) == doctest::Approx(0.4636476090008061).epsilon(1e-14));
    CHECK_THROWS_AS(phi_angle({1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(phi_angle({1.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(phi_angle({0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("Im Li2 from the polar formula") {
    CHECK(std::abs(im_li2_polar({1e-8, 1.0})) < 1e-7);
    CHECK(im_li2_polar({1.0, pi / 3.0}) == doctest::Approx(1.01494161).epsilon(1e-8));
    CHECK(im_li2_polar({0.5, pi / 2.0}) == doctest::Approx(li2_series(cplx(0.0, 0.5)).imag()).epsilon(1e-13));
    for (int i = 1; i <= 9; ++i) {
        for (int j = 1; j <= 30; ++j) {
            const double r = 0.1 * i;
            const double t = 0.1 * j;
            const double series = li2_series(std::polar(r, t)).imag();
            CHECK_MESSAGE(std::abs(im_li2_polar({r, t}) - series) < 1e-12, "r = " << r << " theta = " << t);
        }
    }
}

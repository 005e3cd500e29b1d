// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kvol/asymfit.hpp"
#include "kvol/cyclo.hpp"
#include "kvol/invariant.hpp"
#include "kvol/qdilog.hpp"
#include "kvol/saddle.hpp"

using namespace kvol;
using cplx = std::complex<double>;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = budget_s <= 0 || secs < budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %2d %-34s %8.3fs  %s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str(),
                in_time ? "" : " (over time budget)");
    std::fflush(stdout);
}

std::string num(double x, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << x;
    return os.str();
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

cplx li2_series(cplx z) {
    cplx s = 0.0;
    cplx zn = 1.0;
    for (int n = 1; n <= 2000; ++n) {
        zn *= z;
        s += zn / (static_cast<double>(n) * n);
        if (std::abs(zn) < 1e-18) break;
    }
    return s;
}

}  // namespace

int main() {
    criterion(1, "alexander values at N = 2", 1.0, [] {
        const long expected[] = {5, 7, 9};
        bool ok = true;
        std::string d;
        for (std::size_t i = 0; i < 3; ++i) {
            const KnotId k = kAllKnots[i];
            const auto exact = cyclo::exact_invariant(k, 2);
            ok = ok && exact.is_rational() && abs(exact.coeffs()[0]) == expected[i];
            for (EvalMode m : {EvalMode::Direct, EvalMode::Logscale}) {
                const double v = std::abs(*kashaev_invariant(k, 2, m).plain);
                ok = ok && std::abs(v - expected[i]) <= 1e-12;
            }
            d += std::string(knot_name(k)) + "=" + exact.coeffs()[0].get_str() + " ";
        }
        return Outcome{ok, d + "(exact; float within 1e-12)"};
    });

    criterion(2, "exact oracle vs logscale, N <= 20", 60.0, [] {
        double worst = 0.0;
        for (KnotId k : kAllKnots)
            for (unsigned n = 1; n <= 20; ++n) {
                const cplx exact = cyclo::exact_invariant(k, n).evaluate_numeric();
                worst = std::max(worst, rel(*kashaev_invariant(k, n, EvalMode::Logscale).plain, exact));
            }
        return Outcome{worst <= 1e-9, "max rel dev " + num(worst, 3) + " (tol 1e-9)"};
    });

    criterion(3, "saddle volumes", 1.0, [] {
        const double expected[] = {2.02988321, 2.82812208, 3.16396322};
        bool ok = true;
        std::string d;
        for (std::size_t i = 0; i < 3; ++i) {
            const double v = saddle::hyperbolic_volume(kAllKnots[i]).volume;
            ok = ok && std::abs(v - expected[i]) <= 1e-6;
            d += std::string(knot_name(kAllKnots[i])) + "=" + num(v, 12) + " ";
        }
        return Outcome{ok, d + "(tol 1e-6)"};
    });

    criterion(4, "4_1 triple-route consistency", 0.0, [] {
        const double a = saddle::hyperbolic_volume(KnotId::FourOne).volume;
        const double b = 4.0 * qdilog::lobachevsky(pi / 6.0);
        const double c = 2.0 * qdilog::li2(std::polar(1.0, pi / 3.0)).imag();
        const double worst = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
        return Outcome{worst <= 1e-10, "max pairwise dev " + num(worst, 3) + " (tol 1e-10)"};
    });

    struct ClaimCase {
        KnotId knot;
        asymfit::Window window;
        double tol;
        double budget;
    };
    for (const ClaimCase& c : {ClaimCase{KnotId::FourOne, {50, 300, 10}, 0.01, 10.0},
                               ClaimCase{KnotId::FiveTwo, {30, 150, 10}, 0.02, 60.0},
                               ClaimCase{KnotId::SixOne, {20, 100, 10}, 0.05, 300.0}}) {
        const std::string name = "growth rate " + std::string(knot_name(c.knot)) + " N in [" +
                                 std::to_string(c.window.n_min) + "," + std::to_string(c.window.n_max) + "]";
        criterion(5, name, c.budget, [&] {
            const auto r = asymfit::main_claim_report(c.knot, c.window);
            const bool ok = r.rel_gap <= c.tol && r.gap_shrinks;
            return Outcome{ok, "estimate " + num(r.fit.volume_estimate, 8) + " gap " + num(100.0 * r.rel_gap, 3) +
                                   "% (tol " + num(100.0 * c.tol) + "%), n_min doubled gap " +
                                   num(100.0 * r.shifted_rel_gap, 3) + "%" + (r.gap_shrinks ? " shrinks" : " grows")};
        });
    }

    criterion(6, "faddeev functional equation", 10.0, [] {
        double worst = 0.0;
        for (double gamma : {pi / 5.0, pi / 10.0}) {
            const auto params = qdilog::QdParams::for_gamma(gamma);
            for (int i = 0; i < 20; ++i) {
                const double p = -5.0 + 10.0 * i / 19.0;
                const cplx lhs = (1.0 + std::exp(cplx(0.0, p))) * qdilog::faddeev_s(params, p + gamma);
                const cplx rhs = qdilog::faddeev_s(params, p - gamma);
                worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
            }
        }
        return Outcome{worst <= 1e-6, "max rel residual " + num(worst, 3) + " (tol 1e-6)"};
    });

    criterion(7, "analytic continuation at N = 10", 0.0, [] {
        const unsigned n = 10;
        const double gamma = pi / n;
        const auto params = qdilog::QdParams::for_gamma(gamma);
        double worst = 0.0;
        cplx poch = 1.0;
        for (unsigned k = 0; k < n; ++k) {
            if (k > 0) poch *= 1.0 - std::polar(1.0, 2.0 * pi * k / n);
            const double p = -pi + (2.0 * k + 1.0) * gamma;
            worst = std::max(worst, std::abs(qdilog::f_gamma(params, p) - poch));
            worst = std::max(worst, std::abs(qdilog::f_bar_gamma(params, p) - std::conj(poch)));
        }
        return Outcome{worst <= 1e-6, "max abs dev " + num(worst, 3) + " (tol 1e-6)"};
    });

    criterion(8, "Im Li2 polar formula on the grid", 0.0, [] {
        double worst = 0.0;
        for (int i = 1; i <= 10; ++i)
            for (int j = 1; j <= 30; ++j) {
                const double r = 0.1 * i;
                const double t = 0.1 * j;
                const cplx z = std::polar(r, t);
                const double ref = i < 10 ? li2_series(z).imag() : qdilog::li2(z).imag();
                worst = std::max(worst, std::abs(qdilog::im_li2_polar({r, t}) - ref));
            }
        return Outcome{worst <= 1e-10, "max abs dev " + num(worst, 3) + " (tol 1e-10)"};
    });

    criterion(9, "determinism across 1, 2, 8 workers", 0.0, [] {
        const auto base = kashaev_invariant(KnotId::SixOne, 60, EvalMode::Logscale, {1, 4096});
        bool same = true;
        for (unsigned t : {2u, 8u}) {
            const auto v = kashaev_invariant(KnotId::SixOne, 60, EvalMode::Logscale, {t, 4096});
            same = same && v.value.log_mag() == base.value.log_mag() && v.value.arg() == base.value.arg();
        }
        return Outcome{same, "6_1 N=60 log|<L>| = " + num(base.value.log_mag(), 17) + (same ? " bit-identical" : " differs")};
    });

    criterion(10, "gradient at the selected saddles", 0.0, [] {
        double worst = 0.0;
        std::string d;
        for (KnotId k : kAllKnots) {
            const auto v = saddle::hyperbolic_volume(k);
            double m = 0.0;
            for (cplx g : saddle::numerical_gradient(k, v.solution.point)) m = std::max(m, std::abs(g));
            worst = std::max(worst, m);
            d += std::string(knot_name(k)) + "=" + num(m, 2) + " ";
        }
        return Outcome{worst <= 1e-6, d + "(tol 1e-6)"};
    });

    std::printf("%s: %d failing\n", failures == 0 ? "all criteria pass" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}

#include "kvol/qdilog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "kvol/compensated_sum.hpp"
#include "kvol/error.hpp"

namespace kvol::qdilog {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2Over6 = kPi * kPi / 6.0;

// B_{2k} / (2k+1)!, k = 1..15
constexpr std::array<double, 15> kLi2Bernoulli{
    0.027777777777777778,    -0.00027777777777777778, 4.7241118669690098e-6,
    -9.1857730746619636e-8,  1.8978869988970999e-9,   -4.0647616451442255e-11,
    8.9216910204564526e-13,  -1.9939295860721076e-14, 4.5189800296199182e-16,
    -1.0356517612181247e-17, 2.3952186210261867e-19,  -5.5817858743250093e-21,
    1.3091507554183213e-22,  -3.0874198024267403e-24, 7.3159756527022034e-26,
};

// |B_{2k}| / (2k (2k+1)!), k = 1..30
constexpr std::array<double, 30> kClausenBernoulli{
    0.013888888888888889,    6.9444444444444444e-5,   7.873519778281683e-7,
    1.1482216343327454e-8,   1.8978869988970999e-10,  3.3873013709535213e-12,
    6.3726364431831804e-14,  1.2462059912950672e-15,  2.5105444608999546e-17,
    5.1782588060906235e-19,  1.0887357368300849e-20,  2.3257441143020872e-22,
    5.0351952131473896e-24,  1.1026499294381215e-25,  2.4386585509007345e-27,
    5.4401426788562523e-29,  1.2228340131217352e-30,  2.7672634689679506e-32,
    6.3000905918320139e-34,  1.4420868388418475e-35,  3.3170939991595428e-37,
    7.6639135579206579e-39,  1.7778714733830658e-40,  4.1396058982341373e-42,
    9.6715570360811018e-44,  2.2667187016766124e-45,  5.327956311328254e-47,
    1.2557248389564336e-48,  2.9670005422470942e-50,  7.0267873176007425e-52,
};

// Bernoulli series in u = -log(1 - z); valid for |z| <= 1, Re z <= 1/2,
// where |u| <= 1.26.
cplx li2_bernoulli(cplx z) {
    const cplx u = -principal_log(1.0 - z);
    const cplx u2 = u * u;
    cplx term = u * u2;
    cplx acc = 0.0;
    for (double c : kLi2Bernoulli) {
        acc += c * term;
        term *= u2;
    }
    return u - 0.25 * u2 + acc;
}

// |z| <= 1
cplx li2_unit_disc(cplx z) {
    if (z.real() > 0.5) {
        // Reflection; 1 - z then lies in the Bernoulli region.
        return kPi2Over6 - principal_log(z) * principal_log(1.0 - z) - li2_bernoulli(1.0 - z);
    }
    return li2_bernoulli(z);
}

// Clausen function Cl2(x) for |x| <= pi.
double clausen_reduced(double x) {
    if (x == 0.0) return 0.0;
    const double x2 = x * x;
    double term = x * x2;
    double acc = 0.0;
    for (double c : kClausenBernoulli) {
        acc += c * term;
        term *= x2;
    }
    return x - x * std::log(std::abs(x)) + acc;
}

cplx expm1(cplx w) {
    const double a = w.real();
    const double b = w.imag();
    const double s = std::sin(0.5 * b);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

}  // namespace

cplx principal_log(cplx w) {
    const double im = w.imag();
    const double arg = (im == 0.0) ? (w.real() < 0.0 ? kPi : 0.0) : std::atan2(im, w.real());
    return {std::log(std::abs(w)), arg};
}

cplx li2(cplx z) {
    if (z == 0.0) return 0.0;
    if (z == 1.0) return kPi2Over6;
    if (z.imag() == 0.0 && z.real() > 1.0) {
        // On the cut: real part only.
        const double x = z.real();
        const double lx = std::log(x);
        return {2.0 * kPi2Over6 - 0.5 * lx * lx - li2_unit_disc(1.0 / x).real(), 0.0};
    }
    if (std::norm(z) > 1.0) {
        const cplx l = principal_log(-z);
        return -li2_unit_disc(1.0 / z) - kPi2Over6 - 0.5 * l * l;
    }
    return li2_unit_disc(z);
}

double lobachevsky(double theta) {
    // pi-periodic and odd; reduce to [-pi/2, pi/2].
    const double t = std::remainder(theta, kPi);
    return 0.5 * clausen_reduced(2.0 * t);
}

double lobachevsky_fourier(double theta, std::size_t terms) {
    if (terms == 0) throw std::invalid_argument("lobachevsky_fourier: need at least one term");
    const double x = 2.0 * theta;
    CompensatedSum acc;
    for (std::size_t n = 1; n <= terms; ++n) {
        const auto dn = static_cast<double>(n);
        acc.add(std::sin(dn * x) / (dn * dn));
    }
    double tail = 0.0;
    const cplx one_minus = 1.0 - std::polar(1.0, x);
    if (std::abs(one_minus) > 1e-8) {
        // sum_{n>M} e^{inx}/n^2 by two rounds of summation by parts.
        const auto m1 = static_cast<double>(terms + 1);
        const cplx c = std::polar(1.0, m1 * x) / one_minus;
        const double a = 1.0 / (m1 * m1);
        const double delta = a - 1.0 / ((m1 + 1.0) * (m1 + 1.0));
        const cplx t = c * a - c * c * std::polar(1.0, -static_cast<double>(terms) * x) * delta;
        tail = t.imag();
    }
    return 0.5 * (acc.value() + tail);
}

double phi_angle(PolarPoint p) {
    if (!(p.r > 0.0 && p.r <= 1.0)) {
        std::ostringstream os;
        os << "phi_angle: r must lie in (0, 1], got " << p.r;
        throw std::invalid_argument(os.str());
    }
    const double num = p.r * std::sin(p.theta);
    const double den = 1.0 - p.r * std::cos(p.theta);
    if (std::abs(den) < 1e-15 && std::abs(num) < 1e-15) {
        throw std::domain_error("phi_angle: singular at r = 1, theta = 0 (mod 2 pi)");
    }
    // den >= 0 for r <= 1, so atan2 agrees with the arctangent of the quotient.
    return std::atan2(num, den);
}

double im_li2_polar(PolarPoint p) {
    const double phi = phi_angle(p);
    return phi * std::log(p.r) + lobachevsky(phi) + lobachevsky(p.theta) - lobachevsky(phi + p.theta);
}

// ---------------------------------------------------------------------------
// Faddeev's quantum dilogarithm

QdParams QdParams::for_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("QdParams: gamma must be a positive finite real");
    }
    QdParams params;
    params.gamma = gamma;
    const double pole_gap = std::min(1.0, kPi / gamma);
    params.quadrature.offset = 0.5 * pole_gap;
    params.quadrature.step = std::min(0.04, params.quadrature.offset / 8.0);
    // Slowest decay after strip reduction is min(gamma, pi).
    params.quadrature.truncation = 40.0 / std::min(gamma, kPi);
    return params;
}

void QdParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("QdParams: gamma must be positive");
    }
    const auto& q = quadrature;
    if (!(q.step > 0.0) || !(q.truncation > 0.0)) {
        throw std::invalid_argument("QdParams: step and truncation must be positive");
    }
    if (!(q.offset > 0.0 && q.offset < std::min(1.0, kPi / gamma))) {
        throw std::invalid_argument("QdParams: contour offset must lie in (0, min(1, pi/gamma))");
    }
}

namespace {

// Integrand e^{px} / (4 sinh(pi x) sinh(gamma x) x), rewritten so that no
// factor overflows for large |Re x|.
cplx faddeev_integrand(double gamma, cplx p, cplx x) {
    const double s = x.real() >= 0.0 ? -1.0 : 1.0;
    const cplx num = std::exp((p + s * (kPi + gamma)) * x);
    const cplx den = expm1(2.0 * s * kPi * x) * expm1(2.0 * s * gamma * x) * x;
    return num / den;
}

// Direct quadrature; requires |Re p| < pi + gamma.
cplx log_faddeev_strip(const QdParams& params, cplx p) {
    const double gamma = params.gamma;
    const auto& q = params.quadrature;
    const double decay = kPi + gamma - std::abs(p.real());
    const double truncation = std::min(q.truncation, 40.0 / decay);
    const auto half = static_cast<long>(std::ceil(truncation / q.step));

    CompensatedComplexSum fine;
    CompensatedComplexSum coarse;
    for (long j = -half; j <= half; ++j) {
        const cplx x{static_cast<double>(j) * q.step, q.offset};
        const cplx g = faddeev_integrand(gamma, p, x);
        fine.add(g);
        if (j % 2 == 0) coarse.add(g);
    }
    const cplx value = q.step * fine.value();
    const cplx coarse_value = 2.0 * q.step * coarse.value();
    const double scale = std::max(1.0, std::abs(value));

    const double end = static_cast<double>(half) * q.step;
    const double tail = std::max(std::abs(faddeev_integrand(gamma, p, {end, q.offset})),
                                 std::abs(faddeev_integrand(gamma, p, {-end, q.offset}))) /
                        decay;
    if (!(tail <= 1e-13 * scale)) {
        std::ostringstream os;
        os << "faddeev: truncation tail " << tail << " at |x| = " << end << " exceeds tolerance";
        throw QuadratureError(os.str());
    }
    const double halving = std::abs(value - coarse_value);
    if (!(halving <= 1e-10 * scale)) {
        std::ostringstream os;
        os << "faddeev: step-halving difference " << halving << " exceeds tolerance (h = " << q.step
           << ")";
        throw QuadratureError(os.str());
    }
    return value;
}

}  // namespace

cplx log_faddeev_s(const QdParams& params, cplx p) {
    params.validate();
    const double gamma = params.gamma;
    const double window = std::max(kPi, gamma);
    const double step = 2.0 * gamma;

    // Fewest shifts by 2 gamma that bring |Re p| into the window.
    long shifts = 0;
    if (p.real() > window) {
        shifts = static_cast<long>(std::ceil((p.real() - window) / step));
    } else if (p.real() < -window) {
        shifts = -static_cast<long>(std::ceil((-window - p.real()) / step));
    }

    // (1 + e^{iq}) S(q + gamma) = S(q - gamma)
    cplx correction = 0.0;
    for (long j = 0; j < std::abs(shifts); ++j) {
        const cplx q = shifts > 0 ? p - gamma - step * static_cast<double>(j)
                                  : p + gamma + step * static_cast<double>(j);
        const cplx factor = 1.0 + std::exp(cplx{0.0, 1.0} * q);
        if (std::abs(factor) < 1e-13) {
            std::ostringstream os;
            os << "faddeev: p = " << p << " lies on the " << (shifts > 0 ? "pole" : "zero")
               << " lattice of S_gamma";
            throw PoleError(os.str());
        }
        correction += principal_log(factor);
    }
    const cplx base = p - step * static_cast<double>(shifts);
    const cplx inner = log_faddeev_strip(params, base);
    return shifts > 0 ? inner - correction : inner + correction;
}

cplx faddeev_s(const QdParams& params, cplx p) { return std::exp(log_faddeev_s(params, p)); }

cplx f_gamma(const QdParams& params, cplx p) {
    const double g = params.gamma;
    return std::exp(log_faddeev_s(params, g - kPi) - log_faddeev_s(params, p));
}

cplx f_bar_gamma(const QdParams& params, cplx p) {
    const double g = params.gamma;
    return std::exp(log_faddeev_s(params, -p) - log_faddeev_s(params, kPi - g));
}

}  // namespace kvol::qdilog

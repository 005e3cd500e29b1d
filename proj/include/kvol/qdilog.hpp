#pragma once

// Dilogarithm, Lobachevsky's function and Faddeev's quantum dilogarithm.
//
// Branch convention throughout: principal logarithm with the cut on the
// negative real axis, where the value is taken from above (arg = +pi).
// Li2 has its cut on [1, inf); exactly on the cut it returns the real part
// (the average of both sides).

#include <complex>
#include <cstddef>

namespace kvol::qdilog {

using cplx = std::complex<double>;

/// Principal log with arg in (-pi, pi], independent of the sign of a zero
/// imaginary part.
cplx principal_log(cplx w);

/// Euler dilogarithm Li2(z) = -int_0^z log(1-u)/u du.
cplx li2(cplx z);

/// Lobachevsky's function, Lambda(theta) = -int_0^theta log|2 sin t| dt.
/// Evaluated from the resummed Fourier series (Clausen function), which
/// converges geometrically on the reduced interval.
double lobachevsky(double theta);

/// Partial sum of 1/2 sum_n sin(2 n theta)/n^2 over `terms` terms, with an
/// Abel-summation estimate of the tail. Slow; used as a cross-check.
double lobachevsky_fourier(double theta, std::size_t terms);

struct PolarPoint {
    double r;      ///< in (0, 1]
    double theta;  ///< radians
};

/// phi(r, theta) = arctan(r sin(theta) / (1 - r cos(theta))).
/// Throws std::domain_error at the singular point r = 1, theta = 0 mod 2 pi.
double phi_angle(PolarPoint p);

/// Im Li2(r e^{i theta}) from phi log r + Lambda(phi) + Lambda(theta) - Lambda(phi + theta).
double im_li2_polar(PolarPoint p);

/// Trapezoid quadrature along the line Im x = offset.
struct QuadratureRule {
    double step = 0.04;        ///< h
    double truncation = 0.0;   ///< largest |Re x| sampled (T)
    double offset = 0.5;       ///< rho: distance of the contour above the pole at x = 0
};

struct QdParams {
    double gamma = 0.0;
    QuadratureRule quadrature;

    /// Defaults for a given gamma: h = 0.04, rho = min(1, pi/gamma)/2, and
    /// T large enough for the slowest decay met after strip reduction.
    static QdParams for_gamma(double gamma);
    /// Throws std::invalid_argument unless gamma, h, T > 0 and 0 < rho < min(1, pi/gamma).
    void validate() const;
};

/// log S_gamma(p): the exponent of the integral representation, continued to
/// the whole plane with the shift equation. Returned modulo 2 pi i.
/// Throws PoleError on poles/zeros of S_gamma and QuadratureError when the
/// truncation tail or the step-halving estimate exceed tolerance.
cplx log_faddeev_s(const QdParams& params, cplx p);

/// S_gamma(p) = exp(1/4 int e^{px} / (sinh(pi x) sinh(gamma x)) dx/x).
cplx faddeev_s(const QdParams& params, cplx p);

/// f_gamma(p) = S_gamma(gamma - pi) / S_gamma(p).
cplx f_gamma(const QdParams& params, cplx p);

/// fbar_gamma(p) = S_gamma(-p) / S_gamma(pi - gamma).
cplx f_bar_gamma(const QdParams& params, cplx p);

}  // namespace kvol::qdilog

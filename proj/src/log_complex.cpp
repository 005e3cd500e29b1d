#include "kvol/log_complex.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kvol/error.hpp"

namespace kvol {

double wrap_angle(double theta) noexcept {
    constexpr double pi = std::numbers::pi;
    double r = std::remainder(theta, 2.0 * pi);  // [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

LogComplex LogComplex::from_log_polar(double log_mag, double arg) noexcept {
    LogComplex z;
    z.log_mag_ = log_mag;
    z.arg_ = wrap_angle(arg);
    z.is_zero_ = false;
    return z;
}

LogComplex LogComplex::from_complex(std::complex<double> z) noexcept {
    if (z == 0.0) return zero();
    return from_log_polar(std::log(std::abs(z)), std::arg(z));
}

std::complex<double> LogComplex::to_complex() const {
    if (is_zero_) return 0.0;
    if (!representable()) {
        throw OverflowError("LogComplex magnitude exp(" + std::to_string(log_mag_) +
                            ") is not representable as a double");
    }
    return std::polar(std::exp(log_mag_), arg_);
}

LogComplex LogComplex::conj() const noexcept {
    if (is_zero_) return *this;
    return from_log_polar(log_mag_, -arg_);
}

LogComplex LogComplex::inverse() const {
    if (is_zero_) throw std::domain_error("LogComplex::inverse of zero");
    return from_log_polar(-log_mag_, -arg_);
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) noexcept {
    if (a.is_zero_ || b.is_zero_) return LogComplex::zero();
    return LogComplex::from_log_polar(a.log_mag_ + b.log_mag_, a.arg_ + b.arg_);
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) { return a * b.inverse(); }

}  // namespace kvol

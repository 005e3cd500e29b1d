#pragma once

#include <complex>

namespace kvol {

/// Complex number stored as (log|z|, arg z) so that products of many factors
/// never overflow. `arg` is kept in (-pi, pi].
class LogComplex {
  public:
    /// Largest log-magnitude that converts to a finite double.
    static constexpr double kMaxFiniteLog = 709.0;

    LogComplex() = default;  // zero

    static LogComplex zero() noexcept { return {}; }
    static LogComplex from_log_polar(double log_mag, double arg) noexcept;
    static LogComplex from_complex(std::complex<double> z) noexcept;

    bool is_zero() const noexcept { return is_zero_; }
    double log_mag() const noexcept { return log_mag_; }
    double arg() const noexcept { return arg_; }

    /// True when to_complex() yields finite components.
    bool representable() const noexcept { return is_zero_ || log_mag_ < kMaxFiniteLog; }
    /// Throws OverflowError when not representable.
    std::complex<double> to_complex() const;

    LogComplex conj() const noexcept;
    LogComplex inverse() const;

    friend LogComplex operator*(const LogComplex& a, const LogComplex& b) noexcept;
    friend LogComplex operator/(const LogComplex& a, const LogComplex& b);

  private:
    double log_mag_ = 0.0;
    double arg_ = 0.0;
    bool is_zero_ = true;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double theta) noexcept;

}  // namespace kvol

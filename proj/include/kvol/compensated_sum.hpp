#pragma once

#include <cmath>
#include <complex>

namespace kvol {

/// Neumaier-compensated accumulator for doubles.
class CompensatedSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    void add(const CompensatedSum& other) noexcept {
        add(other.sum_);
        comp_ += other.comp_;
    }

    void scale(double f) noexcept {
        sum_ *= f;
        comp_ *= f;
    }

    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Componentwise compensated complex sum that also tracks the sum of |terms|.
class CompensatedComplexSum {
  public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
        abs_.add(std::abs(z));
    }

    void add(const CompensatedComplexSum& other) noexcept {
        re_.add(other.re_);
        im_.add(other.im_);
        abs_.add(other.abs_);
    }

    void scale(double f) noexcept {
        re_.scale(f);
        im_.scale(f);
        abs_.scale(f);
    }

    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }
    double abs_total() const noexcept { return abs_.value(); }

  private:
    CompensatedSum re_;
    CompensatedSum im_;
    CompensatedSum abs_;
};

}  // namespace kvol

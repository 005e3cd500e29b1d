#pragma once

// Exact arithmetic in the cyclotomic field Q(w), w = exp(2 pi i / N).
//
// Elements are polynomials in w with rational coefficients, reduced modulo
// the N-th cyclotomic polynomial, so every nonzero element is invertible.
// This is the ground-truth oracle for the floating-point invariant engine
// and is only meant for small orders.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "kvol/knot.hpp"

namespace kvol::cyclo {

using Rational = mpq_class;
using IntPoly = std::vector<mpz_class>;  ///< coefficient of x^i at index i

/// Monic integer coefficients of the N-th cyclotomic polynomial.
/// Throws std::invalid_argument for N == 0.
IntPoly cyclotomic_polynomial(unsigned n);

unsigned euler_phi(unsigned n);

struct FieldData;
class CyclotomicField;

class CycElement {
  public:
    unsigned order() const noexcept;
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept;
    /// True when the element is the rational constant coeffs()[0].
    bool is_rational() const noexcept;

    CycElement operator+(const CycElement& rhs) const;
    CycElement operator-(const CycElement& rhs) const;
    CycElement operator-() const;
    CycElement operator*(const CycElement& rhs) const;
    CycElement& operator+=(const CycElement& rhs);

    /// Multiplication by w^e, e taken mod N. Cheaper than a general product.
    CycElement times_omega_power(std::int64_t e) const;

    /// Complex conjugate: w -> w^(N-1).
    CycElement conj() const;

    /// Field inverse. Throws std::domain_error on zero.
    CycElement inverse() const;

    /// Substitutes w = exp(2 pi i / N) in double precision. The error is of
    /// order (sum of |coeffs|) * machine epsilon.
    std::complex<double> evaluate_numeric() const;

    friend bool operator==(const CycElement& a, const CycElement& b);

  private:
    friend class CyclotomicField;
    CycElement(std::shared_ptr<const FieldData> field, std::vector<Rational> coeffs);

    std::shared_ptr<const FieldData> field_;
    std::vector<Rational> coeffs_;
};

/// Q(w) for a fixed order N. Cheap to copy; elements share the modulus.
class CyclotomicField {
  public:
    explicit CyclotomicField(unsigned n);

    unsigned order() const noexcept;
    unsigned degree() const noexcept;
    const IntPoly& modulus() const noexcept;

    CycElement zero() const;
    CycElement one() const;
    CycElement constant(const Rational& c) const;
    /// w^e with e reduced mod N.
    CycElement omega_power(std::int64_t e) const;
    /// Element from coefficients of 1, w, ..., w^(m-1) for any m; reduced on entry.
    CycElement from_coeffs(std::vector<Rational> coeffs) const;

  private:
    std::shared_ptr<const FieldData> data_;
};

/// Refuse exact evaluation above this many summed terms.
inline constexpr std::uint64_t kExactTermBudget = 1'000'000;

/// Number of lattice points summed by the invariant formula for `knot` at
/// order N (counted by enumeration).
std::uint64_t exact_term_count(KnotId knot, unsigned n);

/// The Kashaev invariant as an exact element of Q(w).
/// Throws std::invalid_argument for N == 0 and BudgetError past the budget.
CycElement exact_invariant(KnotId knot, unsigned n, std::uint64_t budget = kExactTermBudget);

}  // namespace kvol::cyclo

#include "kvol/cyclo.hpp"

#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kvol/error.hpp"

namespace kvol::cyclo {

struct FieldData {
    unsigned n = 0;
    unsigned degree = 0;
    IntPoly modulus;
    std::vector<Rational> modulus_q;               // low coefficients of the monic modulus
    std::vector<std::complex<double>> omega_pows;  // w^i, i < n
};

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact quotient of a by a monic b; throws if the division leaves a remainder.
IntPoly int_div_exact(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) throw std::logic_error("int_div_exact: degree");
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const mpz_class c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    trim(a);
    if (!a.empty()) throw std::logic_error("int_div_exact: nonzero remainder");
    return q;
}

IntPoly cyclotomic_memo(unsigned n, std::map<unsigned, IntPoly>& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) p = int_div_exact(std::move(p), cyclotomic_memo(d, memo));
    }
    memo.emplace(n, p);
    return p;
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    trim(c);
    return c;
}

QPoly q_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// a = q * b + r with deg r < deg b; b nonzero and trimmed.
std::pair<QPoly, QPoly> q_divmod(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {QPoly{}, a};
    const std::size_t db = b.size() - 1;
    QPoly q(a.size() - db, Rational(0));
    for (std::size_t i = a.size(); i-- > db;) {
        if (a[i] == 0) continue;
        Rational c = a[i] / b.back();
        c.canonicalize();
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
}

// Reduces an arbitrary-length coefficient vector into the field basis.
std::vector<Rational> reduce(const FieldData& f, std::vector<Rational> a) {
    const unsigned n = f.n;
    const unsigned d = f.degree;
    // Fold modulo x^n - 1 first; the cyclotomic polynomial divides it.
    if (a.size() > n) {
        for (std::size_t i = n; i < a.size(); ++i) a[i % n] += a[i];
        a.resize(n);
    }
    for (std::size_t i = a.size(); i-- > d;) {
        const Rational c = a[i];
        if (c == 0) continue;
        for (unsigned j = 0; j < d; ++j) a[i - d + j] -= c * f.modulus_q[j];
    }
    a.resize(d, Rational(0));
    return a;
}

std::int64_t mod_n(std::int64_t e, unsigned n) {
    const auto m = static_cast<std::int64_t>(n);
    return ((e % m) + m) % m;
}

}  // namespace

unsigned euler_phi(unsigned n) {
    if (n == 0) throw std::invalid_argument("euler_phi: order must be >= 1");
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

IntPoly cyclotomic_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_polynomial: order must be >= 1");
    std::map<unsigned, IntPoly> memo;
    return cyclotomic_memo(n, memo);
}

// ---------------------------------------------------------------------------
// CyclotomicField

CyclotomicField::CyclotomicField(unsigned n) {
    if (n == 0) throw std::invalid_argument("CyclotomicField: order must be >= 1");
    auto data = std::make_shared<FieldData>();
    data->n = n;
    data->modulus = cyclotomic_polynomial(n);
    data->degree = static_cast<unsigned>(data->modulus.size() - 1);
    for (unsigned j = 0; j < data->degree; ++j) data->modulus_q.emplace_back(data->modulus[j]);
    data->omega_pows.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        data->omega_pows.push_back(std::polar(1.0, 2.0 * std::numbers::pi * i / n));
    }
    data_ = std::move(data);
}

unsigned CyclotomicField::order() const noexcept { return data_->n; }
unsigned CyclotomicField::degree() const noexcept { return data_->degree; }
const IntPoly& CyclotomicField::modulus() const noexcept { return data_->modulus; }

CycElement CyclotomicField::zero() const {
    return CycElement(data_, std::vector<Rational>(data_->degree, Rational(0)));
}

CycElement CyclotomicField::one() const { return constant(1); }

CycElement CyclotomicField::constant(const Rational& c) const {
    std::vector<Rational> v(data_->degree, Rational(0));
    v[0] = c;
    return CycElement(data_, std::move(v));
}

CycElement CyclotomicField::omega_power(std::int64_t e) const {
    std::vector<Rational> v(data_->n, Rational(0));
    v[mod_n(e, data_->n)] = 1;
    return CycElement(data_, reduce(*data_, std::move(v)));
}

CycElement CyclotomicField::from_coeffs(std::vector<Rational> coeffs) const {
    for (auto& c : coeffs) c.canonicalize();
    return CycElement(data_, reduce(*data_, std::move(coeffs)));
}

// ---------------------------------------------------------------------------
// CycElement

CycElement::CycElement(std::shared_ptr<const FieldData> field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

unsigned CycElement::order() const noexcept { return field_->n; }

bool CycElement::is_zero() const noexcept {
    for (const auto& c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

bool CycElement::is_rational() const noexcept {
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) return false;
    }
    return true;
}

static void require_same_field(const CycElement& a, const CycElement& b) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("cyclotomic elements of different orders " +
                                    std::to_string(a.order()) + " and " + std::to_string(b.order()));
    }
}

CycElement CycElement::operator+(const CycElement& rhs) const {
    CycElement out = *this;
    out += rhs;
    return out;
}

CycElement& CycElement::operator+=(const CycElement& rhs) {
    require_same_field(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CycElement CycElement::operator-(const CycElement& rhs) const {
    require_same_field(*this, rhs);
    std::vector<Rational> v = coeffs_;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= rhs.coeffs_[i];
    return CycElement(field_, std::move(v));
}

CycElement CycElement::operator-() const {
    std::vector<Rational> v = coeffs_;
    for (auto& c : v) c = -c;
    return CycElement(field_, std::move(v));
}

CycElement CycElement::operator*(const CycElement& rhs) const {
    require_same_field(*this, rhs);
    const std::size_t d = coeffs_.size();
    std::vector<Rational> prod(2 * d - 1, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    return CycElement(field_, reduce(*field_, std::move(prod)));
}

CycElement CycElement::times_omega_power(std::int64_t e) const {
    const unsigned n = field_->n;
    const auto shift = static_cast<std::size_t>(mod_n(e, n));
    std::vector<Rational> v(n, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[(i + shift) % n] = coeffs_[i];
    return CycElement(field_, reduce(*field_, std::move(v)));
}

CycElement CycElement::conj() const {
    const unsigned n = field_->n;
    std::vector<Rational> v(n, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[(n - i) % n] += coeffs_[i];
    return CycElement(field_, reduce(*field_, std::move(v)));
}

CycElement CycElement::inverse() const {
    QPoly r1 = coeffs_;
    trim(r1);
    if (r1.empty()) throw std::domain_error("CycElement::inverse: zero has no inverse");

    QPoly r0(field_->modulus.begin(), field_->modulus.end());
    QPoly s0;
    QPoly s1{Rational(1)};
    // Invariant: s_i * x == r_i (mod modulus).
    while (r1.size() > 1) {
        auto [q, r] = q_divmod(r0, r1);
        if (r.empty()) throw std::logic_error("CycElement::inverse: modulus is not irreducible");
        QPoly s2 = q_sub(s0, q_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const Rational c = r1[0];
    for (auto& s : s1) {
        s /= c;
        s.canonicalize();
    }
    return CycElement(field_, reduce(*field_, std::move(s1)));
}

std::complex<double> CycElement::evaluate_numeric() const {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        acc += coeffs_[i].get_d() * field_->omega_pows[i];
    }
    return acc;
}

bool operator==(const CycElement& a, const CycElement& b) {
    return a.order() == b.order() && a.coeffs_ == b.coeffs_;
}

// ---------------------------------------------------------------------------
// Exact invariant

std::uint64_t exact_term_count(KnotId knot, unsigned n) {
    if (n == 0) throw std::invalid_argument("order N must be >= 1");
    std::uint64_t count = 0;
    switch (knot) {
        case KnotId::FourOne:
            for (unsigned k = 0; k < n; ++k) ++count;
            break;
        case KnotId::FiveTwo:
            for (unsigned k = 0; k < n; ++k) count += n - k;
            break;
        case KnotId::SixOne:
            for (unsigned k = 0; k < n; ++k) {
                for (unsigned l = 0; k + l < n; ++l) count += n - k - l;
            }
            break;
    }
    return count;
}

CycElement exact_invariant(KnotId knot, unsigned n, std::uint64_t budget) {
    const std::uint64_t terms = exact_term_count(knot, n);
    if (terms > budget) {
        throw BudgetError("exact invariant at N=" + std::to_string(n) + " needs " +
                          std::to_string(terms) + " terms, budget is " + std::to_string(budget));
    }
    const CyclotomicField field(n);

    // (w)_k = prod_{j=1..k} (1 - w^j)
    std::vector<CycElement> poch;
    poch.reserve(n);
    poch.push_back(field.one());
    for (unsigned k = 1; k < n; ++k) poch.push_back(poch.back() * (field.one() - field.omega_power(k)));

    CycElement total = field.zero();
    switch (knot) {
        case KnotId::FourOne:
            for (unsigned k = 0; k < n; ++k) total += poch[k] * poch[k].conj();
            break;

        case KnotId::FiveTwo: {
            std::vector<CycElement> inv_conj;
            std::vector<CycElement> square;
            for (unsigned k = 0; k < n; ++k) {
                inv_conj.push_back(poch[k].conj().inverse());
                square.push_back(poch[k] * poch[k]);
            }
            for (unsigned k = 0; k < n; ++k) {
                CycElement row = field.zero();
                for (unsigned l = k; l < n; ++l) {
                    const auto e = -static_cast<std::int64_t>(k) * (static_cast<std::int64_t>(l) + 1);
                    row += square[l].times_omega_power(e);
                }
                total += row * inv_conj[k];
            }
            break;
        }

        case KnotId::SixOne: {
            std::vector<CycElement> inv;
            std::vector<CycElement> inv_conj;
            std::vector<CycElement> abs_sq;
            for (unsigned k = 0; k < n; ++k) {
                inv.push_back(poch[k].inverse());
                inv_conj.push_back(poch[k].conj().inverse());
                abs_sq.push_back(poch[k] * poch[k].conj());
            }
            for (unsigned k = 0; k < n; ++k) {
                for (unsigned l = 0; k + l < n; ++l) {
                    CycElement row = field.zero();
                    for (unsigned m = k + l; m < n; ++m) {
                        const auto a = static_cast<std::int64_t>(m) - k - l;
                        const auto b = static_cast<std::int64_t>(m) - k + 1;
                        row += abs_sq[m].times_omega_power(a * b);
                    }
                    total += row * inv[k] * inv_conj[l];
                }
            }
            break;
        }
    }
    return total;
}

}  // namespace kvol::cyclo

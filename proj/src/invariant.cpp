#include "kvol/invariant.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "kvol/compensated_sum.hpp"
#include "kvol/cyclo.hpp"
#include "kvol/error.hpp"

namespace kvol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Rounding units per term evaluation (a few products and a table lookup).
constexpr double kTermUlps = 8.0;

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

void require_order(unsigned n) {
    if (n == 0) throw std::invalid_argument("order N must be >= 1");
}

// The summation region as rows of consecutive inner indices: one row for
// 4_1, rows k for 5_2 (l = k..N-1), rows (k, l) for 6_1 (m = k+l..N-1).
struct RowPlan {
    std::vector<std::array<unsigned, 2>> rows;
    std::vector<std::uint64_t> start;  // prefix sums of row lengths, size rows+1

    std::uint64_t total() const { return start.back(); }
};

RowPlan make_plan(KnotId knot, unsigned n) {
    RowPlan plan;
    auto push = [&](unsigned a, unsigned b, std::uint64_t len) {
        plan.rows.push_back({a, b});
        plan.start.push_back(plan.start.back() + len);
    };
    plan.start.push_back(0);
    switch (knot) {
        case KnotId::FourOne:
            push(0, 0, n);
            break;
        case KnotId::FiveTwo:
            for (unsigned k = 0; k < n; ++k) push(k, 0, n - k);
            break;
        case KnotId::SixOne:
            for (unsigned k = 0; k < n; ++k) {
                for (unsigned l = 0; k + l < n; ++l) push(k, l, n - k - l);
            }
            break;
    }
    return plan;
}

// Calls f(row, offset) for every term with global index in [begin, end).
template <class F>
void for_each_term(const RowPlan& plan, std::uint64_t begin, std::uint64_t end, F&& f) {
    if (begin >= end) return;
    auto it = std::upper_bound(plan.start.begin(), plan.start.end(), begin);
    std::size_t row = static_cast<std::size_t>(it - plan.start.begin()) - 1;
    std::uint64_t pos = begin;
    while (pos < end) {
        const std::uint64_t row_end = std::min(plan.start[row + 1], end);
        for (std::uint64_t i = pos; i < row_end; ++i) f(row, static_cast<unsigned>(i - plan.start[row]));
        pos = row_end;
        ++row;
    }
}

// Term index -> (k, l, m) in the knot's own naming.
struct TermIndex {
    unsigned k, l, m;
};

TermIndex term_index(KnotId knot, const RowPlan& plan, std::size_t row, unsigned offset) {
    const auto [a, b] = plan.rows[row];
    switch (knot) {
        case KnotId::FourOne: return {offset, 0, 0};
        case KnotId::FiveTwo: return {a, a + offset, 0};
        case KnotId::SixOne: return {a, b, a + b + offset};
    }
    return {0, 0, 0};
}

// Exponent of w in each term, reduced mod N with integer arithmetic.
std::int64_t omega_exponent(KnotId knot, TermIndex t, unsigned n) {
    const auto k = static_cast<std::int64_t>(t.k);
    const auto l = static_cast<std::int64_t>(t.l);
    const auto m = static_cast<std::int64_t>(t.m);
    switch (knot) {
        case KnotId::FourOne: return 0;
        case KnotId::FiveTwo: return mod(-k * (l + 1), n);
        case KnotId::SixOne: return mod((m - k - l) * (m - k + 1), n);
    }
    return 0;
}

// Sum of terms exp(log_mag) * e^{i phase}, held as exp(shift) * sum.
struct ScaledPartial {
    double shift = -std::numeric_limits<double>::infinity();
    CompensatedComplexSum sum;

    bool empty() const { return shift == -std::numeric_limits<double>::infinity(); }
};

ScaledPartial combine(const ScaledPartial& a, const ScaledPartial& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    ScaledPartial out;
    out.shift = std::max(a.shift, b.shift);
    CompensatedComplexSum sa = a.sum;
    CompensatedComplexSum sb = b.sum;
    if (a.shift != out.shift) sa.scale(std::exp(a.shift - out.shift));
    if (b.shift != out.shift) sb.scale(std::exp(b.shift - out.shift));
    out.sum = sa;
    out.sum.add(sb);
    return out;
}

CompensatedComplexSum combine(const CompensatedComplexSum& a, const CompensatedComplexSum& b) {
    CompensatedComplexSum out = a;
    out.add(b);
    return out;
}

// Evaluates chunk partials on a worker pool, then folds them with a fixed
// pairwise tree. The result does not depend on the number of workers.
template <class Partial, class ChunkFn>
Partial reduce_chunks(std::uint64_t total, const EvalOptions& options, ChunkFn&& chunk_fn) {
    const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_size);
    const std::size_t chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
    std::vector<Partial> partials(chunks);

    auto work = [&](std::size_t c) {
        const std::uint64_t begin = c * chunk;
        partials[c] = chunk_fn(begin, std::min(total, begin + chunk));
    };
    const std::size_t workers = std::min<std::size_t>(std::max(1u, options.threads), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) work(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < chunks; c = next++) work(c);
            });
        }
    }

    while (partials.size() > 1) {
        std::vector<Partial> next_level;
        next_level.reserve((partials.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < partials.size(); i += 2) {
            next_level.push_back(combine(partials[i], partials[i + 1]));
        }
        if (partials.size() % 2 == 1) next_level.push_back(partials.back());
        partials = std::move(next_level);
    }
    return partials.empty() ? Partial{} : partials.front();
}

InvariantValue evaluate_logscale(KnotId knot, unsigned n, const EvalOptions& options) {
    const PochhammerTable table(n);
    const RowPlan plan = make_plan(knot, n);
    const auto four_n = static_cast<std::int64_t>(4) * n;

    std::vector<double> log_mag(n);
    for (unsigned k = 0; k < n; ++k) log_mag[k] = table.log_values()[k].log_mag();
    // e^{i pi j / (2N)}
    std::vector<std::complex<double>> unit(static_cast<std::size_t>(four_n));
    for (std::int64_t j = 0; j < four_n; ++j) {
        unit[static_cast<std::size_t>(j)] = std::polar(1.0, kPi * static_cast<double>(j) / (2.0 * n));
    }

    auto term = [&](std::size_t row, unsigned offset, double& lm, std::int64_t& phase) {
        const TermIndex t = term_index(knot, plan, row, offset);
        const std::int64_t e4 = 4 * omega_exponent(knot, t, n);
        switch (knot) {
            case KnotId::FourOne:
                lm = 2.0 * log_mag[t.k];
                phase = 0;
                break;
            case KnotId::FiveTwo:
                lm = 2.0 * log_mag[t.l] - log_mag[t.k];
                phase = 2 * table.phase_index(t.l) + table.phase_index(t.k) + e4;
                break;
            case KnotId::SixOne:
                lm = 2.0 * log_mag[t.m] - log_mag[t.k] - log_mag[t.l];
                phase = table.phase_index(t.l) - table.phase_index(t.k) + e4;
                break;
        }
        phase = mod(phase, four_n);
    };

    auto chunk_fn = [&](std::uint64_t begin, std::uint64_t end) {
        ScaledPartial p;
        for_each_term(plan, begin, end, [&](std::size_t row, unsigned offset) {
            double lm = 0.0;
            std::int64_t phase = 0;
            term(row, offset, lm, phase);
            p.shift = std::max(p.shift, lm);
        });
        for_each_term(plan, begin, end, [&](std::size_t row, unsigned offset) {
            double lm = 0.0;
            std::int64_t phase = 0;
            term(row, offset, lm, phase);
            p.sum.add(std::exp(lm - p.shift) * unit[static_cast<std::size_t>(phase)]);
        });
        return p;
    };

    const ScaledPartial total = reduce_chunks<ScaledPartial>(plan.total(), options, chunk_fn);

    InvariantValue out;
    out.knot = knot;
    out.order = n;
    out.mode = EvalMode::Logscale;
    out.term_count = plan.total();
    const std::complex<double> s = total.sum.value();
    if (s == 0.0) {
        out.value = LogComplex::zero();
        out.accum_error_estimate = std::numeric_limits<double>::infinity();
    } else {
        out.value = LogComplex::from_log_polar(total.shift + std::log(std::abs(s)), std::arg(s));
        out.accum_error_estimate = kTermUlps * kEps * total.sum.abs_total() / std::abs(s);
    }
    if (out.value.representable()) out.plain = out.value.to_complex();
    return out;
}

InvariantValue evaluate_direct(KnotId knot, unsigned n, const EvalOptions& options) {
    const PochhammerTable table(n);
    if (table.max_abs_log_mag() > kDirectModeLogCeiling) {
        throw OverflowError("direct mode refused at N=" + std::to_string(n) + ": |log|(w)_k|| reaches " +
                            std::to_string(table.max_abs_log_mag()) + " > " +
                            std::to_string(kDirectModeLogCeiling) + "; use logscale");
    }
    const RowPlan plan = make_plan(knot, n);
    const auto& v = table.values();
    const auto& omega = table.omega_powers();

    std::vector<std::complex<double>> inv(n), inv_conj(n), square(n);
    std::vector<double> abs_sq(n);
    for (unsigned k = 0; k < n; ++k) {
        inv[k] = 1.0 / v[k];
        inv_conj[k] = 1.0 / std::conj(v[k]);
        square[k] = v[k] * v[k];
        abs_sq[k] = std::norm(v[k]);
    }

    auto chunk_fn = [&](std::uint64_t begin, std::uint64_t end) {
        CompensatedComplexSum p;
        for_each_term(plan, begin, end, [&](std::size_t row, unsigned offset) {
            const TermIndex t = term_index(knot, plan, row, offset);
            const auto w = omega[static_cast<std::size_t>(omega_exponent(knot, t, n))];
            switch (knot) {
                case KnotId::FourOne: p.add(abs_sq[t.k]); break;
                case KnotId::FiveTwo: p.add(square[t.l] * inv_conj[t.k] * w); break;
                case KnotId::SixOne: p.add(abs_sq[t.m] * inv[t.k] * inv_conj[t.l] * w); break;
            }
        });
        return p;
    };

    const CompensatedComplexSum total = reduce_chunks<CompensatedComplexSum>(plan.total(), options, chunk_fn);
    const std::complex<double> s = total.value();
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw OverflowError("direct mode overflowed at N=" + std::to_string(n) + "; use logscale");
    }

    InvariantValue out;
    out.knot = knot;
    out.order = n;
    out.mode = EvalMode::Direct;
    out.term_count = plan.total();
    out.value = LogComplex::from_complex(s);
    out.plain = s;
    out.accum_error_estimate = s == 0.0 ? std::numeric_limits<double>::infinity()
                                        : kTermUlps * kEps * total.abs_total() / std::abs(s);
    return out;
}

}  // namespace

std::string_view mode_name(EvalMode mode) noexcept {
    switch (mode) {
        case EvalMode::Direct: return "direct";
        case EvalMode::Logscale: return "logscale";
        case EvalMode::Exact: return "exact";
    }
    return "?";
}

std::optional<EvalMode> parse_mode(std::string_view name) noexcept {
    for (EvalMode m : {EvalMode::Direct, EvalMode::Logscale, EvalMode::Exact}) {
        if (mode_name(m) == name) return m;
    }
    return std::nullopt;
}

PochhammerTable::PochhammerTable(unsigned n) : n_(n) {
    require_order(n);
    const auto four_n = static_cast<std::int64_t>(4) * n;
    values_.reserve(n);
    log_values_.reserve(n);
    omega_.reserve(n);
    phase_.reserve(n);

    CompensatedSum log_acc;
    std::complex<double> running = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        omega_.push_back(std::polar(1.0, 2.0 * kPi * k / n));
        if (k > 0) {
            // 1 - w^k = 2 sin(pi k/N) e^{i(pi k/N - pi/2)}, without cancellation.
            const double s = std::sin(kPi * k / n);
            running *= std::complex<double>(2.0 * s * s, -std::sin(2.0 * kPi * k / n));
            log_acc.add(std::log(2.0 * s));
        }
        const auto kk = static_cast<std::int64_t>(k);
        // arg (w)_k = pi (k(k+1) - kN) / (2N)
        const std::int64_t phase = mod(kk * (kk + 1) - kk * n, four_n);
        const double lm = log_acc.value();
        phase_.push_back(phase);
        log_values_.push_back(LogComplex::from_log_polar(lm, kPi * static_cast<double>(phase) / (2.0 * n)));
        values_.push_back(lm < LogComplex::kMaxFiniteLog
                              ? running
                              : std::complex<double>(std::numeric_limits<double>::infinity(), 0.0));
        max_abs_log_ = std::max(max_abs_log_, std::abs(lm));
    }
}

std::uint64_t term_count(KnotId knot, unsigned n) {
    require_order(n);
    return make_plan(knot, n).total();
}

InvariantValue kashaev_invariant(KnotId knot, unsigned n, EvalMode mode, const EvalOptions& options) {
    require_order(n);
    switch (mode) {
        case EvalMode::Direct: return evaluate_direct(knot, n, options);
        case EvalMode::Logscale: return evaluate_logscale(knot, n, options);
        case EvalMode::Exact: break;
    }
    throw std::invalid_argument("kashaev_invariant: use exact_invariant_value for exact mode");
}

InvariantValue exact_invariant_value(KnotId knot, unsigned n) {
    const cyclo::CycElement x = cyclo::exact_invariant(knot, n);
    const std::complex<double> z = x.evaluate_numeric();
    double coeff_mass = 0.0;
    for (const auto& c : x.coeffs()) coeff_mass += std::abs(c.get_d());

    InvariantValue out;
    out.knot = knot;
    out.order = n;
    out.mode = EvalMode::Exact;
    out.term_count = cyclo::exact_term_count(knot, n);
    out.value = LogComplex::from_complex(z);
    out.plain = z;
    out.accum_error_estimate = z == 0.0 ? 0.0 : 4.0 * kEps * coeff_mass / std::abs(z);
    return out;
}

AlexanderReport alexander_check() {
    constexpr std::array<long, 3> expected{5, 7, 9};
    AlexanderReport report;
    report.pass = true;
    for (std::size_t i = 0; i < kAllKnots.size(); ++i) {
        const KnotId knot = kAllKnots[i];
        const cyclo::CycElement x = cyclo::exact_invariant(knot, 2);
        AlexanderEntry e{};
        e.knot = knot;
        e.expected = expected[i];
        const mpq_class& c = x.coeffs()[0];
        e.exact_is_integer = x.is_rational() && abs(c) == expected[i];
        e.exact_abs = mpq_class(abs(c)).get_d();
        e.direct_abs = std::abs(kashaev_invariant(knot, 2, EvalMode::Direct).plain.value());
        e.logscale_abs = std::exp(kashaev_invariant(knot, 2, EvalMode::Logscale).value.log_mag());
        const auto ex = static_cast<double>(expected[i]);
        e.pass = e.exact_is_integer && std::abs(e.direct_abs - ex) <= 1e-12 &&
                 std::abs(e.logscale_abs - ex) <= 1e-12;
        report.pass = report.pass && e.pass;
        report.entries.push_back(e);
    }
    return report;
}

GrowthPoint growth_point(KnotId knot, unsigned n, const EvalOptions& options) {
    if (n < 2) throw std::invalid_argument("growth_point: N must be >= 2");
    const InvariantValue v = kashaev_invariant(knot, n, EvalMode::Logscale, options);
    if (v.value.is_zero() || !std::isfinite(v.value.log_mag())) {
        throw Error("growth_point: log|<L>| is not finite at N=" + std::to_string(n));
    }
    return {n, v.value.log_mag()};
}

}  // namespace kvol

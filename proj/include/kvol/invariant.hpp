#pragma once

// Floating-point evaluation of the Kashaev invariants <4_1>, <5_2>, <6_1>.
//
//   <4_1> = sum_k |(w)_k|^2
//   <5_2> = sum_{k<=l} (w)_l^2 / conj((w)_k) * w^{-k(l+1)}
//   <6_1> = sum_{k+l<=m} |(w)_m|^2 / ((w)_k conj((w)_l)) * w^{(m-k-l)(m-k+1)}
//
// with (w)_k = prod_{j=1..k} (1 - w^j), w = exp(2 pi i / N), all indices in
// {0, ..., N-1}. Terms are enumerated lexicographically, cut into fixed-size
// chunks and reduced with a fixed pairwise tree, so results are bit-identical
// for any number of worker threads.

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "kvol/knot.hpp"
#include "kvol/log_complex.hpp"

namespace kvol {

enum class EvalMode { Direct, Logscale, Exact };

std::string_view mode_name(EvalMode mode) noexcept;
std::optional<EvalMode> parse_mode(std::string_view name) noexcept;

/// (w)_k for k = 0..N-1, built by recurrence both as plain complex numbers
/// and in log-polar form.
class PochhammerTable {
  public:
    explicit PochhammerTable(unsigned n);

    unsigned order() const noexcept { return n_; }
    /// Entries whose log-magnitude exceeds kMaxFiniteLog are stored as inf.
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    const std::vector<LogComplex>& log_values() const noexcept { return log_values_; }
    /// w^j, j = 0..N-1.
    const std::vector<std::complex<double>>& omega_powers() const noexcept { return omega_; }

    /// Exact phase of (w)_k as a multiple of pi / (2N), reduced mod 4N.
    std::int64_t phase_index(unsigned k) const noexcept { return phase_[k]; }
    double max_abs_log_mag() const noexcept { return max_abs_log_; }

  private:
    unsigned n_;
    std::vector<std::complex<double>> values_;
    std::vector<LogComplex> log_values_;
    std::vector<std::complex<double>> omega_;
    std::vector<std::int64_t> phase_;
    double max_abs_log_ = 0.0;
};

struct InvariantValue {
    KnotId knot = KnotId::FourOne;
    unsigned order = 0;
    LogComplex value;
    std::optional<std::complex<double>> plain;  ///< when representable
    EvalMode mode = EvalMode::Logscale;
    std::uint64_t term_count = 0;
    /// Estimated relative rounding error of the sum (not a rigorous bound).
    double accum_error_estimate = 0.0;
};

struct EvalOptions {
    unsigned threads = 1;
    std::uint64_t chunk_size = 4096;
};

/// Refuse direct mode when some |log|(w)_k|| exceeds this.
inline constexpr double kDirectModeLogCeiling = 600.0;

/// Number of summed lattice points, counted from the row structure.
std::uint64_t term_count(KnotId knot, unsigned n);

/// Throws std::invalid_argument for N == 0 or mode == Exact (use
/// exact_invariant_value), OverflowError when direct mode is out of range.
InvariantValue kashaev_invariant(KnotId knot, unsigned n, EvalMode mode, const EvalOptions& options = {});

/// Exact evaluation in Q(w), wrapped as an InvariantValue.
InvariantValue exact_invariant_value(KnotId knot, unsigned n);

struct AlexanderEntry {
    KnotId knot;
    long expected;
    double exact_abs;       ///< |exact value| (exact value is a rational here)
    bool exact_is_integer;  ///< exact element is exactly +-expected
    double direct_abs;
    double logscale_abs;
    bool pass;
};

struct AlexanderReport {
    std::vector<AlexanderEntry> entries;
    bool pass = false;
};

/// |<L>| at N = 2 against Delta_L(-1) = 5, 7, 9.
AlexanderReport alexander_check();

struct GrowthPoint {
    unsigned n;
    double log_abs;
};

/// (N, log|<L>|) from the logscale engine; N >= 2.
GrowthPoint growth_point(KnotId knot, unsigned n, const EvalOptions& options = {});

}  // namespace kvol

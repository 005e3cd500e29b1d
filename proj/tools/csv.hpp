#pragma once

// CSV schema shared by `invariant --format csv` and `fit --in`:
//   knot,N,mode,re,im,log_abs,two_pi_log_abs_over_N,term_count,accum_error
// Doubles are written in shortest round-trip form, so reading a row back
// recovers the exact bits.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "kvol/asymfit.hpp"
#include "kvol/invariant.hpp"

namespace kvol::cli {

inline constexpr std::string_view kInvariantHeader =
    "knot,N,mode,re,im,log_abs,two_pi_log_abs_over_N,term_count,accum_error";

inline constexpr std::string_view kFitHeader =
    "knot,model,n_min,n_max,points,a,b,c,rms_residual,volume_estimate";

std::string format_double(double x);

std::string invariant_csv_row(const InvariantValue& v);

struct InvariantRow {
    KnotId knot;
    unsigned n;
    EvalMode mode;
    double log_abs;
};

/// Parses rows in the invariant schema. Header lines (also repeated ones, as
/// produced by concatenating files) and blank lines are skipped.
/// Throws std::invalid_argument with the line number on malformed input.
std::vector<InvariantRow> parse_invariant_csv(std::istream& in);

std::string fit_csv_row(KnotId knot, const asymfit::FitResult& fit);

}  // namespace kvol::cli

#pragma once

// Stationary points of the knot potentials and the hyperbolic volumes they
// carry.
//
//   4_1: W(z)       = Li2(z) - Li2(1/z)
//   5_2: W(z, u)    = 2 Li2(z) + Li2(1/u) + log z log u - pi^2/2
//   6_1: W(z, u, v) = Li2(z) - Li2(1/z) - Li2(u) + Li2(1/v)
//                     + log(uv/z) log(z/u) + 2 pi i log(u/z)
//
// All logs and Li2 on principal branches; the volume is -Im W at the
// geometric stationary point.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "kvol/knot.hpp"

namespace kvol::saddle {

using cplx = std::complex<double>;

/// Number of complex coordinates of the knot's potential (1, 2 or 3).
std::size_t dimension(KnotId knot) noexcept;

struct PotentialValue {
    cplx value;
    /// Some log or Li2 argument lies within 1e-12 of its branch cut.
    bool near_branch_cut = false;
};

/// Throws std::invalid_argument on a coordinate count mismatch.
PotentialValue potential(KnotId knot, std::span<const cplx> point);

/// Left-hand sides of the algebraic stationarity system (zero at solutions):
///   4_1: z^2 - z + 1
///   5_2: u + z - uz,  u - (1-z)^2
///   6_1: z(1-z)^2 + u^2 v,  z^2(1-u) - u^2 v,  z(1-v) + uv
std::vector<cplx> stationary_equations(KnotId knot, std::span<const cplx> point);

/// Central-difference gradient of the potential with real step h.
std::vector<cplx> numerical_gradient(KnotId knot, std::span<const cplx> point, double h = 1e-5);

struct SaddleSolution {
    KnotId knot = KnotId::FourOne;
    std::vector<cplx> point;  ///< (z), (z, u) or (z, u, v)
    double residual = 0.0;    ///< max |equation|
    bool selected = false;    ///< meets the knot's geometric sign condition
};

/// The geometric sign condition: 4_1 positive volume, 5_2 Im z < 0 < Im u,
/// 6_1 Im z < 0 < Im(uv).
bool meets_sign_condition(KnotId knot, std::span<const cplx> point);

/// Newton iteration on the full system from `start` (step tolerance 1e-14,
/// at most 100 iterations). Empty if it does not converge.
std::optional<SaddleSolution> newton_polish(KnotId knot, std::span<const cplx> start);

/// All solutions with nonzero coordinates, by elimination to one univariate
/// polynomial, companion-matrix roots and Newton polish. Throws SolverError on
/// a degenerate back-substitution or a residual above 1e-12.
std::vector<SaddleSolution> solve_stationary(KnotId knot);

/// The unique solution meeting the sign condition (marked selected).
/// Throws SolverError on zero or several matches.
SaddleSolution select_geometric(const std::vector<SaddleSolution>& solutions, KnotId knot);

struct VolumeResult {
    KnotId knot = KnotId::FourOne;
    double volume = 0.0;
    SaddleSolution solution;
    cplx potential_value;
};

VolumeResult hyperbolic_volume(KnotId knot);

/// Coefficients (constant term first) of the eliminated univariate polynomial in z.
std::vector<double> eliminant(KnotId knot);

/// Roots of a polynomial (constant term first) from its companion matrix.
std::vector<cplx> polynomial_roots(std::span<const double> coeffs);

}  // namespace kvol::saddle

#include "kvol/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "kvol/error.hpp"
#include "kvol/qdilog.hpp"

namespace kvol::saddle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCutTolerance = 1e-12;
constexpr double kNewtonStep = 1e-14;
constexpr int kNewtonMaxIter = 100;
constexpr double kResidualBound = 1e-12;

using qdilog::li2;
using qdilog::principal_log;

// Tracks branch-cut proximity of the log/Li2 arguments that go into W.
struct CutWatch {
    bool near = false;

    cplx log(cplx w) {
        if (std::abs(w.imag()) < kCutTolerance && w.real() < kCutTolerance) near = true;
        return principal_log(w);
    }
    cplx dilog(cplx w) {
        if (std::abs(w.imag()) < kCutTolerance && w.real() > 1.0 - kCutTolerance) near = true;
        return li2(w);
    }
};

void require_dimension(KnotId knot, std::span<const cplx> point) {
    if (point.size() != dimension(knot)) {
        std::ostringstream os;
        os << "knot " << knot_name(knot) << " expects " << dimension(knot) << " coordinates, got "
           << point.size();
        throw std::invalid_argument(os.str());
    }
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

Eigen::MatrixXcd jacobian(KnotId knot, std::span<const cplx> x) {
    const cplx one{1.0, 0.0};
    switch (knot) {
        case KnotId::FourOne: {
            Eigen::MatrixXcd j(1, 1);
            j(0, 0) = 2.0 * x[0] - one;
            return j;
        }
        case KnotId::FiveTwo: {
            const cplx z = x[0], u = x[1];
            Eigen::MatrixXcd j(2, 2);
            j << one - u, one - z,
                 2.0 * (one - z), one;
            return j;
        }
        case KnotId::SixOne: {
            const cplx z = x[0], u = x[1], v = x[2];
            Eigen::MatrixXcd j(3, 3);
            j << (one - z) * (one - 3.0 * z), 2.0 * u * v, u * u,
                 2.0 * z * (one - u), -z * z - 2.0 * u * v, -u * u,
                 one - v, v, u - z;
            return j;
        }
    }
    return {};
}

SaddleSolution make_solution(KnotId knot, std::vector<cplx> point) {
    SaddleSolution s;
    s.knot = knot;
    s.residual = max_abs(stationary_equations(knot, point));
    s.selected = meets_sign_condition(knot, point);
    s.point = std::move(point);
    return s;
}

// Back-substitution from a root of the eliminant to the full point.
std::vector<cplx> lift(KnotId knot, cplx z) {
    const cplx one{1.0, 0.0};
    switch (knot) {
        case KnotId::FourOne:
            return {z};
        case KnotId::FiveTwo:
            return {z, (one - z) * (one - z)};
        case KnotId::SixOne: {
            if (std::abs(z) < 1e-12 || std::abs(z - one) < 1e-12) {
                throw SolverError("6_1 elimination: root z = " + std::to_string(z.real()) +
                                  " makes the back-substitution singular");
            }
            const cplx u = (z * z - z + one) / z;
            const cplx v = z * z / (z - one);
            return {z, u, v};
        }
    }
    return {};
}

}  // namespace

std::size_t dimension(KnotId knot) noexcept {
    switch (knot) {
        case KnotId::FourOne: return 1;
        case KnotId::FiveTwo: return 2;
        case KnotId::SixOne: return 3;
    }
    return 0;
}

PotentialValue potential(KnotId knot, std::span<const cplx> point) {
    require_dimension(knot, point);
    CutWatch w;
    cplx value;
    switch (knot) {
        case KnotId::FourOne: {
            const cplx z = point[0];
            value = w.dilog(z) - w.dilog(1.0 / z);
            break;
        }
        case KnotId::FiveTwo: {
            const cplx z = point[0], u = point[1];
            value = 2.0 * w.dilog(z) + w.dilog(1.0 / u) + w.log(z) * w.log(u) - kPi * kPi / 2.0;
            break;
        }
        case KnotId::SixOne: {
            const cplx z = point[0], u = point[1], v = point[2];
            const cplx two_pi_i{0.0, 2.0 * kPi};
            value = w.dilog(z) - w.dilog(1.0 / z) - w.dilog(u) + w.dilog(1.0 / v) +
                    w.log(u * v / z) * w.log(z / u) + two_pi_i * w.log(u / z);
            break;
        }
    }
    return {value, w.near};
}

std::vector<cplx> stationary_equations(KnotId knot, std::span<const cplx> point) {
    require_dimension(knot, point);
    const cplx one{1.0, 0.0};
    switch (knot) {
        case KnotId::FourOne: {
            const cplx z = point[0];
            return {z * z - z + one};
        }
        case KnotId::FiveTwo: {
            const cplx z = point[0], u = point[1];
            return {u + z - u * z, u - (one - z) * (one - z)};
        }
        case KnotId::SixOne: {
            const cplx z = point[0], u = point[1], v = point[2];
            return {z * (one - z) * (one - z) + u * u * v, z * z * (one - u) - u * u * v,
                    z * (one - v) + u * v};
        }
    }
    return {};
}

std::vector<cplx> numerical_gradient(KnotId knot, std::span<const cplx> point, double h) {
    require_dimension(knot, point);
    std::vector<cplx> grad(point.size());
    std::vector<cplx> x(point.begin(), point.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const cplx saved = x[i];
        x[i] = saved + h;
        const cplx plus = potential(knot, x).value;
        x[i] = saved - h;
        const cplx minus = potential(knot, x).value;
        x[i] = saved;
        // W is holomorphic, so a real step gives the complex derivative.
        grad[i] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

bool meets_sign_condition(KnotId knot, std::span<const cplx> point) {
    require_dimension(knot, point);
    switch (knot) {
        case KnotId::FourOne: return -potential(knot, point).value.imag() > 0.0;
        case KnotId::FiveTwo: return point[0].imag() < 0.0 && 0.0 < point[1].imag();
        case KnotId::SixOne: return point[0].imag() < 0.0 && 0.0 < (point[1] * point[2]).imag();
    }
    return false;
}

std::optional<SaddleSolution> newton_polish(KnotId knot, std::span<const cplx> start) {
    require_dimension(knot, start);
    const std::size_t dim = start.size();
    std::vector<cplx> x(start.begin(), start.end());
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
        const std::vector<cplx> f = stationary_equations(knot, x);
        Eigen::VectorXcd rhs(dim);
        for (std::size_t i = 0; i < dim; ++i) rhs(static_cast<Eigen::Index>(i)) = f[i];
        const Eigen::MatrixXcd jac = jacobian(knot, x);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(jac);
        if (!lu.isInvertible()) return std::nullopt;
        const Eigen::VectorXcd step = lu.solve(rhs);
        for (std::size_t i = 0; i < dim; ++i) x[i] -= step(static_cast<Eigen::Index>(i));
        for (const cplx& c : x) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return std::nullopt;
        }
        if (step.norm() <= kNewtonStep) return make_solution(knot, std::move(x));
    }
    // Converged to rounding level but never got a step below the tolerance.
    SaddleSolution s = make_solution(knot, std::move(x));
    if (s.residual <= kResidualBound) return s;
    return std::nullopt;
}

std::vector<double> eliminant(KnotId knot) {
    switch (knot) {
        case KnotId::FourOne: return {1.0, -1.0, 1.0};              // z^2 - z + 1
        case KnotId::FiveTwo: return {-1.0, 2.0, -3.0, 1.0};        // z^3 - 3z^2 + 2z - 1
        case KnotId::SixOne: return {1.0, -3.0, 6.0, -5.0, 2.0};    // 2z^4 - 5z^3 + 6z^2 - 3z + 1
    }
    return {};
}

std::vector<cplx> polynomial_roots(std::span<const double> coeffs) {
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
    if (deg < 2) return {};
    --deg;
    const double lead = coeffs[deg];
    const auto n = static_cast<Eigen::Index>(deg);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw SolverError("companion matrix eigenvalues did not converge");
    std::vector<cplx> roots;
    for (Eigen::Index i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
    // Deterministic order: by real part, then imaginary part.
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

std::vector<SaddleSolution> solve_stationary(KnotId knot) {
    const std::vector<double> poly = eliminant(knot);
    std::vector<SaddleSolution> out;
    for (const cplx z : polynomial_roots(poly)) {
        const std::vector<cplx> seed = lift(knot, z);
        std::optional<SaddleSolution> s = newton_polish(knot, seed);
        if (!s) throw SolverError("Newton polish diverged from eliminant root of " + std::string(knot_name(knot)));
        if (s->residual > kResidualBound) {
            std::ostringstream os;
            os << knot_name(knot) << " stationary residual " << s->residual << " exceeds " << kResidualBound;
            throw SolverError(os.str());
        }
        for (const cplx& c : s->point) {
            if (std::abs(c) < 1e-12) throw SolverError("stationary point with a zero coordinate");
        }
        out.push_back(std::move(*s));
    }
    return out;
}

SaddleSolution select_geometric(const std::vector<SaddleSolution>& solutions, KnotId knot) {
    if (solutions.empty()) {
        throw SolverError("select_geometric: no candidate solutions for " + std::string(knot_name(knot)));
    }
    std::optional<SaddleSolution> found;
    for (const SaddleSolution& s : solutions) {
        if (s.knot != knot) throw std::invalid_argument("select_geometric: solution for a different knot");
        if (!meets_sign_condition(knot, s.point)) continue;
        if (found) {
            throw SolverError("select_geometric: several solutions meet the sign condition for " +
                              std::string(knot_name(knot)));
        }
        found = s;
    }
    if (!found) {
        throw SolverError("select_geometric: no solution meets the sign condition for " +
                          std::string(knot_name(knot)));
    }
    found->selected = true;
    return *found;
}

VolumeResult hyperbolic_volume(KnotId knot) {
    VolumeResult r;
    r.knot = knot;
    r.solution = select_geometric(solve_stationary(knot), knot);
    r.potential_value = potential(knot, r.solution.point).value;
    r.volume = -r.potential_value.imag();
    if (!(r.volume > 0.0)) throw SolverError("selected stationary point gives a non-positive volume");
    return r;
}

}  // namespace kvol::saddle

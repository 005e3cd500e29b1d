#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <complex>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "csv.hpp"
#include "kvol/asymfit.hpp"
#include "kvol/cyclo.hpp"
#include "kvol/error.hpp"
#include "kvol/invariant.hpp"
#include "kvol/qdilog.hpp"
#include "kvol/saddle.hpp"

namespace kvol::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text output rounds to 15 significant digits; CSV keeps the exact doubles.
std::string fmt(double x) {
    if (!std::isfinite(x)) return format_double(x);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string fmt_complex(std::complex<double> z) {
    std::string s = fmt(z.real());
    s += z.imag() < 0 || (z.imag() == 0 && std::signbit(z.imag())) ? " - " : " + ";
    s += fmt(std::abs(z.imag()));
    s += "i";
    return s;
}

std::complex<double> parse_complex_flag(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {re, 0.0};
        }
        const std::string a = text.substr(0, comma);
        const std::string b = text.substr(comma + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        const double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        return {re, im};
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": expected \"<re>,<im>\", got \"" + text + "\"");
    }
}

KnotId knot_from_flag(const std::string& s) {
    const auto k = parse_knot(s);
    if (!k) throw UsageError("--knot: expected one of 4_1, 5_2, 6_1");
    return *k;
}

const CLI::IsMember& knot_names() {
    static const CLI::IsMember check({"4_1", "5_2", "6_1"});
    return check;
}

void print_invariant_text(std::ostream& os, const InvariantValue& v) {
    const double log_abs = v.value.is_zero() ? -INFINITY : v.value.log_mag();
    os << "knot " << knot_name(v.knot) << "  N = " << v.order << "  mode = " << mode_name(v.mode) << '\n';
    if (v.plain) {
        os << "  <L>              = " << fmt_complex(*v.plain) << '\n';
        os << "  |<L>|            = " << fmt(std::abs(*v.plain)) << '\n';
    } else {
        os << "  <L>              = exp(" << fmt(log_abs) << ") * e^{i " << fmt(v.value.arg())
           << "}\n";
    }
    os << "  log|<L>|         = " << fmt(log_abs) << '\n';
    os << "  2pi log|<L>| / N = " << fmt(2.0 * kPi * log_abs / v.order) << '\n';
    os << "  terms            = " << v.term_count << '\n';
    os << "  accum error      = " << fmt(v.accum_error_estimate) << '\n';
}

void print_fit_text(std::ostream& os, KnotId knot, const asymfit::FitResult& fit) {
    const double saddle_volume = saddle::hyperbolic_volume(knot).volume;
    os << "knot " << knot_name(knot) << "  model = " << asymfit::model_name(fit.model) << "  N in [" << fit.n_min
       << ", " << fit.n_max << "], " << fit.point_count << " points\n";
    os << "  log|<L>| ~ a N + b log N + c\n";
    os << "  a = " << fmt(fit.coefficients[0]) << "\n  b = " << fmt(fit.coefficients[1])
       << "\n  c = " << fmt(fit.coefficients[2]) << '\n';
    os << "  rms residual     = " << fmt(fit.rms_residual) << '\n';
    os << "  volume estimate  = " << fmt(fit.volume_estimate) << '\n';
    os << "  saddle volume    = " << fmt(saddle_volume) << '\n';
    os << "  relative gap     = " << fmt(std::abs(fit.volume_estimate - saddle_volume) / saddle_volume)
       << '\n';
}

}  // namespace

std::vector<CheckOutcome> identity_suite() {
    std::vector<CheckOutcome> out;
    auto record = [&](std::string name, bool pass, std::string detail) {
        out.push_back({std::move(name), pass, std::move(detail)});
    };
    auto sci = [](double x) {
        std::ostringstream os;
        os.precision(3);
        os << std::scientific << x;
        return os.str();
    };

    {
        const AlexanderReport r = alexander_check();
        std::ostringstream os;
        for (const auto& e : r.entries) os << knot_name(e.knot) << "=" << fmt(e.exact_abs) << " ";
        record("alexander N=2 (5, 7, 9)", r.pass, os.str());
    }
    {
        double worst = 0.0;
        for (KnotId knot : kAllKnots) {
            for (unsigned n = 1; n <= 20; ++n) {
                const auto exact = exact_invariant_value(knot, n).plain.value();
                const auto lg = kashaev_invariant(knot, n, EvalMode::Logscale).value.to_complex();
                worst = std::max(worst, std::abs(lg - exact) / std::abs(exact));
            }
        }
        record("exact oracle vs logscale, N <= 20", worst <= 1e-9, "max rel dev " + sci(worst));
    }
    {
        double worst = 0.0;
        for (KnotId knot : kAllKnots) {
            for (unsigned n = 1; n <= 60; ++n) {
                const auto d = kashaev_invariant(knot, n, EvalMode::Direct).plain.value();
                const auto lg = kashaev_invariant(knot, n, EvalMode::Logscale).value.to_complex();
                worst = std::max(worst, std::abs(lg - d) / std::abs(d));
            }
        }
        record("direct vs logscale, N <= 60", worst <= 1e-9, "max rel dev " + sci(worst));
    }
    {
        double worst = 0.0;
        for (double gamma : {kPi / 5, kPi / 10}) {
            const auto params = qdilog::QdParams::for_gamma(gamma);
            for (int i = 0; i < 20; ++i) {
                const double lo = -kPi + gamma;
                const double p = lo + (2.0 * (kPi - gamma)) * (i + 0.5) / 20.0;
                const auto lhs = (1.0 + std::exp(std::complex<double>(0, p))) * qdilog::faddeev_s(params, p + gamma);
                const auto rhs = qdilog::faddeev_s(params, p - gamma);
                worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
            }
        }
        record("faddeev functional equation", worst <= 1e-6, "max rel residual " + sci(worst));
    }
    {
        const unsigned n = 10;
        const double gamma = kPi / n;
        const auto params = qdilog::QdParams::for_gamma(gamma);
        const PochhammerTable table(n);
        double worst = 0.0;
        for (unsigned k = 0; k < n; ++k) {
            const double p = -kPi + gamma + 2.0 * k * gamma;
            worst = std::max(worst, std::abs(qdilog::f_gamma(params, p) - table.values()[k]));
            worst = std::max(worst, std::abs(qdilog::f_bar_gamma(params, p) - std::conj(table.values()[k])));
        }
        record("analytic continuation of (w)_k, N=10", worst <= 1e-6, "max abs dev " + sci(worst));
    }
    {
        double worst = 0.0;
        for (int ri = 1; ri <= 10; ++ri) {
            for (int ti = 1; ti <= 30; ++ti) {
                const qdilog::PolarPoint pt{0.1 * ri, 0.1 * ti};
                const double ref = qdilog::li2(std::polar(pt.r, pt.theta)).imag();
                worst = std::max(worst, std::abs(qdilog::im_li2_polar(pt) - ref));
            }
        }
        record("Im Li2 polar formula", worst <= 1e-10, "max abs dev " + sci(worst));
    }
    {
        constexpr double expected[] = {2.02988321, 2.82812208, 3.16396322};
        double worst = 0.0;
        std::ostringstream os;
        for (std::size_t i = 0; i < kAllKnots.size(); ++i) {
            const auto v = saddle::hyperbolic_volume(kAllKnots[i]);
            worst = std::max(worst, std::abs(v.volume - expected[i]));
            os << knot_name(kAllKnots[i]) << "=" << fmt(v.volume) << " ";
        }
        record("saddle volumes", worst <= 1e-6, os.str());
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kashaev invariants of 4_1, 5_2, 6_1 and the hyperbolic volumes they grow with", "kvol"};
    app.require_subcommand(1);

    std::string knot_s;
    std::string format = "text";
    std::string out_path;
    unsigned threads = 1;

    auto* inv = app.add_subcommand("invariant", "Evaluate <L> at one or more orders N");
    std::vector<unsigned> orders;
    std::string mode_s = "logscale";
    std::uint64_t chunk = 4096;
    inv->add_option("--knot", knot_s, "4_1, 5_2 or 6_1")->required()->check(knot_names());
    inv->add_option("--n", orders, "Order N (comma-separated list allowed)")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    inv->add_option("--mode", mode_s, "direct, logscale or exact")
        ->check(CLI::IsMember({"direct", "logscale", "exact"}));
    inv->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    inv->add_option("--chunk-size", chunk, "Terms per reduction chunk")->check(CLI::PositiveNumber);
    inv->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));
    inv->add_option("--out", out_path, "Write to this file instead of stdout");

    auto* vol = app.add_subcommand("volume", "Stationary points and hyperbolic volume");
    vol->add_option("--knot", knot_s, "4_1, 5_2 or 6_1")->required()->check(knot_names());
    vol->add_option("--out", out_path, "Write to this file instead of stdout");

    auto* fit = app.add_subcommand("fit", "Fit the growth of log|<L>| and compare with the volume");
    unsigned n_min = 0, n_max = 0, step = 1;
    std::string model_s = "linear_plus_log";
    std::string in_path;
    fit->add_option("--knot", knot_s, "4_1, 5_2 or 6_1")->check(knot_names());
    auto* o_nmin = fit->add_option("--n-min", n_min);
    auto* o_nmax = fit->add_option("--n-max", n_max);
    fit->add_option("--step", step)->check(CLI::PositiveNumber);
    fit->add_option("--model", model_s)->check(CLI::IsMember({"linear", "linear_plus_log"}));
    fit->add_option("--threads", threads, "Orders evaluated concurrently")->check(CLI::PositiveNumber);
    fit->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));
    auto* o_in = fit->add_option("--in", in_path, "Read points from an invariant CSV file");
    o_in->excludes(o_nmin)->excludes(o_nmax);
    fit->add_option("--out", out_path, "Write to this file instead of stdout");

    auto* dilog = app.add_subcommand("dilog", "Evaluate Li2(z)");
    std::string z_s;
    dilog->add_option("--z", z_s, "\"<re>,<im>\"")->required();

    auto* lob = app.add_subcommand("lobachevsky", "Evaluate Lobachevsky's function");
    double theta = 0.0;
    lob->add_option("--theta", theta)->required();

    auto* fad = app.add_subcommand("faddeev", "Evaluate Faddeev's S_gamma(p)");
    double gamma = 0.0;
    std::string p_s;
    fad->add_option("--gamma", gamma)->required()->check(CLI::PositiveNumber);
    fad->add_option("--p", p_s, "\"<re>,<im>\"")->required();

    auto* verify = app.add_subcommand("verify", "Run the identity suite");

    std::vector<const char*> argv{"kvol"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return 2;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    std::optional<std::complex<double>> z_val, p_val;
    try {
        // Flag validation that CLI11 cannot express.
        if (*dilog) z_val = parse_complex_flag(z_s, "--z");
        if (*fad) p_val = parse_complex_flag(p_s, "--p");
        if (*fit && in_path.empty()) {
            if (knot_s.empty()) throw UsageError("fit: --knot is required without --in");
            if (n_min < 2 || n_max <= n_min) throw UsageError("fit: need 2 <= --n-min < --n-max");
        }
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw UsageError("cannot open output file " + out_path);
            sink = &file;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }
    std::ostream& os = *sink;

    try {
        if (*inv) {
            const KnotId knot = knot_from_flag(knot_s);
            const EvalMode mode = *parse_mode(mode_s);
            if (format == "csv") os << kInvariantHeader << '\n';
            for (unsigned n : orders) {
                const InvariantValue v = mode == EvalMode::Exact
                                             ? exact_invariant_value(knot, n)
                                             : kashaev_invariant(knot, n, mode, EvalOptions{threads, chunk});
                if (format == "csv") {
                    os << invariant_csv_row(v) << '\n';
                } else {
                    print_invariant_text(os, v);
                }
            }
        } else if (*vol) {
            const KnotId knot = knot_from_flag(knot_s);
            const auto r = saddle::hyperbolic_volume(knot);
            static constexpr const char* names[] = {"z0", "u0", "v0"};
            os << "knot " << knot_name(knot) << '\n';
            for (std::size_t i = 0; i < r.solution.point.size(); ++i) {
                os << "  " << names[i] << " = " << fmt_complex(r.solution.point[i]) << '\n';
            }
            os << "  residual  = " << fmt(r.solution.residual) << '\n';
            os << "  potential = " << fmt_complex(r.potential_value) << '\n';
            os << "  V = " << fmt(r.volume) << '\n';
        } else if (*fit) {
            const auto model = *asymfit::parse_model(model_s);
            asymfit::GrowthSeries series;
            if (!in_path.empty()) {
                std::ifstream in(in_path);
                if (!in) throw Error("cannot open " + in_path);
                const auto rows = parse_invariant_csv(in);
                if (rows.empty()) throw Error(in_path + ": no data rows");
                series.knot = rows.front().knot;
                for (const auto& r : rows) {
                    if (r.knot != series.knot) throw Error(in_path + ": rows mix several knots");
                    series.points.push_back({r.n, r.log_abs});
                }
                if (!knot_s.empty() && knot_from_flag(knot_s) != series.knot) {
                    throw Error("--knot does not match the knot in " + in_path);
                }
            } else {
                series = asymfit::collect_series(knot_from_flag(knot_s), {n_min, n_max, step},
                                                 EvalOptions{threads, 4096});
            }
            const auto result = asymfit::fit_growth(series, model);
            if (format == "csv") {
                os << kFitHeader << '\n' << fit_csv_row(series.knot, result) << '\n';
            } else {
                print_fit_text(os, series.knot, result);
            }
        } else if (*dilog) {
            const auto v = qdilog::li2(*z_val);
            os << "Li2(" << fmt_complex(*z_val) << ") = " << fmt_complex(v) << '\n';
        } else if (*lob) {
            os << "Lambda(" << fmt(theta) << ") = " << fmt(qdilog::lobachevsky(theta)) << '\n';
        } else if (*fad) {
            const auto params = qdilog::QdParams::for_gamma(gamma);
            const auto log_s = qdilog::log_faddeev_s(params, *p_val);
            os << "log S_gamma(p) = " << fmt_complex(log_s) << '\n';
            os << "S_gamma(p)     = " << fmt_complex(std::exp(log_s)) << '\n';
        } else if (*verify) {
            bool all = true;
            for (const auto& c : identity_suite()) {
                os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  " << c.detail << '\n';
                all = all && c.pass;
            }
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace kvol::cli

#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kvol::cli {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

template <class T>
T parse_number(std::string_view field, std::size_t line_no, std::string_view column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        std::ostringstream os;
        os << "line " << line_no << ": bad " << column << " value '" << field << "'";
        throw std::invalid_argument(os.str());
    }
    return value;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string invariant_csv_row(const InvariantValue& v) {
    const double log_abs = v.value.is_zero() ? -INFINITY : v.value.log_mag();
    const double re = v.plain ? v.plain->real() : NAN;
    const double im = v.plain ? v.plain->imag() : NAN;
    std::ostringstream os;
    os << knot_name(v.knot) << ',' << v.order << ',' << mode_name(v.mode) << ',' << format_double(re) << ','
       << format_double(im) << ',' << format_double(log_abs) << ','
       << format_double(2.0 * std::numbers::pi * log_abs / v.order) << ',' << v.term_count << ','
       << format_double(v.accum_error_estimate);
    return os.str();
}

std::vector<InvariantRow> parse_invariant_csv(std::istream& in) {
    std::vector<InvariantRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == kInvariantHeader) continue;
        const auto fields = split(line);
        if (fields.size() != 9) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 9 fields, got " +
                                        std::to_string(fields.size()));
        }
        const auto knot = parse_knot(fields[0]);
        if (!knot) throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown knot");
        const auto mode = parse_mode(fields[2]);
        if (!mode) throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown mode");
        rows.push_back({*knot, parse_number<unsigned>(fields[1], line_no, "N"), *mode,
                        parse_number<double>(fields[5], line_no, "log_abs")});
    }
    return rows;
}

std::string fit_csv_row(KnotId knot, const asymfit::FitResult& fit) {
    std::ostringstream os;
    os << knot_name(knot) << ',' << asymfit::model_name(fit.model) << ',' << fit.n_min << ',' << fit.n_max << ','
       << fit.point_count << ',' << format_double(fit.coefficients[0]) << ','
       << format_double(fit.coefficients[1]) << ',' << format_double(fit.coefficients[2]) << ','
       << format_double(fit.rms_residual) << ',' << format_double(fit.volume_estimate);
    return os.str();
}

}  // namespace kvol::cli

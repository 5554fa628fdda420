#include "zsp/signal_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace zsp {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line) + ": cannot parse '" +
                                                 std::string(field) + "' as a number");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFinite, "line " + std::to_string(line) + ": non-finite value");
    }
    return value;
}

}  // namespace

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

SampledPotential parse_signal(std::istream& in, int sigma) {
    std::vector<double> t;
    std::vector<Complex> q;
    bool have_header = false;
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            if (line != "t,re_q,im_q") {
                throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) +
                                                         ": expected header 't,re_q,im_q'");
            }
            have_header = true;
            continue;
        }
        std::array<std::string_view, 3> fields;
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const auto piece = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
            if (count < fields.size()) fields[count] = piece;
            ++count;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (count != 3) {
            throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                                     std::to_string(count));
        }
        t.push_back(parse_field(fields[0], line_no));
        q.emplace_back(parse_field(fields[1], line_no), parse_field(fields[2], line_no));
    }

    if (!have_header) throw Error(ErrorCode::InvalidInput, "signal has no header");
    if (q.size() < 3) throw Error(ErrorCode::InvalidInput, "signal needs at least 3 rows");
    if (q.size() % 2 == 0) {
        throw Error(ErrorCode::InvalidInput, "even node count " + std::to_string(q.size()) + " (grid needs 2M+1 nodes)");
    }

    const double half_width = 0.5 * (t.back() - t.front());
    if (!(half_width > 0.0)) throw Error(ErrorCode::InvalidInput, "non-uniform grid: time must increase");
    const double tolerance = 1e-9 * half_width;
    if (std::abs(t.front() + t.back()) > tolerance) {
        throw Error(ErrorCode::InvalidInput, "grid must be symmetric about t = 0");
    }
    const UniformGrid grid(half_width, (q.size() - 1) / 2);
    for (std::size_t n = 0; n < t.size(); ++n) {
        if (std::abs(t[n] - grid.node(n)) > tolerance) {
            throw Error(ErrorCode::InvalidInput, "non-uniform grid at row " + std::to_string(n + 1));
        }
    }
    return SampledPotential(grid, std::move(q), sigma);
}

SampledPotential load_signal(const std::filesystem::path& path, int sigma) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open signal file '" + path.string() + "'");
    return parse_signal(in, sigma);
}

void write_signal(std::ostream& out, const SampledPotential& potential) {
    out << "t,re_q,im_q\n";
    const auto q = potential.samples();
    for (std::size_t n = 0; n < q.size(); ++n) {
        out << format_double(potential.grid().node(n)) << ',' << format_double(q[n].real()) << ','
            << format_double(q[n].imag()) << '\n';
    }
}

}  // namespace zsp

#include "zsp/scattering.hpp"

#include <cmath>
#include <numbers>

#include "zsp/parallel.hpp"
#include "zsp/propagators.hpp"

namespace zsp {
namespace {

constexpr double kMaxExponent = 700.0;
constexpr double kLogOverflow = 709.0;
constexpr double kLogUnderflow = -745.0;

struct Scaled {
    Complex value;
    bool overflow = false;
};

// v * e^{exponent} * e^{i phase}, without forming e^{exponent} when it would
// leave double range.
Scaled scale_component(Complex v, double exponent, double phase) {
    if (v == Complex{}) return {Complex{}, false};
    if (std::abs(exponent) < kMaxExponent) {
        return {v * std::polar(std::exp(exponent), phase), false};
    }
    const double log_mag = std::log(std::abs(v)) + exponent;
    if (log_mag > kLogOverflow) return {Complex{}, true};
    if (log_mag < kLogUnderflow) return {Complex{}, false};
    return {std::polar(std::exp(log_mag), std::arg(v) + phase), false};
}

}  // namespace

SpectralGrid::SpectralGrid(const UniformGrid& time_grid, std::optional<std::size_t> count)
    : count_(count.value_or(time_grid.size())),
      step_(std::numbers::pi / (2.0 * time_grid.half_width())),
      half_width_(std::numbers::pi / (2.0 * time_grid.step())) {
    if (count_ == 0) throw Error(ErrorCode::InvalidInput, "spectral grid needs at least one point");
}

std::vector<double> SpectralGrid::values() const {
    std::vector<double> xs(count_);
    for (std::size_t j = 0; j < count_; ++j) xs[j] = xi(j);
    return xs;
}

ScatteringSample extract_ab(const JostState& final, Complex zeta) {
    const double t = final.layer_time;
    const double xi = zeta.real();
    const double eta = zeta.imag();

    ScatteringSample out;
    out.zeta = zeta;

    const Scaled a = scale_component(final.v[0], final.log_scale - eta * t, xi * t);
    if (a.overflow) throw Error(ErrorCode::NonFinite, "a(zeta) overflows double range");
    out.a = a.value;

    const double b_exponent = final.log_scale + eta * t;
    const Scaled b = scale_component(final.v[1], b_exponent, -xi * t);
    out.b = b.value;
    // v2 lost to underflow while the restoring factor is unrepresentable.
    out.b_underflow = b.overflow || (final.v[1] == Complex{} && final.v[0] != Complex{} && b_exponent > kLogOverflow);
    require_finite(out.a, "a(zeta)");
    require_finite(out.b, "b(zeta)");
    return out;
}

ScatteringSample scatter(const SampledPotential& potential, Complex zeta, const SchemeParams& params) {
    return extract_ab(propagate(potential, zeta, params), zeta);
}

std::vector<ScatteringSample> continuous_sweep(const SampledPotential& potential, std::span<const double> xis,
                                               const SchemeParams& params, unsigned threads) {
    std::vector<ScatteringSample> out(xis.size());
    parallel_for(xis.size(), threads,
                 [&](std::size_t j) { out[j] = scatter(potential, Complex(xis[j], 0.0), params); });
    return out;
}

std::vector<ScatteringSample> continuous_sweep(const SampledPotential& potential, const SpectralGrid& grid,
                                               const SchemeParams& params, unsigned threads) {
    const std::vector<double> xs = grid.values();
    return continuous_sweep(potential, xs, params, threads);
}

Complex reflection(const ScatteringSample& sample) {
    if (std::abs(sample.a) <= 1e-300) {
        throw Error(ErrorCode::DivisionHazard, "|a| too small to form the reflection coefficient");
    }
    return sample.b / sample.a;
}

}  // namespace zsp

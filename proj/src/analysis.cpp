#include "zsp/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zsp/scattering.hpp"

namespace zsp {
namespace {

double deviation(const ScatteringSample& s, const Vec2& reference) {
    return std::hypot(std::abs(s.a - reference[0]), std::abs(s.b - reference[1]));
}

double deviation(const ScatteringSample& s, const ScatteringSample& reference) {
    return deviation(s, Vec2{reference.a, reference.b});
}

}  // namespace

double continuous_energy(std::span<const ScatteringSample> samples, double dxi) {
    if (samples.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const double mag2 = std::norm(samples[j].a);
        if (!(mag2 > 0.0)) {
            throw Error(ErrorCode::InvalidInput, "a(xi) vanishes on the real axis; ln|a|^2 is singular");
        }
        const double f = -std::log(mag2) / std::numbers::pi;
        const bool endpoint = j == 0 || j + 1 == samples.size();
        sum += endpoint ? 0.5 * f : f;
    }
    if (samples.size() == 1) return 0.0;
    return sum * dxi;
}

double discrete_energy(std::span<const Complex> eigenvalues, int n) {
    if (n != 0) {
        throw Error(ErrorCode::Unsupported, "only the n = 0 trace formula is implemented");
    }
    double sum = 0.0;
    for (const Complex& z : eigenvalues) {
        if (!(z.imag() > 0.0)) throw Error(ErrorCode::InvalidInput, "eigenvalues must lie in the upper half-plane");
        // (2i conj(z) - 2i z) = 4 Im z
        sum += (2.0 * kI * std::conj(z) - 2.0 * kI * z).real();
    }
    return sum;
}

double discrete_energy(std::span<const DiscreteMode> modes, int n) {
    std::vector<Complex> zs;
    zs.reserve(modes.size());
    for (const auto& m : modes) zs.push_back(m.zeta);
    return discrete_energy(std::span<const Complex>(zs), n);
}

double c0_time_domain(const SampledPotential& potential) {
    const auto q = potential.samples();
    double sum = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n) {
        const double f = std::norm(q[n]);
        sum += (n == 0 || n + 1 == q.size()) ? 0.5 * f : f;
    }
    return sum * potential.grid().step();
}

ParsevalReport parseval_check(const SampledPotential& potential, std::span<const ScatteringSample> samples,
                              std::span<const DiscreteMode> modes) {
    ParsevalReport report;
    report.c0_time = c0_time_domain(potential);
    if (samples.size() >= 2) {
        const double first = samples.front().zeta.real();
        const double dxi = (samples.back().zeta.real() - first) / static_cast<double>(samples.size() - 1);
        for (std::size_t j = 0; j < samples.size(); ++j) {
            const double expected = first + static_cast<double>(j) * dxi;
            const double tolerance = 1e-9 * (std::abs(first) + std::abs(expected) + std::abs(dxi));
            if (samples[j].zeta.imag() != 0.0 || std::abs(samples[j].zeta.real() - expected) > tolerance) {
                throw Error(ErrorCode::InvalidInput, "continuous-spectrum samples must lie on a uniform real grid");
            }
        }
        report.e_continuous = continuous_energy(samples, dxi);
    }
    report.e_discrete = discrete_energy(modes);
    report.residual = std::abs(report.c0_time - (report.e_continuous + report.e_discrete));
    return report;
}

double order_from_deviations(double coarse_deviation, double fine_deviation, double step_ratio) {
    constexpr double kFloor = 100.0 * std::numeric_limits<double>::epsilon();
    if (!(coarse_deviation >= kFloor) || !(fine_deviation >= kFloor)) {
        throw Error(ErrorCode::RoundoffFloor, "deviation at roundoff floor; order estimate is meaningless");
    }
    return std::log(coarse_deviation / fine_deviation) / std::log(step_ratio);
}

OrderEstimate estimate_order(const PotentialFactory& factory, double half_width, Complex zeta,
                             const SchemeParams& params, std::size_t coarse_M, const Vec2& reference_ab) {
    const SampledPotential coarse = factory(UniformGrid(half_width, coarse_M));
    const SampledPotential fine = factory(UniformGrid(half_width, 2 * coarse_M));

    OrderEstimate est;
    est.xi = zeta.real();
    est.coarse_M = coarse_M;
    est.fine_M = 2 * coarse_M;
    est.coarse_error = deviation(scatter(coarse, zeta, params), reference_ab);
    est.fine_error = deviation(scatter(fine, zeta, params), reference_ab);
    est.m = order_from_deviations(est.coarse_error, est.fine_error);
    return est;
}

OrderEstimate estimate_order_self_reference(const PotentialFactory& factory, double half_width, Complex zeta,
                                            const SchemeParams& params, std::size_t coarse_M) {
    const ScatteringSample s1 = scatter(factory(UniformGrid(half_width, coarse_M)), zeta, params);
    const ScatteringSample s2 = scatter(factory(UniformGrid(half_width, 2 * coarse_M)), zeta, params);
    const ScatteringSample s4 = scatter(factory(UniformGrid(half_width, 4 * coarse_M)), zeta, params);

    OrderEstimate est;
    est.xi = zeta.real();
    est.coarse_M = coarse_M;
    est.fine_M = 2 * coarse_M;
    est.coarse_error = deviation(s1, s2);
    est.fine_error = deviation(s2, s4);
    est.m = order_from_deviations(est.coarse_error, est.fine_error);
    est.self_reference = true;
    return est;
}

std::size_t min_nodes(double xi_max, double q_max, double half_width) {
    if (!(half_width > 0.0)) throw Error(ErrorCode::InvalidInput, "L must be positive");
    const double omega = std::hypot(xi_max, q_max);
    return static_cast<std::size_t>(std::ceil(2.0 * half_width * omega / std::numbers::pi));
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorCode::InvalidInput, "slope fit needs matching series of at least two points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log2(x[i]);
        const double ly = std::log2(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace zsp

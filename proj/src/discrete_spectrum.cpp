#include "zsp/discrete_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "zsp/scattering.hpp"

namespace zsp {
namespace {

constexpr double kVanishingDerivative = 1e-14;

void require_upper_half_plane(Complex zeta) {
    require_finite(zeta, "spectral parameter");
    if (!(zeta.imag() > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "discrete-spectrum routines need Im(zeta) > 0");
    }
}

// Newton needs a stencil that stays inside the upper half-plane even when the
// iterate approaches the axis.
double safe_step(Complex zeta) { return std::min(default_derivative_step(zeta), 0.5 * zeta.imag()); }

std::string describe(Complex z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

Complex a_of_zeta(const SampledPotential& potential, Complex zeta, const SchemeParams& params) {
    require_upper_half_plane(zeta);
    return scatter(potential, zeta, params).a;
}

double default_derivative_step(Complex zeta) { return 1e-5 * std::max(1.0, std::abs(zeta)); }

Complex central_derivative(const std::function<Complex(Complex)>& f, Complex zeta, double h, bool richardson) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidInput, "difference step must be positive");
    auto difference = [&](double step) {
        const Complex dz = kI * step;
        return (f(zeta + dz) - f(zeta - dz)) / (2.0 * dz);
    };
    const Complex coarse = difference(h);
    if (!richardson) return coarse;
    const Complex fine = difference(0.5 * h);
    return fine + (fine - coarse) / 3.0;
}

Complex a_prime(const SampledPotential& potential, Complex zeta, const SchemeParams& params,
                std::optional<double> h, bool richardson) {
    require_upper_half_plane(zeta);
    const double step = h.value_or(default_derivative_step(zeta));
    if (step >= zeta.imag()) {
        throw Error(ErrorCode::InvalidInput, "difference step must be smaller than Im(zeta)");
    }
    return central_derivative([&](Complex z) { return scatter(potential, z, params).a; }, zeta, step,
                              richardson);
}

DiscreteMode evaluate_mode(const SampledPotential& potential, Complex zeta, const SchemeParams& params) {
    require_upper_half_plane(zeta);
    const ScatteringSample s = scatter(potential, zeta, params);
    DiscreteMode mode;
    mode.zeta = zeta;
    mode.a_at = s.a;
    mode.b = s.b;
    mode.a_prime = a_prime(potential, zeta, params, safe_step(zeta));
    mode.r = mode.a_prime != Complex{} ? mode.b / mode.a_prime
                                       : Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    return mode;
}

DiscreteMode refine_eigenvalue(const SampledPotential& potential, Complex zeta0, const SchemeParams& params,
                               const RefineOptions& options) {
    require_upper_half_plane(zeta0);
    Complex zeta = zeta0;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        const Complex a = scatter(potential, zeta, params).a;
        bool converged = std::abs(a) < options.a_tolerance;
        if (!converged) {
            const Complex da = a_prime(potential, zeta, params, safe_step(zeta));
            if (std::abs(da) < kVanishingDerivative) {
                throw Error(ErrorCode::Divergence, "a'(zeta) vanished at " + describe(zeta) + " (no isolated zero)");
            }
            const Complex step = a / da;
            zeta -= step;
            if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag()) || !(zeta.imag() > 0.0)) {
                throw Error(ErrorCode::Divergence, "iterate left the upper half-plane from start " + describe(zeta0));
            }
            converged = std::abs(step) < options.step_tolerance;
        }
        if (converged) {
            DiscreteMode mode = evaluate_mode(potential, zeta, params);
            mode.iterations = iter;
            return mode;
        }
    }
    throw Error(ErrorCode::Divergence, "no convergence within " + std::to_string(options.max_iterations) +
                                           " iterations from start " + describe(zeta0));
}

}  // namespace zsp

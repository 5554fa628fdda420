#pragma once

#include <functional>
#include <optional>

#include "zsp/types.hpp"

namespace zsp {

/// a(zeta) in the upper half-plane.
Complex a_of_zeta(const SampledPotential& potential, Complex zeta, const SchemeParams& params);

/// Central difference of an analytic function along the imaginary direction,
/// [f(z + ih) - f(z - ih)] / (2ih). With richardson = true the estimate at h
/// and h/2 are combined as D(h/2) + (D(h/2) - D(h))/3.
Complex central_derivative(const std::function<Complex(Complex)>& f, Complex zeta, double h,
                           bool richardson = false);

/// Default difference step 1e-5 * max(1, |zeta|).
double default_derivative_step(Complex zeta);

/// da/dzeta by central differences. Throws InvalidInput when the stencil would
/// reach the real axis (h >= Im zeta).
Complex a_prime(const SampledPotential& potential, Complex zeta, const SchemeParams& params,
                std::optional<double> h = std::nullopt, bool richardson = false);

struct RefineOptions {
    double a_tolerance = 1e-10;
    double step_tolerance = 1e-12;
    int max_iterations = 50;
};

/// Newton iteration zeta <- zeta - a/a' from zeta0. Throws Divergence when the
/// iterate leaves the upper half-plane, the iteration budget runs out, or a'
/// vanishes.
DiscreteMode refine_eigenvalue(const SampledPotential& potential, Complex zeta0, const SchemeParams& params,
                               const RefineOptions& options = {});

/// Builds the mode data (a, b, a', r = b/a') at a given zeta without
/// iterating.
DiscreteMode evaluate_mode(const SampledPotential& potential, Complex zeta, const SchemeParams& params);

}  // namespace zsp

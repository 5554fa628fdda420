#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "zsp/types.hpp"

namespace zsp {

/// Produces the potential sampled on a given grid; used to build embedded
/// grids for order estimation.
using PotentialFactory = std::function<SampledPotential(const UniformGrid&)>;

struct OrderEstimate {
    double xi = 0.0;
    double m = 0.0;
    std::size_t coarse_M = 0;
    std::size_t fine_M = 0;
    double coarse_error = 0.0;
    double fine_error = 0.0;
    bool self_reference = false;
};

struct ParsevalReport {
    double c0_time = 0.0;
    double e_continuous = 0.0;
    double e_discrete = 0.0;
    double residual = 0.0;
};

/// Trapezoid rule of -(1/pi) ln|a(xi)|^2 over uniformly spaced samples.
double continuous_energy(std::span<const ScatteringSample> samples, double dxi);

/// Discrete part of the n-th trace formula,
/// sum_k [(2i conj(zeta_k))^{n+1} - (2i zeta_k)^{n+1}] / (n+1).
/// Only n = 0 (sum of 4 Im zeta_k) is supported.
double discrete_energy(std::span<const DiscreteMode> modes, int n = 0);
double discrete_energy(std::span<const Complex> eigenvalues, int n = 0);

/// Trapezoid rule of |q|^2 over the grid.
double c0_time_domain(const SampledPotential& potential);

/// Balances C0 against the continuous and discrete spectral energies. The
/// samples must be on a uniform real xi grid (spacing inferred).
ParsevalReport parseval_check(const SampledPotential& potential, std::span<const ScatteringSample> samples,
                              std::span<const DiscreteMode> modes);

/// m = log_{ratio}(coarse / fine). Throws RoundoffFloor when either deviation
/// is below 100 machine epsilons.
double order_from_deviations(double coarse_deviation, double fine_deviation, double step_ratio = 2.0);

/// Empirical order from grids M and 2M against a known (a, b).
OrderEstimate estimate_order(const PotentialFactory& factory, double half_width, Complex zeta,
                             const SchemeParams& params, std::size_t coarse_M, const Vec2& reference_ab);

/// Richardson-style order from grids M, 2M and 4M when no exact reference is
/// available.
OrderEstimate estimate_order_self_reference(const PotentialFactory& factory, double half_width, Complex zeta,
                                            const SchemeParams& params, std::size_t coarse_M);

/// Smallest M with at least four steps per period of the fastest local
/// oscillation, ceil(2 L sqrt(xi^2 + q^2) / pi).
std::size_t min_nodes(double xi_max, double q_max, double half_width);

/// Least-squares slope of log2(y) against log2(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace zsp

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zsp/types.hpp"

namespace zsp {

/// Uniform spectral grid xi_j = -L_xi + j*dxi, j = 0..N-1, with dxi = pi/(2L)
/// and L_xi = pi/(2 tau). With the default N = 2M+1 it spans [-L_xi, L_xi].
class SpectralGrid {
public:
    explicit SpectralGrid(const UniformGrid& time_grid, std::optional<std::size_t> count = std::nullopt);

    std::size_t size() const { return count_; }
    double step() const { return step_; }
    double half_width() const { return half_width_; }
    double xi(std::size_t j) const { return -half_width_ + static_cast<double>(j) * step_; }
    std::vector<double> values() const;

private:
    std::size_t count_;
    double step_;
    double half_width_;
};

/// a = e^s v1 e^{i zeta t}, b = e^s v2 e^{-i zeta t} at t = final.layer_time.
/// Exponents are combined in log form before exponentiating. When b cannot be
/// represented it is reported as zero and b_underflow is set.
ScatteringSample extract_ab(const JostState& final, Complex zeta);

/// propagate + extract_ab for one spectral point.
ScatteringSample scatter(const SampledPotential& potential, Complex zeta, const SchemeParams& params);

/// One independent propagation per xi; output order matches input order and
/// does not depend on the thread count.
std::vector<ScatteringSample> continuous_sweep(const SampledPotential& potential, std::span<const double> xis,
                                               const SchemeParams& params, unsigned threads = 1);
std::vector<ScatteringSample> continuous_sweep(const SampledPotential& potential, const SpectralGrid& grid,
                                               const SchemeParams& params, unsigned threads = 1);

/// r = b / a; throws DivisionHazard when |a| <= 1e-300.
Complex reflection(const ScatteringSample& sample);

}  // namespace zsp

#pragma once

#include "zsp/types.hpp"

namespace zsp {

/// Q = [[-i zeta, q], [-sigma conj(q), i zeta]], the traceless coefficient
/// matrix of the Zakharov-Shabat system at one node.
struct ZsMatrix {
    Complex zeta{};
    Complex q{};
    int sigma = 1;

    Matrix2 matrix() const { return {-kI * zeta, q, -static_cast<double>(sigma) * std::conj(q), kI * zeta}; }
    /// zeta^2 + sigma |q|^2
    Complex det() const { return zeta * zeta + static_cast<double>(sigma) * std::norm(q); }
};

/// Off-diagonal difference Q(q_a) - Q(q_b) for the same zeta; depends only on
/// dq = q_a - q_b.
inline Matrix2 offdiag_difference(Complex dq, int sigma) {
    return {0.0, dq, -static_cast<double>(sigma) * std::conj(dq), 0.0};
}

namespace detail {

/// cosh(w) and sinh(w)/w as functions of w^2; both are even in w, so the
/// branch of the square root is irrelevant.
struct HyperbolicPair {
    Complex cosh;
    Complex sinhc;
};

/// Below this |w| the Taylor series is used for both functions.
inline constexpr double kSeriesThreshold = 1e-3;

HyperbolicPair hyperbolic_pair(Complex w_squared);

}  // namespace detail

/// e^{tau Q} = cosh(w) I + sinh(w)/w * tau Q with w^2 = -det(tau Q).
/// tau may be negative.
Matrix2 expm(const ZsMatrix& Q, double tau);

/// e^{-shift Qn} dQ e^{shift Qn} for a zero-diagonal dQ.
Matrix2 conjugate_offdiag(const ZsMatrix& Qn, const Matrix2& dQ, double shift);

}  // namespace zsp

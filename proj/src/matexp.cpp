#include "zsp/matexp.hpp"

#include <cmath>

namespace zsp {
namespace detail {

HyperbolicPair hyperbolic_pair(Complex w_squared) {
    if (std::abs(w_squared) < kSeriesThreshold * kSeriesThreshold) {
        // Five terms each; truncation is below 1e-30 at the threshold.
        const Complex w2 = w_squared;
        const Complex ch = 1.0 + w2 * (1.0 / 2.0 + w2 * (1.0 / 24.0 + w2 * (1.0 / 720.0 + w2 * (1.0 / 40320.0))));
        const Complex sc = 1.0 + w2 * (1.0 / 6.0 + w2 * (1.0 / 120.0 + w2 * (1.0 / 5040.0 + w2 * (1.0 / 362880.0))));
        return {ch, sc};
    }
    const Complex w = std::sqrt(w_squared);
    return {std::cosh(w), std::sinh(w) / w};
}

}  // namespace detail

Matrix2 expm(const ZsMatrix& Q, double tau) {
    require_finite(Q.zeta, "spectral parameter");
    require_finite(Q.q, "potential sample");
    if (!std::isfinite(tau)) throw Error(ErrorCode::NonFinite, "non-finite step");

    const auto [ch, sc] = detail::hyperbolic_pair(-tau * tau * Q.det());
    const Complex s = sc * tau;
    const Matrix2 q = Q.matrix();
    return {ch + s * q.m00, s * q.m01, s * q.m10, ch + s * q.m11};
}

Matrix2 conjugate_offdiag(const ZsMatrix& Qn, const Matrix2& dQ, double shift) {
    constexpr double kDiagonalTolerance = 1e-14;
    if (std::abs(dQ.m00) > kDiagonalTolerance || std::abs(dQ.m11) > kDiagonalTolerance) {
        throw Error(ErrorCode::InvalidInput, "potential difference must have zero diagonal");
    }
    return expm(Qn, -shift) * dQ * expm(Qn, shift);
}

}  // namespace zsp

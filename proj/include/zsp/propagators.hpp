#pragma once

#include <cstddef>

#include "zsp/matexp.hpp"
#include "zsp/types.hpp"

namespace zsp {

/// Three-node stencil for one transfer step. All three matrices must share
/// zeta and sigma.
struct StepContext {
    ZsMatrix prev;
    ZsMatrix center;
    ZsMatrix next;
    double tau = 0.0;
    SchemeParams params = SchemeParams::ct4();
};

/// Second-order step: exponential of the frozen coefficient matrix.
TransferMatrix bo_transfer(const ZsMatrix& Qn, double tau);

/// Fourth-order step from the (alpha, beta) family,
///
///   T = E_h [I - tau(alpha M+ + beta M-)]^{-1} [I + tau(gamma M+ + delta M-)] E_h,
///
/// with E_h = e^{tau/2 Qn}, M+ = e^{-tau Qn}(Q_{n+1} - Qn)e^{tau Qn} and
/// M- = e^{tau Qn}(Q_{n-1} - Qn)e^{-tau Qn}. For CT4 (alpha = beta = 1/48) the
/// bracket ratio is a Cayley transform and T is unitary on the real axis.
///
/// Throws SingularBracket when |det[I - tau(alpha M+ + beta M-)]| < 1e-14.
TransferMatrix family_transfer(const StepContext& ctx);

/// Transfer matrix of node n (0..2M) of the potential, using ghost zeros past
/// the ends for the three-point stencil.
TransferMatrix node_transfer(const SampledPotential& potential, std::size_t n, Complex zeta,
                             const SchemeParams& params);

/// Propagates the Jost solution Psi = (e^{-i zeta t}, 0) from t = -L - tau/2
/// to t = L + tau/2, one transfer per node.
///
/// Nodes whose transfer is pure free evolution (zero potential in the whole
/// stencil) are folded into a single diagonal phase, so a zero potential gives
/// the free solution without accumulated rounding.
JostState propagate(const SampledPotential& potential, Complex zeta, const SchemeParams& params);

}  // namespace zsp

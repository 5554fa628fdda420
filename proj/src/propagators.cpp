#include "zsp/propagators.hpp"

#include <cmath>

namespace zsp {
namespace {

constexpr double kSingularBracket = 1e-14;

// One fourth-order step. dq_next = q_{n+1} - q_n, dq_prev = q_{n-1} - q_n.
Matrix2 family_step(Complex dq_prev, Complex q, Complex dq_next, Complex zeta, int sigma, double tau,
                    const SchemeParams& params) {
    const ZsMatrix Qn{zeta, q, sigma};
    require_finite(zeta, "spectral parameter");
    require_finite(q, "potential sample");

    const double half = 0.5 * tau;
    const auto [ch, sc] = detail::hyperbolic_pair(-half * half * Qn.det());
    const Matrix2 Q = Qn.matrix();

    // e^{tau/2 Q} = ch I + sh Q; the full-step pair follows from the doubling
    // identities cosh(w) = 2 cosh^2(w/2) - 1, sinh(w) = 2 sinh(w/2) cosh(w/2).
    const Complex sh = sc * half;
    const Complex c_full = 2.0 * ch * ch - 1.0;
    const Complex s_full = 2.0 * ch * sh;
    const Matrix2 half_step{ch + sh * Q.m00, sh * Q.m01, sh * Q.m10, ch + sh * Q.m11};
    const Matrix2 forward{c_full + s_full * Q.m00, s_full * Q.m01, s_full * Q.m10, c_full + s_full * Q.m11};
    const Matrix2 backward{c_full - s_full * Q.m00, -s_full * Q.m01, -s_full * Q.m10, c_full - s_full * Q.m11};

    const Matrix2 m_next = backward * offdiag_difference(dq_next, sigma) * forward;
    const Matrix2 m_prev = forward * offdiag_difference(dq_prev, sigma) * backward;

    const Matrix2 implicit =
        Matrix2::identity() - Complex(tau * params.alpha()) * m_next - Complex(tau * params.beta()) * m_prev;
    const Matrix2 explicit_part =
        Matrix2::identity() + Complex(tau * params.gamma()) * m_next + Complex(tau * params.delta()) * m_prev;

    const Complex det = implicit.det();
    if (std::abs(det) < kSingularBracket) {
        throw Error(ErrorCode::SingularBracket, "implicit bracket of the fourth-order step is singular");
    }
    return half_step * implicit.inverse() * explicit_part * half_step;
}

bool is_free_node(const SampledPotential& potential, std::size_t n, SchemeKind kind) {
    const auto i = static_cast<std::ptrdiff_t>(n);
    const Complex zero{};
    if (kind == SchemeKind::BO) return potential.at(i) == zero;
    return potential.at(i - 1) == zero && potential.at(i) == zero && potential.at(i + 1) == zero;
}

void start_free(JostState& state, Complex zeta, double t) {
    state.v = {std::polar(1.0, -zeta.real() * t), Complex{}};
    state.log_scale = zeta.imag() * t;
    state.layer_time = t;
}

// Free evolution over dt: psi_1 *= e^{-i zeta dt}, psi_2 *= e^{i zeta dt}.
void advance_free(JostState& state, Complex zeta, double dt) {
    const double xi = zeta.real();
    const double eta = zeta.imag();
    state.log_scale += eta * dt;
    state.v[0] *= std::polar(1.0, -xi * dt);
    state.v[1] *= std::polar(std::exp(-2.0 * eta * dt), xi * dt);
    state.layer_time += dt;
    state.renormalize();
}

}  // namespace

TransferMatrix bo_transfer(const ZsMatrix& Qn, double tau) { return expm(Qn, tau); }

TransferMatrix family_transfer(const StepContext& ctx) {
    if (ctx.params.kind() == SchemeKind::BO) {
        throw Error(ErrorCode::InvalidInput, "family_transfer requires a fourth-order scheme");
    }
    const ZsMatrix& c = ctx.center;
    if (ctx.prev.zeta != c.zeta || ctx.next.zeta != c.zeta || ctx.prev.sigma != c.sigma ||
        ctx.next.sigma != c.sigma) {
        throw Error(ErrorCode::InvalidInput, "stencil matrices must share zeta and sigma");
    }
    return family_step(ctx.prev.q - c.q, c.q, ctx.next.q - c.q, c.zeta, c.sigma, ctx.tau, ctx.params);
}

TransferMatrix node_transfer(const SampledPotential& potential, std::size_t n, Complex zeta,
                             const SchemeParams& params) {
    if (n >= potential.grid().size()) {
        throw Error(ErrorCode::InvalidInput, "node index out of range");
    }
    const auto i = static_cast<std::ptrdiff_t>(n);
    const int sigma = potential.sigma();
    const double tau = potential.grid().step();
    if (params.kind() == SchemeKind::BO) return bo_transfer({zeta, potential.at(i), sigma}, tau);
    return family_transfer(
        {{zeta, potential.at(i - 1), sigma}, {zeta, potential.at(i), sigma}, {zeta, potential.at(i + 1), sigma},
         tau, params});
}

JostState propagate(const SampledPotential& potential, Complex zeta, const SchemeParams& params) {
    require_finite(zeta, "spectral parameter");
    const UniformGrid& grid = potential.grid();
    const double tau = grid.step();
    const double t_end = grid.half_width() + 0.5 * tau;
    const int sigma = potential.sigma();
    const bool bo = params.kind() == SchemeKind::BO;

    JostState state;
    bool started = false;
    std::size_t pending = 0;  // free nodes not yet applied

    for (std::size_t n = 0; n < grid.size(); ++n) {
        if (is_free_node(potential, n, params.kind())) {
            ++pending;
            continue;
        }
        if (!started) {
            start_free(state, zeta, grid.node(n) - 0.5 * tau);
            started = true;
        } else if (pending > 0) {
            advance_free(state, zeta, static_cast<double>(pending) * tau);
        }
        pending = 0;

        const Complex q = potential.samples()[n];
        const TransferMatrix T =
            bo ? bo_transfer({zeta, q, sigma}, tau)
               : family_step(-potential.forward_difference(n), q, potential.forward_difference(n + 1), zeta,
                             sigma, tau, params);
        state.v = T * state.v;
        state.layer_time = grid.node(n) + 0.5 * tau;
        state.renormalize();
    }

    if (!started) {
        start_free(state, zeta, t_end);
    } else if (pending > 0) {
        advance_free(state, zeta, static_cast<double>(pending) * tau);
    }
    state.layer_time = t_end;

    for (const Complex& c : state.v) require_finite(c, "propagated state");
    return state;
}

}  // namespace zsp

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "zsp/matexp.hpp"
#include "zsp/potentials.hpp"
#include "zsp/propagators.hpp"
#include "zsp/scattering.hpp"

using namespace zsp;

namespace {

SampledPotential random_potential(std::mt19937_64& rng, double L, std::size_t M, int sigma = 1) {
    std::normal_distribution<double> n(0.0, 0.5);
    const UniformGrid g(L, M);
    std::vector<Complex> q(g.size());
    for (auto& x : q) x = Complex(n(rng), n(rng));
    return SampledPotential(g, std::move(q), sigma);
}

}  // namespace

TEST_CASE("bo transfer is the frozen-coefficient exponential") {
    const ZsMatrix Q{Complex(1.2, 0.1), Complex(0.4, 0.3), 1};
    CHECK(max_abs_diff(bo_transfer(Q, 0.02), expm(Q, 0.02)) == 0.0);
}

TEST_CASE("fourth-order step reduces to bo for locally constant samples") {
    const SchemeParams scheme = GENERATE(SchemeParams::ct4(), SchemeParams::family(0.02, 0.01));
    const Complex zeta(0.7, 0.2);
    const Complex q(1.3, -0.4);
    const ZsMatrix Q{zeta, q, 1};
    const Matrix2 T = family_transfer({Q, Q, Q, 0.05, scheme});
    CHECK(max_abs_diff(T, bo_transfer(Q, 0.05)) < 1e-15);
}

TEST_CASE("ct4 transfer is unitary on the real axis and unimodular everywhere") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const Complex xi(10.0 * u(rng), 0.0);
        auto Qat = [&](Complex z) { return ZsMatrix{z, Complex(2.0 * u(rng), 2.0 * u(rng)), 1}; };
        ZsMatrix a = Qat(xi), b = Qat(xi), c = Qat(xi);
        const Matrix2 T = family_transfer({a, b, c, 0.01, SchemeParams::ct4()});
        CHECK(max_abs_diff(T.adjoint() * T, Matrix2::identity()) < 1e-14);

        const Complex z(xi.real(), std::abs(u(rng)));
        a.zeta = b.zeta = c.zeta = z;
        CHECK(std::abs(family_transfer({a, b, c, 0.01, SchemeParams::ct4()}).det() - 1.0) < 1e-13);
    }
}

TEST_CASE("singular implicit bracket is reported") {
    // sigma = -1 with tau*alpha*|dq| = 1 makes det[I - tau alpha M+] vanish.
    const Complex zeta(0.3, 0.0);
    const StepContext ctx{{zeta, 0.0, -1}, {zeta, 0.0, -1}, {zeta, 10.0, -1}, 0.1, SchemeParams::family(1.0, 0.0)};
    try {
        family_transfer(ctx);
        FAIL("expected SingularBracket");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularBracket);
    }
}

TEST_CASE("family transfer argument checks") {
    const ZsMatrix Q{Complex(1.0, 0.0), 0.5, 1};
    CHECK_THROWS_AS(family_transfer({Q, Q, Q, 0.1, SchemeParams::bo()}), Error);
    ZsMatrix other = Q;
    other.zeta = 2.0;
    CHECK_THROWS_AS(family_transfer({other, Q, Q, 0.1, SchemeParams::ct4()}), Error);
    other = Q;
    other.sigma = -1;
    CHECK_THROWS_AS(family_transfer({Q, Q, other, 0.1, SchemeParams::ct4()}), Error);
}

TEST_CASE("node transfer uses ghost zeros at the ends") {
    std::mt19937_64 rng(5);
    const SampledPotential p = random_potential(rng, 1.0, 4);
    const Complex zeta(0.9, 0.1);
    const double tau = p.grid().step();
    const Matrix2 first = node_transfer(p, 0, zeta, SchemeParams::ct4());
    const Matrix2 expect = family_transfer(
        {{zeta, 0.0, 1}, {zeta, p.samples()[0], 1}, {zeta, p.samples()[1], 1}, tau, SchemeParams::ct4()});
    CHECK(max_abs_diff(first, expect) == 0.0);
    const Matrix2 last = node_transfer(p, 8, zeta, SchemeParams::ct4());
    const Matrix2 expect_last = family_transfer(
        {{zeta, p.samples()[7], 1}, {zeta, p.samples()[8], 1}, {zeta, 0.0, 1}, tau, SchemeParams::ct4()});
    CHECK(max_abs_diff(last, expect_last) == 0.0);
    CHECK_THROWS_AS(node_transfer(p, 9, zeta, SchemeParams::ct4()), Error);
}

TEST_CASE("propagate equals the explicit product of node transfers") {
    const SchemeParams scheme = GENERATE(SchemeParams::bo(), SchemeParams::ct4());
    const int sigma = GENERATE(1, -1);
    std::mt19937_64 rng(11);
    const SampledPotential p = random_potential(rng, 2.0, 16, sigma);
    const Complex zeta(0.8, 0.3);
    const double tau = p.grid().step();
    const double t0 = -2.0 - 0.5 * tau;

    Vec2 psi{std::exp(-kI * zeta * t0), Complex{}};
    for (std::size_t n = 0; n < p.grid().size(); ++n) psi = node_transfer(p, n, zeta, scheme) * psi;

    const JostState s = propagate(p, zeta, scheme);
    CHECK(s.layer_time == Catch::Approx(2.0 + 0.5 * tau));
    const Vec2 got = s.physical();
    CHECK(std::abs(got[0] - psi[0]) < 1e-12 * std::abs(psi[0]));
    CHECK(std::abs(got[1] - psi[1]) < 1e-12 * std::abs(psi[0]));
}

TEST_CASE("free nodes are folded without changing the result") {
    // Compact support inside a wide window; the folded phases must reproduce
    // the node-by-node product.
    const UniformGrid g(4.0, 32);
    std::vector<Complex> q(g.size());
    for (std::size_t n = 28; n <= 36; ++n) q[n] = Complex(0.5, 0.1 * static_cast<double>(n - 28));
    const SampledPotential p(g, q);
    const Complex zeta(1.1, 0.4);
    for (const SchemeParams& scheme : {SchemeParams::bo(), SchemeParams::ct4()}) {
        Vec2 psi{std::exp(-kI * zeta * (-4.0 - 0.5 * g.step())), Complex{}};
        for (std::size_t n = 0; n < g.size(); ++n) psi = node_transfer(p, n, zeta, scheme) * psi;
        const Vec2 got = propagate(p, zeta, scheme).physical();
        CHECK(std::abs(got[0] - psi[0]) < 1e-13 * std::abs(psi[0]));
        CHECK(std::abs(got[1] - psi[1]) < 1e-13 * std::abs(psi[0]));
    }
}

TEST_CASE("zero potential propagates as the free solution") {
    const Complex zeta = GENERATE(Complex(3.0, 0.0), Complex(-1.5, 0.7), Complex(0.0, 2.0));
    const UniformGrid g(40.0, 1000);
    const SampledPotential p(g, std::vector<Complex>(g.size()));
    for (const SchemeParams& scheme : {SchemeParams::bo(), SchemeParams::ct4()}) {
        const ScatteringSample s = extract_ab(propagate(p, zeta, scheme), zeta);
        CHECK(std::abs(s.a - 1.0) < 1e-15);
        CHECK(s.b == Complex{});
    }
}

TEST_CASE("large eta keeps the state representable") {
    // Satsuma-Yajima A=4 at its top eigenvalue: e^{eta t} spans ~300 orders of
    // magnitude across the window.
    const ReferenceRealization r = make_reference(ReferenceParams{ReferenceKind::SatsumaYajima, 4.0}, UniformGrid(40.0, 512));
    const JostState s = propagate(r.potential, Complex(0.0, 3.5), SchemeParams::ct4());
    CHECK(std::isfinite(s.log_scale));
    const double peak = std::max(std::abs(s.v[0]), std::abs(s.v[1]));
    CHECK(peak >= 1.0 / 16.0);
    CHECK(peak <= 16.0);
}

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "zsp/analysis.hpp"
#include "zsp/potentials.hpp"
#include "zsp/scattering.hpp"

using namespace zsp;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected zsp::Error");
    return ErrorCode::Io;
}

const PotentialFactory kSech = reference_factory(ReferenceParams{ReferenceKind::Sech});

Vec2 sech_ab(double xi) { return {Complex(xi, -0.5) / Complex(xi, 0.5), Complex{}}; }

}  // namespace

TEST_CASE("continuous energy is a trapezoid rule") {
    // |a|^2 = e^{-pi} at every point: integrand is 1, span is 1.
    std::vector<ScatteringSample> s(3);
    for (auto& x : s) x.a = std::exp(-std::numbers::pi / 2.0);
    CHECK(continuous_energy(s, 0.5) == Catch::Approx(1.0).epsilon(1e-15));

    // Endpoints carry half weight.
    s[0].a = 1.0;
    CHECK(continuous_energy(s, 0.5) == Catch::Approx(0.75).epsilon(1e-15));
    s[1].a = 0.0;
    CHECK_THROWS_AS(continuous_energy(s, 0.5), Error);
}

TEST_CASE("discrete energy") {
    const std::vector<Complex> z{Complex(0.0, 0.5), Complex(0.0, 1.5)};
    CHECK(discrete_energy(z) == 8.0);
    const std::vector<Complex> swapped{z[1], z[0]};
    CHECK(discrete_energy(swapped) == discrete_energy(z));
    std::vector<DiscreteMode> modes(2);
    modes[0].zeta = Complex(0.3, 0.25);
    modes[1].zeta = Complex(-0.3, 0.25);
    CHECK(discrete_energy(modes) == 2.0);
    CHECK(code_of([&] { discrete_energy(z, 1); }) == ErrorCode::Unsupported);
    CHECK(discrete_energy(std::span<const Complex>{}) == 0.0);
}

TEST_CASE("time-domain energy of sech") {
    const ReferenceRealization r = make_reference("sech", UniformGrid(40.0, 1024));
    CHECK(c0_time_domain(r.potential) == Catch::Approx(2.0).epsilon(1e-12));
    const UniformGrid g(1.0, 1);
    CHECK(c0_time_domain(SampledPotential(g, {1.0, 1.0, 1.0})) == Catch::Approx(2.0));
}

TEST_CASE("order from two deviations") {
    CHECK(order_from_deviations(4e-6, 1e-6) == Catch::Approx(2.0));
    CHECK(order_from_deviations(16e-6, 1e-6) == Catch::Approx(4.0));
    CHECK(order_from_deviations(9e-6, 1e-6, 3.0) == Catch::Approx(2.0));
    CHECK(code_of([] { order_from_deviations(1e-16, 1e-17); }) == ErrorCode::RoundoffFloor);
    CHECK(code_of([] { order_from_deviations(1e-6, 0.0); }) == ErrorCode::RoundoffFloor);
}

TEST_CASE("empirical orders of the schemes on sech") {
    const double xi = GENERATE(-5.0, 0.5, 12.0);
    const Complex z(xi, 0.0);
    const OrderEstimate bo = estimate_order(kSech, 40.0, z, SchemeParams::bo(), 1024, sech_ab(xi));
    const OrderEstimate ct4 = estimate_order(kSech, 40.0, z, SchemeParams::ct4(), 1024, sech_ab(xi));
    const OrderEstimate fam = estimate_order(kSech, 40.0, z, SchemeParams::family(0.02, 0.02), 1024, sech_ab(xi));
    INFO("xi = " << xi);
    CHECK(bo.m == Catch::Approx(2.0).margin(0.3));
    CHECK(ct4.m == Catch::Approx(4.0).margin(0.5));
    CHECK(fam.m == Catch::Approx(4.0).margin(0.5));
    CHECK(bo.coarse_M == 1024);
    CHECK(bo.fine_M == 2048);
    CHECK(bo.coarse_error > bo.fine_error);
    CHECK_FALSE(bo.self_reference);

    const OrderEstimate self = estimate_order_self_reference(kSech, 40.0, z, SchemeParams::ct4(), 512);
    CHECK(self.self_reference);
    CHECK(self.m == Catch::Approx(4.0).margin(0.5));
}

TEST_CASE("order of the zero potential hits the roundoff floor") {
    const PotentialFactory zero = reference_factory(ReferenceParams{ReferenceKind::Zero});
    for (const SchemeParams& s : {SchemeParams::bo(), SchemeParams::ct4()}) {
        CHECK(code_of([&] { estimate_order(zero, 40.0, Complex(3.0, 0.0), s, 256, Vec2{1.0, 0.0}); }) ==
              ErrorCode::RoundoffFloor);
        CHECK(code_of([&] { estimate_order_self_reference(zero, 40.0, Complex(3.0, 0.0), s, 256); }) ==
              ErrorCode::RoundoffFloor);
    }
}

TEST_CASE("sampling bound") {
    CHECK(min_nodes(0.0, 0.0, 40.0) == 0);
    CHECK(min_nodes(20.0, 1.0, 40.0) == 510);
    CHECK(min_nodes(20.0, 0.0, 40.0) == 510);
    std::size_t last = 0;
    for (double xi = 0.0; xi < 30.0; xi += 0.37) {
        const std::size_t m = min_nodes(xi, 1.0, 40.0);
        CHECK(m >= last);
        CHECK(min_nodes(xi, 1.5, 40.0) >= m);
        CHECK(min_nodes(xi, 1.0, 41.0) >= m);
        last = m;
    }
}

TEST_CASE("log-log slope") {
    const std::vector<double> x{1024, 2048, 4096, 8192};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 / (v * v));
    CHECK(loglog_slope(x, y) == Catch::Approx(-2.0).epsilon(1e-12));
    CHECK_THROWS_AS(loglog_slope(std::span<const double>(x).first(1), std::span<const double>(y).first(1)), Error);
}

TEST_CASE("parseval balance on sech") {
    const ReferenceRealization r = make_reference("sech", UniformGrid(40.0, 512));
    const SpectralGrid grid(r.potential.grid());
    const auto samples = continuous_sweep(r.potential, grid, SchemeParams::ct4());
    std::vector<DiscreteMode> modes(1);
    modes[0].zeta = Complex(0.0, 0.5);
    const ParsevalReport rep = parseval_check(r.potential, samples, modes);
    CHECK(rep.c0_time == Catch::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(rep.e_continuous) < 1e-6);
    CHECK(rep.e_discrete == 2.0);
    CHECK(rep.residual < 1e-6);

    const ParsevalReport none = parseval_check(r.potential, samples, {});
    CHECK(none.residual == Catch::Approx(2.0).margin(1e-6));

    std::vector<ScatteringSample> uneven(samples.begin(), samples.begin() + 3);
    uneven[2].zeta += 0.1;
    CHECK_THROWS_AS(parseval_check(r.potential, uneven, modes), Error);
}

TEST_CASE("parseval residual shrinks under refinement") {
    double previous = 1.0;
    for (std::size_t M : {128u, 256u, 512u, 1024u}) {
        const ReferenceRealization r = make_reference("sech", UniformGrid(40.0, M));
        const auto samples = continuous_sweep(r.potential, SpectralGrid(r.potential.grid()), SchemeParams::bo());
        std::vector<DiscreteMode> modes(1);
        modes[0].zeta = Complex(0.0, 0.5);
        const double residual = parseval_check(r.potential, samples, modes).residual;
        INFO("M = " << M);
        CHECK((residual < previous || residual < 1e-12));
        previous = residual;
    }
}

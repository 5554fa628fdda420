#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <random>

#include "zsp/matexp.hpp"

using namespace zsp;

namespace {

Matrix2 eigen_expm(const ZsMatrix& Q, double tau) {
    const Matrix2 m = Q.matrix();
    Eigen::Matrix2cd a;
    a << m.m00, m.m01, m.m10, m.m11;
    const Eigen::Matrix2cd e = (tau * a).exp();
    return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)};
}

}  // namespace

// Reference entries from 40-digit arithmetic (mpmath expm).
TEST_CASE("expm matches high-precision values") {
    const ZsMatrix Q{Complex(0.3, 0.2), Complex(0.7, -0.1), 1};
    const Matrix2 e = expm(Q, 0.05);
    CHECK(std::abs(e.m00 - Complex(1.009309533609447799, -0.01514702828365052256)) < 2e-16);
    CHECK(std::abs(e.m01 - Complex(0.034991729726206820412, -0.0050006040010771265919)) < 2e-16);
    CHECK(std::abs(e.m10 - Complex(-0.034992229657460142875, -0.0049971044823038693527)) < 2e-16);
    CHECK(std::abs(e.m11 - Complex(0.98931561643644577446, 0.014847097028999107424)) < 2e-16);
}

TEST_CASE("expm agrees with a Pade-based oracle") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> step(-0.5, 0.5);
    for (int k = 0; k < 200; ++k) {
        const ZsMatrix Q{Complex(u(rng), 0.3 * u(rng)), Complex(u(rng), u(rng)), k % 2 == 0 ? 1 : -1};
        const double tau = step(rng);
        const Matrix2 e = expm(Q, tau);
        const Matrix2 ref = eigen_expm(Q, tau);
        INFO("sample " << k);
        CHECK(max_abs_diff(e, ref) < 1e-13 * std::max(1.0, std::abs(ref.m00)));
    }
}

TEST_CASE("expm is unimodular and inverts under tau -> -tau") {
    const int sigma = GENERATE(1, -1);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const ZsMatrix Q{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), sigma};
        const double tau = 0.1 * u(rng);
        const Matrix2 e = expm(Q, tau);
        CHECK(std::abs(e.det() - 1.0) < 1e-14);
        CHECK(max_abs_diff(e * expm(Q, -tau), Matrix2::identity()) < 1e-14);
    }
}

TEST_CASE("expm is unitary on the real axis for sigma = +1") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int k = 0; k < 100; ++k) {
        const ZsMatrix Q{Complex(u(rng), 0.0), Complex(0.1 * u(rng), 0.1 * u(rng)), 1};
        const Matrix2 e = expm(Q, 0.04);
        CHECK(max_abs_diff(e.adjoint() * e, Matrix2::identity()) < 1e-14);
    }
}

TEST_CASE("series and closed form agree across the switch point") {
    // |w| = |tau| sqrt|det Q| straddles the series threshold.
    const ZsMatrix Q{Complex(0.6, 0.0), Complex(0.8, 0.0), 1};
    for (double w : {0.999e-3, 1.0e-3, 1.001e-3, 1e-6, 0.0}) {
        const Matrix2 e = expm(Q, w);
        CHECK(max_abs_diff(e, eigen_expm(Q, w)) < 4.5e-16);
    }
    const auto pair = detail::hyperbolic_pair(Complex(1e-8, 0.0));
    CHECK(std::abs(pair.cosh - std::cosh(1e-4)) < 1e-17);
    CHECK(std::abs(pair.sinhc - std::sinh(1e-4) / 1e-4) < 1e-17);
}

TEST_CASE("zero potential exponential is a pure phase") {
    const Matrix2 e = expm(ZsMatrix{Complex(2.5, 0.0), Complex{}, 1}, 0.3);
    CHECK(std::abs(e.m00 - std::polar(1.0, -0.75)) < 1e-16);
    CHECK(std::abs(e.m11 - std::polar(1.0, 0.75)) < 1e-16);
    CHECK(e.m01 == Complex{});
    CHECK(e.m10 == Complex{});
}

TEST_CASE("conjugated off-diagonal difference") {
    const ZsMatrix Qn{Complex(0.4, 0.1), Complex(0.3, 0.2), 1};
    const Matrix2 dQ = offdiag_difference(Complex(0.05, -0.02), 1);
    const Matrix2 direct = expm(Qn, -0.1) * dQ * expm(Qn, 0.1);
    CHECK(max_abs_diff(conjugate_offdiag(Qn, dQ, 0.1), direct) < 1e-16);
    CHECK_THROWS_AS(conjugate_offdiag(Qn, Matrix2::identity(), 0.1), Error);
    CHECK_THROWS_AS(expm(ZsMatrix{Complex(std::nan(""), 0.0), Complex{}, 1}, 0.1), Error);
}

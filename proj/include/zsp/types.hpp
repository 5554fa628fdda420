#pragma once

// Domain types shared by the Zakharov-Shabat scattering solver: uniform time
// grids, sampled potentials, 2x2 transfer matrices, Jost states and the
// scattering data extracted from them.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zsp {

using Complex = std::complex<double>;
using Vec2 = std::array<Complex, 2>;

inline constexpr Complex kI{0.0, 1.0};

enum class ErrorCode {
    InvalidInput,     // malformed arguments or data
    NonFinite,        // NaN/Inf in inputs or results
    SingularBracket,  // implicit part of a fourth-order step is not invertible
    DivisionHazard,   // |a| too small to form b/a
    RoundoffFloor,    // order estimate at machine precision
    Divergence,       // eigenvalue refinement failed
    Unsupported,      // outside the implemented feature set
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Dense 2x2 complex matrix, row-major entries.
struct Matrix2 {
    Complex m00{}, m01{}, m10{}, m11{};

    static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Complex det() const { return m00 * m11 - m01 * m10; }
    Complex trace() const { return m00 + m11; }
    Matrix2 adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }
    Matrix2 adjugate() const { return {m11, -m01, -m10, m00}; }
    /// Cramer's rule; caller is responsible for checking det() first.
    Matrix2 inverse() const;
    bool finite() const;
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y);
Matrix2 operator+(const Matrix2& x, const Matrix2& y);
Matrix2 operator-(const Matrix2& x, const Matrix2& y);
Matrix2 operator*(Complex s, const Matrix2& x);
Vec2 operator*(const Matrix2& x, const Vec2& v);

/// max over entries of |x_ij - y_ij|
double max_abs_diff(const Matrix2& x, const Matrix2& y);

/// Transfer matrix between adjacent half-integer layers.
using TransferMatrix = Matrix2;

/// Uniform grid t_n = -L + tau*n, n = 0..2M, over [-L, L].
/// M is stored; tau is derived from it.
class UniformGrid {
public:
    UniformGrid(double half_width, std::size_t half_count);

    double half_width() const { return half_width_; }
    std::size_t half_count() const { return half_count_; }
    double step() const { return step_; }
    std::size_t size() const { return 2 * half_count_ + 1; }

    /// Node time. Computed as (n - M)*L/M so that node(2M - n) == -node(n)
    /// bitwise and the endpoints are exactly -L and +L.
    double node(std::size_t n) const;

    std::vector<double> nodes() const;

private:
    double half_width_;
    std::size_t half_count_;
    double step_;
};

/// Complex potential q sampled on a UniformGrid; immutable.
///
/// q is taken to vanish identically outside [-L, L]. This defines the ghost
/// samples q_{-1} = q_{2M+1} = 0 used by the three-point stencil at the edges.
class SampledPotential {
public:
    SampledPotential(UniformGrid grid, std::vector<Complex> samples, int sigma = 1);

    const UniformGrid& grid() const { return grid_; }
    std::span<const Complex> samples() const { return samples_; }
    int sigma() const { return sigma_; }
    double q_max() const { return q_max_; }

    /// Sample with ghost extension: zero for n < 0 or n > 2M.
    Complex at(std::ptrdiff_t n) const;

    /// Forward difference q_n - q_{n-1} for n = 0..2M+1 (ghosts included),
    /// precomputed at construction.
    Complex forward_difference(std::size_t n) const { return differences_[n]; }

private:
    UniformGrid grid_;
    std::vector<Complex> samples_;
    std::vector<Complex> differences_;
    int sigma_;
    double q_max_;
};

/// Builds a potential from raw samples on [-L, L]; the node count must be odd.
SampledPotential validate_potential(std::vector<Complex> samples, double half_width, int sigma = 1);

/// Propagated Jost vector with a separate real log-scale: Psi = e^{log_scale} * v.
struct JostState {
    Vec2 v{};
    double log_scale = 0.0;
    double layer_time = 0.0;

    /// Window outside of which renormalize() rescales v.
    static constexpr double kLowerBound = 1.0 / 16.0;
    static constexpr double kUpperBound = 16.0;

    /// Rescales v by an exact power of two when max(|v1|, |v2|) leaves
    /// [kLowerBound, kUpperBound]; afterwards the max lies in [0.5, 1).
    void renormalize();
    /// Unconditional rescale into [0.5, 1).
    void rescale();

    /// e^{log_scale} * v, which may overflow for large log_scale.
    Vec2 physical() const;
};

struct ScatteringSample {
    Complex zeta{};
    Complex a{};
    Complex b{};
    /// b could not be represented (exponentially ill-conditioned off the real
    /// axis); b has been reported as zero.
    bool b_underflow = false;
};

struct DiscreteMode {
    Complex zeta{};
    Complex a_at{};     // residual a(zeta) at the converged point
    Complex b{};
    Complex a_prime{};
    Complex r{};        // b / a_prime
    int iterations = 0;
};

enum class SchemeKind { BO, CT4, Family };

/// Selects the single-interval transfer scheme. The fourth-order family is
/// parametrised by (alpha, beta); its explicit weights are always
/// gamma = 1/24 - alpha and delta = 1/24 - beta.
class SchemeParams {
public:
    static SchemeParams bo() { return {SchemeKind::BO, 0.0, 0.0}; }
    static SchemeParams ct4() { return {SchemeKind::CT4, 1.0 / 48.0, 1.0 / 48.0}; }
    static SchemeParams family(double alpha, double beta);

    SchemeKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return 1.0 / 24.0 - alpha_; }
    double delta() const { return 1.0 / 24.0 - beta_; }

    std::string name() const;

private:
    SchemeParams(SchemeKind kind, double alpha, double beta) : kind_(kind), alpha_(alpha), beta_(beta) {}

    SchemeKind kind_;
    double alpha_;
    double beta_;
};

/// Parses "bo", "ct4" or "family" (case-insensitive); family takes alpha/beta.
SchemeParams parse_scheme(const std::string& name, double alpha = 1.0 / 48.0, double beta = 1.0 / 48.0);

void require_finite(Complex z, const char* what);

}  // namespace zsp

#include "zsp/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace zsp {

Matrix2 Matrix2::inverse() const {
    const Complex d = det();
    return (1.0 / d) * adjugate();
}

bool Matrix2::finite() const {
    for (const Complex& z : {m00, m01, m10, m11}) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
    return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
}

Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
    return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
}

Matrix2 operator*(Complex s, const Matrix2& x) {
    return {s * x.m00, s * x.m01, s * x.m10, s * x.m11};
}

Vec2 operator*(const Matrix2& x, const Vec2& v) {
    return {x.m00 * v[0] + x.m01 * v[1], x.m10 * v[0] + x.m11 * v[1]};
}

double max_abs_diff(const Matrix2& x, const Matrix2& y) {
    return std::max({std::abs(x.m00 - y.m00), std::abs(x.m01 - y.m01), std::abs(x.m10 - y.m10),
                     std::abs(x.m11 - y.m11)});
}

void require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::NonFinite, std::string("non-finite ") + what);
    }
}

// ---------------------------------------------------------------------------

UniformGrid::UniformGrid(double half_width, std::size_t half_count)
    : half_width_(half_width), half_count_(half_count), step_(0.0) {
    if (!std::isfinite(half_width) || half_width <= 0.0) {
        throw Error(ErrorCode::InvalidInput, "grid half-width L must be positive and finite");
    }
    if (half_count == 0) {
        throw Error(ErrorCode::InvalidInput, "grid half-count M must be positive");
    }
    step_ = half_width / static_cast<double>(half_count);
}

double UniformGrid::node(std::size_t n) const {
    const auto k = static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(half_count_);
    const auto m = static_cast<std::ptrdiff_t>(half_count_);
    if (k == m) return half_width_;
    if (k == -m) return -half_width_;
    return static_cast<double>(k) * half_width_ / static_cast<double>(half_count_);
}

std::vector<double> UniformGrid::nodes() const {
    std::vector<double> t(size());
    for (std::size_t n = 0; n < t.size(); ++n) t[n] = node(n);
    return t;
}

// ---------------------------------------------------------------------------

SampledPotential::SampledPotential(UniformGrid grid, std::vector<Complex> samples, int sigma)
    : grid_(grid), samples_(std::move(samples)), sigma_(sigma), q_max_(0.0) {
    if (samples_.size() != grid_.size()) {
        throw Error(ErrorCode::InvalidInput, "sample count " + std::to_string(samples_.size()) +
                                                 " does not match grid size " + std::to_string(grid_.size()));
    }
    if (sigma != 1 && sigma != -1) {
        throw Error(ErrorCode::InvalidInput, "sigma must be +1 or -1");
    }
    for (const Complex& q : samples_) {
        require_finite(q, "potential sample");
        q_max_ = std::max(q_max_, std::abs(q));
    }
    differences_.resize(samples_.size() + 1);
    const auto last = static_cast<std::ptrdiff_t>(samples_.size());
    for (std::ptrdiff_t n = 0; n <= last; ++n) {
        differences_[static_cast<std::size_t>(n)] = at(n) - at(n - 1);
    }
}

Complex SampledPotential::at(std::ptrdiff_t n) const {
    if (n < 0 || n >= static_cast<std::ptrdiff_t>(samples_.size())) return {};
    return samples_[static_cast<std::size_t>(n)];
}

SampledPotential validate_potential(std::vector<Complex> samples, double half_width, int sigma) {
    if (samples.empty()) {
        throw Error(ErrorCode::InvalidInput, "potential has no samples");
    }
    if (samples.size() % 2 == 0) {
        throw Error(ErrorCode::InvalidInput,
                    "even node count " + std::to_string(samples.size()) + " (grid needs 2M+1 nodes)");
    }
    if (samples.size() == 1) {
        throw Error(ErrorCode::InvalidInput, "potential needs at least 3 samples");
    }
    const std::size_t half = (samples.size() - 1) / 2;
    return SampledPotential(UniformGrid(half_width, half), std::move(samples), sigma);
}

// ---------------------------------------------------------------------------

void JostState::rescale() {
    const double peak = std::max(std::abs(v[0]), std::abs(v[1]));
    if (peak == 0.0 || !std::isfinite(peak)) {
        throw Error(ErrorCode::NonFinite, "Jost state collapsed to zero or overflowed");
    }
    int exponent = 0;
    std::frexp(peak, &exponent);
    const double factor = std::ldexp(1.0, -exponent);
    v[0] *= factor;
    v[1] *= factor;
    log_scale += exponent * std::numbers::ln2;
}

void JostState::renormalize() {
    const double peak = std::max(std::abs(v[0]), std::abs(v[1]));
    if (peak < kLowerBound || peak > kUpperBound || !std::isfinite(peak)) rescale();
}

Vec2 JostState::physical() const {
    const double scale = std::exp(log_scale);
    return {scale * v[0], scale * v[1]};
}

// ---------------------------------------------------------------------------

SchemeParams SchemeParams::family(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw Error(ErrorCode::InvalidInput, "family coefficients must be finite");
    }
    return {SchemeKind::Family, alpha, beta};
}

std::string SchemeParams::name() const {
    switch (kind_) {
        case SchemeKind::BO: return "bo";
        case SchemeKind::CT4: return "ct4";
        case SchemeKind::Family: return "family";
    }
    return "unknown";
}

SchemeParams parse_scheme(const std::string& name, double alpha, double beta) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "bo") return SchemeParams::bo();
    if (lower == "ct4") return SchemeParams::ct4();
    if (lower == "family") return SchemeParams::family(alpha, beta);
    throw Error(ErrorCode::InvalidInput, "unknown scheme '" + name + "' (expected bo, ct4 or family)");
}

}  // namespace zsp

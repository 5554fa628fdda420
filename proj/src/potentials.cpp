#include "zsp/potentials.hpp"

#include <cmath>

namespace zsp {
namespace {

// sin(x)/x with a series near zero.
Complex sinc(Complex x) {
    if (std::abs(x) < 1e-4) {
        const Complex x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

int integer_amplitude(double amplitude) {
    const double rounded = std::round(amplitude);
    if (!(amplitude >= 1.0) || rounded != amplitude || rounded > 64.0) {
        throw Error(ErrorCode::InvalidInput, "satsuma-yajima amplitude must be an integer between 1 and 64");
    }
    return static_cast<int>(rounded);
}

AnalyticSpectrum satsuma_yajima_spectrum(int amplitude) {
    std::vector<Complex> zs;
    std::vector<Complex> bs;
    for (int k = 1; k <= amplitude; ++k) {
        zs.emplace_back(0.0, amplitude - k + 0.5);
        bs.emplace_back(k % 2 == 1 ? -1.0 : 1.0, 0.0);
    }
    return AnalyticSpectrum::reflectionless(std::move(zs), std::move(bs));
}

}  // namespace

ReferenceKind parse_reference_kind(std::string_view name) {
    if (name == "zero") return ReferenceKind::Zero;
    if (name == "sech") return ReferenceKind::Sech;
    if (name == "satsuma-yajima" || name == "satsuma_yajima") return ReferenceKind::SatsumaYajima;
    if (name == "rectangle") return ReferenceKind::Rectangle;
    throw Error(ErrorCode::InvalidInput, "unknown potential '" + std::string(name) + "'");
}

std::string reference_name(ReferenceKind kind) {
    switch (kind) {
        case ReferenceKind::Zero: return "zero";
        case ReferenceKind::Sech: return "sech";
        case ReferenceKind::SatsumaYajima: return "satsuma-yajima";
        case ReferenceKind::Rectangle: return "rectangle";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

AnalyticSpectrum AnalyticSpectrum::zero() { return {}; }

AnalyticSpectrum AnalyticSpectrum::reflectionless(std::vector<Complex> eigenvalues, std::vector<Complex> b_values) {
    if (eigenvalues.size() != b_values.size()) {
        throw Error(ErrorCode::InvalidInput, "one b value per eigenvalue required");
    }
    AnalyticSpectrum s;
    s.form_ = Form::Reflectionless;
    s.eigenvalues_ = std::move(eigenvalues);
    s.b_values_ = std::move(b_values);
    return s;
}

AnalyticSpectrum AnalyticSpectrum::rectangle(double amplitude, double t1, double t2) {
    if (!(t2 > t1)) throw Error(ErrorCode::InvalidInput, "rectangle needs t1 < t2");
    AnalyticSpectrum s;
    s.form_ = Form::Rectangle;
    s.eigenvalues_known_ = false;
    s.amplitude_ = amplitude;
    s.t1_ = t1;
    s.t2_ = t2;
    return s;
}

Complex AnalyticSpectrum::a(Complex zeta) const {
    switch (form_) {
        case Form::Zero: return 1.0;
        case Form::Reflectionless: {
            Complex a = 1.0;
            for (const Complex& zk : eigenvalues_) a *= (zeta - zk) / (zeta - std::conj(zk));
            return a;
        }
        case Form::Rectangle: {
            // Psi(t2) = [cos(W D) I + sin(W D)/W Q] Psi(t1), W^2 = zeta^2 + A^2.
            const double width = t2_ - t1_;
            const Complex omega = std::sqrt(zeta * zeta + amplitude_ * amplitude_);
            const Complex c = std::cos(omega * width);
            const Complex s_over = width * sinc(omega * width);
            return std::exp(kI * zeta * width) * (c - kI * zeta * s_over);
        }
    }
    return 1.0;
}

std::optional<Complex> AnalyticSpectrum::b(Complex zeta) const {
    switch (form_) {
        case Form::Zero: return Complex{};
        case Form::Reflectionless: {
            if (zeta.imag() == 0.0) return Complex{};
            if (const auto k = match_eigenvalue(zeta, 1e-12)) return b_values_[*k];
            return std::nullopt;
        }
        case Form::Rectangle: {
            const double width = t2_ - t1_;
            const Complex omega = std::sqrt(zeta * zeta + amplitude_ * amplitude_);
            const Complex s_over = width * sinc(omega * width);
            return -amplitude_ * s_over * std::exp(-kI * zeta * (t1_ + t2_));
        }
    }
    return std::nullopt;
}

Complex AnalyticSpectrum::a_prime(Complex zeta) const {
    switch (form_) {
        case Form::Zero: return Complex{};
        case Form::Reflectionless: {
            // d/dz prod_j f_j with f_j = (z - z_j)/(z - conj z_j),
            // f_j' = (z_j - conj z_j)/(z - conj z_j)^2.
            Complex total{};
            for (std::size_t j = 0; j < eigenvalues_.size(); ++j) {
                const Complex zj = eigenvalues_[j];
                Complex term = (zj - std::conj(zj)) / ((zeta - std::conj(zj)) * (zeta - std::conj(zj)));
                for (std::size_t k = 0; k < eigenvalues_.size(); ++k) {
                    if (k != j) term *= (zeta - eigenvalues_[k]) / (zeta - std::conj(eigenvalues_[k]));
                }
                total += term;
            }
            return total;
        }
        case Form::Rectangle: break;
    }
    throw Error(ErrorCode::Unsupported, "analytic a'(zeta) is not tabulated for the rectangle");
}

std::vector<Complex> AnalyticSpectrum::norming_constants() const {
    std::vector<Complex> r;
    for (std::size_t k = 0; k < eigenvalues_.size(); ++k) r.push_back(b_values_[k] / a_prime(eigenvalues_[k]));
    return r;
}

std::optional<std::size_t> AnalyticSpectrum::match_eigenvalue(Complex zeta, double tol) const {
    for (std::size_t k = 0; k < eigenvalues_.size(); ++k) {
        if (std::abs(zeta - eigenvalues_[k]) <= tol) return k;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

ReferenceRealization make_reference(const ReferenceParams& params, const UniformGrid& grid) {
    std::vector<Complex> q(grid.size());
    switch (params.kind) {
        case ReferenceKind::Zero:
            return {SampledPotential(grid, std::move(q)), AnalyticSpectrum::zero()};
        case ReferenceKind::Sech:
        case ReferenceKind::SatsumaYajima: {
            const int amplitude = params.kind == ReferenceKind::Sech ? 1 : integer_amplitude(params.amplitude);
            for (std::size_t n = 0; n < q.size(); ++n) q[n] = amplitude / std::cosh(grid.node(n));
            return {SampledPotential(grid, std::move(q)), satsuma_yajima_spectrum(amplitude)};
        }
        case ReferenceKind::Rectangle: {
            if (!std::isfinite(params.amplitude)) throw Error(ErrorCode::InvalidInput, "non-finite amplitude");
            const double L = grid.half_width();
            const double tau = grid.step();
            const double i1 = std::round((params.t1 + L) / tau);
            const double i2 = std::round((params.t2 + L) / tau);
            if (!(i1 >= 0.0) || !(i2 <= static_cast<double>(2 * grid.half_count())) || !(i1 < i2)) {
                throw Error(ErrorCode::InvalidInput, "rectangle edges must satisfy -L <= t1 < t2 <= L after snapping");
            }
            const auto n1 = static_cast<std::size_t>(i1);
            const auto n2 = static_cast<std::size_t>(i2);
            for (std::size_t n = n1 + 1; n <= n2; ++n) q[n] = params.amplitude;
            return {SampledPotential(grid, std::move(q)),
                    AnalyticSpectrum::rectangle(params.amplitude, grid.node(n1), grid.node(n2))};
        }
    }
    throw Error(ErrorCode::InvalidInput, "unknown reference potential");
}

ReferenceRealization make_reference(std::string_view name, const UniformGrid& grid) {
    ReferenceParams params;
    params.kind = parse_reference_kind(name);
    if (params.kind == ReferenceKind::SatsumaYajima) params.amplitude = 2.0;
    return make_reference(params, grid);
}

PotentialFactory reference_factory(const ReferenceParams& params) {
    return [params](const UniformGrid& grid) { return make_reference(params, grid).potential; };
}

}  // namespace zsp

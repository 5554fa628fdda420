#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsp/analysis.hpp"
#include "zsp/types.hpp"

namespace zsp {

enum class ReferenceKind { Zero, Sech, SatsumaYajima, Rectangle };

struct ReferenceParams {
    ReferenceKind kind = ReferenceKind::Sech;
    double amplitude = 1.0;  // A for satsuma-yajima and rectangle
    double t1 = -1.0;        // rectangle edges, snapped to grid nodes
    double t2 = 1.0;
};

/// "zero", "sech", "satsuma-yajima" (or "satsuma_yajima"), "rectangle".
ReferenceKind parse_reference_kind(std::string_view name);
std::string reference_name(ReferenceKind kind);

/// Closed-form scattering data of a reference potential (focusing, sigma = +1).
///
/// A sech(t) with integer A >= 1 is reflectionless with eigenvalues
/// (A - k + 1/2)i and a(zeta) = prod_k (zeta - zeta_k)/(zeta - conj(zeta_k)).
/// The rectangle q = A on [t1, t2] uses the exact constant-coefficient
/// transfer matrix; its eigenvalues are not tabulated.
class AnalyticSpectrum {
public:
    static AnalyticSpectrum zero();
    static AnalyticSpectrum reflectionless(std::vector<Complex> eigenvalues, std::vector<Complex> b_values);
    static AnalyticSpectrum rectangle(double amplitude, double t1, double t2);

    Complex a(Complex zeta) const;
    /// b where it is known: everywhere for zero and rectangle; on the real
    /// axis and at the eigenvalues for reflectionless potentials.
    std::optional<Complex> b(Complex zeta) const;
    /// da/dzeta; throws Unsupported for the rectangle.
    Complex a_prime(Complex zeta) const;

    bool eigenvalues_known() const { return eigenvalues_known_; }
    const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
    const std::vector<Complex>& b_values() const { return b_values_; }
    /// r_k = b_k / a'(zeta_k)
    std::vector<Complex> norming_constants() const;

    /// Index of the tabulated eigenvalue within tol of zeta, if any.
    std::optional<std::size_t> match_eigenvalue(Complex zeta, double tol) const;

private:
    enum class Form { Zero, Reflectionless, Rectangle };
    Form form_ = Form::Zero;
    std::vector<Complex> eigenvalues_;
    std::vector<Complex> b_values_;
    bool eigenvalues_known_ = true;
    double amplitude_ = 0.0;
    double t1_ = 0.0;
    double t2_ = 0.0;
};

struct ReferenceRealization {
    SampledPotential potential;
    AnalyticSpectrum spectrum;
};

/// Samples the reference on the grid and pairs it with its analytic data.
///
/// Rectangle edges are snapped to the nearest nodes i1 < i2; nodes exactly on
/// an edge take the left limit, so q = A on nodes i1+1..i2. The analytic data
/// describe the rectangle on the snapped [t1, t2]. The left-limit samples
/// represent that rectangle shifted by tau/2, which leaves a(zeta) unchanged
/// but rotates b by e^{-i zeta tau}; compare a only.
ReferenceRealization make_reference(const ReferenceParams& params, const UniformGrid& grid);
ReferenceRealization make_reference(std::string_view name, const UniformGrid& grid);

/// Factory usable with estimate_order.
PotentialFactory reference_factory(const ReferenceParams& params);

}  // namespace zsp

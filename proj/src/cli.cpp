#include "zsp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "zsp/analysis.hpp"
#include "zsp/discrete_spectrum.hpp"
#include "zsp/parallel.hpp"
#include "zsp/potentials.hpp"
#include "zsp/scattering.hpp"
#include "zsp/signal_io.hpp"

namespace zsp::cli {
namespace {

struct SignalOptions {
    std::string potential = "sech";
    std::string input;
    std::optional<double> amplitude;
    double t1 = -1.0;
    double t2 = 1.0;
    double half_width = 40.0;
    std::size_t half_count = 1024;
    int sigma = 1;
    unsigned threads = 1;
};

struct SchemeOptions {
    std::string scheme = "ct4";
    double alpha = 1.0 / 48.0;
    double beta = 1.0 / 48.0;
};

struct SweepOptions {
    std::optional<double> xi_min;
    std::optional<double> xi_max;
    std::optional<std::size_t> n_xi;
    std::string output;
};

struct OrderOptions {
    double xi_min = -20.0;
    double xi_max = 20.0;
    std::size_t n_xi = 201;
    std::vector<std::size_t> coarse = {1024, 2048};
    std::vector<std::string> schemes = {"bo", "ct4"};
    std::string reference = "analytic";
};

struct EigenOptions {
    std::vector<std::string> at;
    std::vector<std::string> refine;
};

struct ParsevalOptions {
    double tolerance = 1e-4;
    bool no_modes = false;
    std::vector<std::string> refine;
    std::optional<std::size_t> n_xi;
};

struct Signal {
    SampledPotential potential;
    std::optional<AnalyticSpectrum> spectrum;
    std::optional<ReferenceParams> reference;
    std::string label;
};

void add_signal_options(CLI::App& app, SignalOptions& o) {
    app.add_option("--potential", o.potential, "Built-in potential: zero, sech, satsuma-yajima, rectangle")
        ->capture_default_str();
    app.add_option("--input", o.input, "Signal file (CSV t,re_q,im_q); overrides --potential");
    app.add_option("--amplitude", o.amplitude, "Amplitude A (satsuma-yajima default 2, rectangle default 1)");
    app.add_option("--t1", o.t1, "Rectangle left edge")->capture_default_str();
    app.add_option("--t2", o.t2, "Rectangle right edge")->capture_default_str();
    app.add_option("--L", o.half_width, "Half-width of the time window [-L, L]")->capture_default_str();
    app.add_option("--M", o.half_count, "Grid half-count; 2M+1 nodes")->capture_default_str();
    app.add_option("--sigma", o.sigma, "+1 focusing (anomalous), -1 defocusing (normal)")
        ->capture_default_str()
        ->check(CLI::IsMember({1, -1}));
    app.add_option("--threads", o.threads, "Worker threads for independent spectral points")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

void add_scheme_options(CLI::App& app, SchemeOptions& o) {
    app.add_option("--scheme", o.scheme, "bo, ct4 or family")->capture_default_str();
    app.add_option("--alpha", o.alpha, "Family coefficient alpha")->capture_default_str();
    app.add_option("--beta", o.beta, "Family coefficient beta")->capture_default_str();
}

ReferenceParams reference_params(const SignalOptions& o) {
    ReferenceParams p;
    p.kind = parse_reference_kind(o.potential);
    p.amplitude = o.amplitude.value_or(p.kind == ReferenceKind::SatsumaYajima ? 2.0 : 1.0);
    p.t1 = o.t1;
    p.t2 = o.t2;
    return p;
}

Signal load(const SignalOptions& o) {
    if (!o.input.empty()) return {load_signal(o.input, o.sigma), std::nullopt, std::nullopt, o.input};
    const ReferenceParams params = reference_params(o);
    if (o.sigma != 1 && params.kind != ReferenceKind::Zero) {
        throw Error(ErrorCode::InvalidInput, "built-in potentials other than zero are tabulated for --sigma 1 only");
    }
    ReferenceRealization r = make_reference(params, UniformGrid(o.half_width, o.half_count));
    SampledPotential potential = o.sigma == 1 ? std::move(r.potential)
                                              : SampledPotential(r.potential.grid(),
                                                                 std::vector<Complex>(r.potential.samples().begin(),
                                                                                      r.potential.samples().end()),
                                                                 o.sigma);
    std::string label = reference_name(params.kind);
    if (params.kind == ReferenceKind::SatsumaYajima || params.kind == ReferenceKind::Rectangle) {
        label += " A=" + format_double(params.amplitude);
    }
    return {std::move(potential), std::move(r.spectrum), params, label};
}

void write_metadata(std::ostream& out, const Signal& s, const SchemeParams* scheme) {
    const UniformGrid& g = s.potential.grid();
    out << "# potential=" << s.label << '\n';
    out << "# L=" << format_double(g.half_width()) << '\n';
    out << "# M=" << g.half_count() << '\n';
    if (scheme != nullptr) {
        out << "# scheme=" << scheme->name() << '\n';
        if (scheme->kind() == SchemeKind::Family) {
            out << "# alpha=" << format_double(scheme->alpha()) << '\n';
            out << "# beta=" << format_double(scheme->beta()) << '\n';
        }
    }
    out << "# sigma=" << s.potential.sigma() << '\n';
}

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    return format_double(x);
}

std::string fmt_complex(Complex z) { return fmt(z.real()) + "," + fmt(z.imag()); }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidInput, "--n-xi must be positive");
    if (n == 1) return {lo};
    std::vector<double> xs(n);
    const auto d = static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        xs[j] = (static_cast<double>(n - 1 - j) * lo + static_cast<double>(j) * hi) / d;
    }
    return xs;
}

double median(std::vector<double> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// ---------------------------------------------------------------------------

int cmd_sweep(const SignalOptions& so, const SchemeOptions& sc, const SweepOptions& o, std::ostream& out,
              std::ostream& err) {
    const Signal signal = load(so);
    const SchemeParams scheme = parse_scheme(sc.scheme, sc.alpha, sc.beta);
    const UniformGrid& grid = signal.potential.grid();

    std::vector<double> xis;
    if (o.xi_min || o.xi_max) {
        const double hi = o.xi_max.value_or(std::abs(o.xi_min.value_or(0.0)));
        const double lo = o.xi_min.value_or(-hi);
        if (!(lo <= hi)) throw Error(ErrorCode::InvalidInput, "--xi-min must not exceed --xi-max");
        xis = linspace(lo, hi, o.n_xi.value_or(201));
    } else {
        xis = SpectralGrid(grid, o.n_xi).values();
    }

    double xi_peak = 0.0;
    for (double x : xis) xi_peak = std::max(xi_peak, std::abs(x));
    const std::size_t bound = min_nodes(xi_peak, signal.potential.q_max(), grid.half_width());
    if (grid.half_count() < bound) {
        err << "warning: M=" << grid.half_count() << " is below the sampling bound M_min=" << bound
            << " for |xi| <= " << format_double(xi_peak) << '\n';
    }

    const auto samples = continuous_sweep(signal.potential, xis, scheme, so.threads);

    std::ofstream file;
    if (!o.output.empty()) {
        file.open(o.output);
        if (!file) throw Error(ErrorCode::Io, "cannot write '" + o.output + "'");
    }
    std::ostream& dst = o.output.empty() ? out : file;
    write_metadata(dst, signal, &scheme);
    dst << "xi,re_a,im_a,re_b,im_b,abs_r\n";
    for (const auto& s : samples) {
        double abs_r = std::numeric_limits<double>::quiet_NaN();
        if (std::abs(s.a) > 1e-300) abs_r = std::abs(reflection(s));
        dst << fmt(s.zeta.real()) << ',' << fmt_complex(s.a) << ',' << fmt_complex(s.b) << ',' << fmt(abs_r) << '\n';
    }
    return kExitOk;
}

int cmd_order(const SignalOptions& so, const OrderOptions& o, double alpha, double beta, std::ostream& out,
              std::ostream& err) {
    if (!so.input.empty()) {
        throw Error(ErrorCode::InvalidInput, "order needs a built-in potential (signal files cannot be resampled)");
    }
    if (so.sigma != 1) throw Error(ErrorCode::InvalidInput, "order is defined for --sigma 1 built-ins");
    if (o.reference != "analytic" && o.reference != "self") {
        throw Error(ErrorCode::InvalidInput, "--reference must be analytic or self");
    }
    const ReferenceParams params = reference_params(so);
    const PotentialFactory factory = reference_factory(params);
    const AnalyticSpectrum spectrum = make_reference(params, UniformGrid(so.half_width, o.coarse.front())).spectrum;
    // Rectangle b carries a tau-dependent phase from edge snapping; only a
    // self-reference is consistent for it.
    const bool self = o.reference == "self" || params.kind == ReferenceKind::Rectangle;

    std::vector<SchemeParams> schemes;
    for (const auto& name : o.schemes) schemes.push_back(parse_scheme(name, alpha, beta));
    const std::vector<double> xis = linspace(o.xi_min, o.xi_max, o.n_xi);

    Signal meta{factory(UniformGrid(so.half_width, o.coarse.front())), std::nullopt, params,
                reference_name(params.kind)};
    write_metadata(out, meta, nullptr);
    out << "# reference=" << (self ? "self" : "analytic") << '\n';
    out << "xi,coarse_M,fine_M";
    for (const auto& s : schemes) out << ",m_" << s.name();
    out << '\n';

    std::size_t valid = 0;
    for (std::size_t coarse : o.coarse) {
        std::vector<std::vector<double>> m(schemes.size(), std::vector<double>(xis.size()));
        parallel_for(xis.size(), so.threads, [&](std::size_t j) {
            const Complex zeta(xis[j], 0.0);
            for (std::size_t k = 0; k < schemes.size(); ++k) {
                try {
                    const OrderEstimate est =
                        self ? estimate_order_self_reference(factory, so.half_width, zeta, schemes[k], coarse)
                             : estimate_order(factory, so.half_width, zeta, schemes[k], coarse,
                                              Vec2{spectrum.a(zeta), spectrum.b(zeta).value_or(Complex{})});
                    m[k][j] = est.m;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::RoundoffFloor) throw;
                    m[k][j] = std::numeric_limits<double>::quiet_NaN();
                }
            }
        });
        for (std::size_t j = 0; j < xis.size(); ++j) {
            out << fmt(xis[j]) << ',' << coarse << ',' << 2 * coarse;
            for (std::size_t k = 0; k < schemes.size(); ++k) {
                out << ',' << fmt(m[k][j]);
                if (!std::isnan(m[k][j])) ++valid;
            }
            out << '\n';
        }
        for (std::size_t k = 0; k < schemes.size(); ++k) {
            err << "median m_" << schemes[k].name() << " (M=" << coarse << "/" << 2 * coarse
                << ") = " << fmt(median(m[k])) << '\n';
        }
    }
    if (valid == 0) {
        err << "error: roundoff floor: every deviation is at machine precision, no order can be estimated\n";
        return kExitVerificationFailed;
    }
    return kExitOk;
}

struct ModeErrors {
    std::string zeta, a, b, r;
};

int cmd_eigen(const SignalOptions& so, const SchemeOptions& sc, const EigenOptions& o, std::ostream& out,
              std::ostream& err) {
    if (o.at.empty() && o.refine.empty()) {
        throw Error(ErrorCode::InvalidInput, "eigen needs at least one --at or --refine value");
    }
    std::vector<Complex> at, starts;
    for (const auto& text : o.at) at.push_back(parse_complex(text));
    for (const auto& text : o.refine) {
        starts.push_back(parse_complex(text));
        if (!(starts.back().imag() > 0.0)) {
            throw Error(ErrorCode::InvalidInput, "--refine start " + text + " must lie in the upper half-plane");
        }
    }
    const Signal signal = load(so);
    const SchemeParams scheme = parse_scheme(sc.scheme, sc.alpha, sc.beta);
    const AnalyticSpectrum* spectrum = signal.spectrum ? &*signal.spectrum : nullptr;

    write_metadata(out, signal, &scheme);
    out << "mode,start_re,start_im,zeta_re,zeta_im,a_re,a_im,b_re,b_im,aprime_re,aprime_im,r_re,r_im,"
           "iterations,status,err_zeta,err_a,err_b,err_r\n";

    auto errors_for = [&](Complex zeta, Complex a, Complex b, std::optional<Complex> r, bool refined) {
        ModeErrors e;
        if (spectrum == nullptr) return e;
        e.a = fmt(std::abs(a - spectrum->a(zeta)));
        std::optional<std::size_t> k;
        if (spectrum->eigenvalues_known() && !spectrum->eigenvalues().empty()) {
            if (refined) {
                std::size_t best = 0;
                for (std::size_t i = 1; i < spectrum->eigenvalues().size(); ++i) {
                    if (std::abs(zeta - spectrum->eigenvalues()[i]) < std::abs(zeta - spectrum->eigenvalues()[best])) best = i;
                }
                k = best;
                e.zeta = fmt(std::abs(zeta - spectrum->eigenvalues()[best]));
            } else {
                k = spectrum->match_eigenvalue(zeta, 1e-12);
            }
        }
        if (k) {
            e.b = fmt(std::abs(b - spectrum->b_values()[*k]));
            if (r) e.r = fmt(std::abs(*r - spectrum->norming_constants()[*k]));
        } else if (const auto exact_b = spectrum->b(zeta); exact_b && !refined) {
            e.b = fmt(std::abs(b - *exact_b));
        }
        return e;
    };

    bool diverged = false;
    for (const Complex& zeta : at) {
        out << "at," << fmt_complex(zeta) << ',' << fmt_complex(zeta) << ',';
        if (zeta.imag() > 0.0) {
            const DiscreteMode mode = evaluate_mode(signal.potential, zeta, scheme);
            const ModeErrors e = errors_for(zeta, mode.a_at, mode.b, mode.r, false);
            out << fmt_complex(mode.a_at) << ',' << fmt_complex(mode.b) << ',' << fmt_complex(mode.a_prime) << ','
                << fmt_complex(mode.r) << ",0,ok," << e.zeta << ',' << e.a << ',' << e.b << ',' << e.r << '\n';
        } else {
            const ScatteringSample s = scatter(signal.potential, zeta, scheme);
            const ModeErrors e = errors_for(zeta, s.a, s.b, std::nullopt, false);
            out << fmt_complex(s.a) << ',' << fmt_complex(s.b) << ",,,,,0,ok," << e.zeta << ',' << e.a << ','
                << e.b << ",\n";
        }
    }
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const Complex start = starts[i];
        out << "refine," << fmt_complex(start) << ',';
        try {
            const DiscreteMode mode = refine_eigenvalue(signal.potential, start, scheme);
            const ModeErrors e = errors_for(mode.zeta, mode.a_at, mode.b, mode.r, true);
            out << fmt_complex(mode.zeta) << ',' << fmt_complex(mode.a_at) << ',' << fmt_complex(mode.b) << ','
                << fmt_complex(mode.a_prime) << ',' << fmt_complex(mode.r) << ',' << mode.iterations << ",ok,"
                << e.zeta << ',' << e.a << ',' << e.b << ',' << e.r << '\n';
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Divergence && e.code() != ErrorCode::SingularBracket &&
                e.code() != ErrorCode::NonFinite) {
                throw;
            }
            diverged = true;
            out << ",,,,,,,,,,,diverged,,,,\n";
            err << "refine from " << o.refine[i] << ": diverged: " << e.what() << '\n';
        }
    }
    return diverged ? kExitVerificationFailed : kExitOk;
}

int cmd_parseval(const SignalOptions& so, const SchemeOptions& sc, const ParsevalOptions& o, std::ostream& out,
                 std::ostream& err) {
    const Signal signal = load(so);
    const SchemeParams scheme = parse_scheme(sc.scheme, sc.alpha, sc.beta);

    std::vector<Complex> starts;
    bool modes_specified = true;
    if (o.no_modes) {
        starts.clear();
    } else if (!o.refine.empty()) {
        for (const auto& text : o.refine) starts.push_back(parse_complex(text));
    } else if (signal.spectrum && signal.spectrum->eigenvalues_known()) {
        starts = signal.spectrum->eigenvalues();
    } else {
        modes_specified = false;
    }

    std::vector<DiscreteMode> modes;
    for (const Complex& z : starts) modes.push_back(refine_eigenvalue(signal.potential, z, scheme));

    const SpectralGrid grid(signal.potential.grid(), o.n_xi);
    const auto samples = continuous_sweep(signal.potential, grid, scheme, so.threads);
    ParsevalReport report = parseval_check(signal.potential, samples, modes);
    // parseval_check infers the spacing; pin it to the exact grid step.
    report.e_continuous = continuous_energy(samples, grid.step());
    report.residual = std::abs(report.c0_time - (report.e_continuous + report.e_discrete));

    write_metadata(out, signal, &scheme);
    out << "spectral points  " << grid.size() << '\n';
    for (const auto& m : modes) out << "mode             " << fmt(m.zeta.real()) << (m.zeta.imag() < 0 ? "" : "+") << fmt(m.zeta.imag()) << "i\n";
    out << "C0 (time)        " << fmt(report.c0_time) << '\n';
    out << "E_c (continuous) " << fmt(report.e_continuous) << '\n';
    out << "E_d (discrete)   " << fmt(report.e_discrete) << '\n';
    out << "residual         " << fmt(report.residual) << '\n';
    out << "tolerance        " << fmt(o.tolerance) << '\n';

    if (!modes_specified) {
        out << "status           modes unspecified\n";
        err << "warning: no eigenvalues given for this potential (use --refine or --no-modes); "
               "residual excludes the discrete spectrum\n";
        return kExitUsage;
    }
    const bool pass = report.residual < o.tolerance;
    out << "status           " << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kExitOk : kExitVerificationFailed;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvalidInput:
        case ErrorCode::Io:
        case ErrorCode::Unsupported:
            return kExitUsage;
        default:
            return kExitVerificationFailed;
    }
}

}  // namespace

Complex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    auto number = [&](std::string_view part) -> double {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::string buf(part);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(buf, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != buf.size()) throw Error(ErrorCode::InvalidInput, "cannot parse complex number '" + std::string(text) + "'");
        return value;
    };
    if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty complex number");
    if (s.back() != 'i' && s.back() != 'j') {
        return {number(s), 0.0};
    }
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(s)};
    const std::string_view sv(s);
    return {number(sv.substr(0, split)), number(sv.substr(split))};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Zakharov-Shabat direct scattering: BO and CT4 transfer-matrix schemes"};
    app.name("zsp");
    app.require_subcommand(1);

    SignalOptions sweep_signal, order_signal, eigen_signal, parseval_signal;
    SchemeOptions sweep_scheme, eigen_scheme, parseval_scheme;
    SweepOptions sweep;
    OrderOptions order;
    EigenOptions eigen;
    ParsevalOptions parseval;
    double order_alpha = 1.0 / 48.0;
    double order_beta = 1.0 / 48.0;
    order_signal.half_count = 1024;

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Continuous spectrum a(xi), b(xi) as CSV");
    add_signal_options(*sweep_cmd, sweep_signal);
    add_scheme_options(*sweep_cmd, sweep_scheme);
    sweep_cmd->add_option("--xi-min", sweep.xi_min, "Lower end of an explicit xi range");
    sweep_cmd->add_option("--xi-max", sweep.xi_max, "Upper end of an explicit xi range (symmetric if alone)");
    sweep_cmd->add_option("--n-xi", sweep.n_xi, "Number of xi points (default 201 for ranges, 2M+1 otherwise)");
    sweep_cmd->add_option("--output,-o", sweep.output, "Write CSV to a file instead of stdout");

    CLI::App* order_cmd = app.add_subcommand("order", "Empirical convergence order on embedded grids");
    add_signal_options(*order_cmd, order_signal);
    order_cmd->add_option("--scheme", order.schemes, "Schemes to compare (repeatable)")->capture_default_str();
    order_cmd->add_option("--alpha", order_alpha, "Family coefficient alpha")->capture_default_str();
    order_cmd->add_option("--beta", order_beta, "Family coefficient beta")->capture_default_str();
    order_cmd->add_option("--coarse-M", order.coarse, "Coarse grid half-counts (fine = 2x)")->capture_default_str();
    order_cmd->add_option("--xi-min", order.xi_min)->capture_default_str();
    order_cmd->add_option("--xi-max", order.xi_max)->capture_default_str();
    order_cmd->add_option("--n-xi", order.n_xi)->capture_default_str();
    order_cmd->add_option("--reference", order.reference, "analytic or self (Richardson M, 2M, 4M)")
        ->capture_default_str();

    CLI::App* eigen_cmd = app.add_subcommand("eigen", "Discrete spectrum: evaluate or refine eigenvalues");
    add_signal_options(*eigen_cmd, eigen_signal);
    add_scheme_options(*eigen_cmd, eigen_scheme);
    eigen_cmd->add_option("--at", eigen.at, "Evaluate a, b, a', r at zeta without root finding (repeatable)");
    eigen_cmd->add_option("--refine", eigen.refine, "Newton refinement from a starting zeta (repeatable)");

    CLI::App* parseval_cmd = app.add_subcommand("parseval", "Nonlinear Parseval (trace formula n = 0) check");
    add_signal_options(*parseval_cmd, parseval_signal);
    add_scheme_options(*parseval_cmd, parseval_scheme);
    parseval_cmd->add_option("--tol", parseval.tolerance, "Residual tolerance")->capture_default_str();
    parseval_cmd->add_flag("--no-modes", parseval.no_modes, "Ignore the discrete spectrum");
    parseval_cmd->add_option("--refine", parseval.refine, "Eigenvalue starting points (repeatable)");
    parseval_cmd->add_option("--n-xi", parseval.n_xi, "Spectral points (default 2M+1)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_signal, sweep_scheme, sweep, out, err);
        if (order_cmd->parsed()) return cmd_order(order_signal, order, order_alpha, order_beta, out, err);
        if (eigen_cmd->parsed()) return cmd_eigen(eigen_signal, eigen_scheme, eigen, out, err);
        if (parseval_cmd->parsed()) return cmd_parseval(parseval_signal, parseval_scheme, parseval, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kExitUsage;
}

}  // namespace zsp::cli

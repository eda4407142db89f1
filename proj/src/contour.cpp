#include "fricke/contour.hpp"

#include "fricke/arc.hpp"
#include "fricke/error.hpp"
#include "fricke/forms.hpp"
#include "fricke/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace fricke::contour {

namespace {

NumericSeries delta_r_series(int r, int trunc_order, int bits) {
    const auto f = forms::form_cache().get({forms::FormKind::Delta3R, r}, trunc_order);
    return NumericSeries(f->series, bits);
}

Real sqrt3() { return sqrt(Real(3)); }
Real two_pi() { return 2 * Real::pi(); }

// e^{-2 pi i m tau}
Complex e_minus(int m, const Complex& tau) {
    const Real tm = two_pi() * Real(m);
    return exp(tm * tau.im) * cis(-tm * tau.re);
}

// x / (-2 pi i) = x * i / (2 pi)
Complex over_minus_two_pi_i(const Complex& x) {
    const Real s = Real(1) / two_pi();
    return {-x.im * s, x.re * s};
}

// e^{-2 pi m sin(theta)/sqrt3} e^{i k theta/2}
Complex normalizer(const Real& theta, int k, int m) {
    return exp(-two_pi() * Real(m) * sin(theta) / sqrt3()) * cis(Real(k) * theta / Real(2));
}

void check_regime(const Real& theta, int m, Regime regime) {
    const double t = theta.to_double();
    const double split = 2.3;
    if (regime == Regime::Low) {
        if (t < M_PI / 2 - 1e-15 || t > split + 1e-15) {
            throw std::invalid_argument("identity_check: low regime needs theta in [pi/2, 23/10]");
        }
        return;
    }
    if (m < 1) throw std::invalid_argument("identity_check: high regime needs m >= 1");
    const double upper = 5 * M_PI / 6 - 12.0 / (25.0 * m);
    if (t < split - 1e-15 || t > upper + 1e-15) {
        throw std::invalid_argument("identity_check: high regime needs theta in [23/10, 5pi/6 - 12/(25m)]");
    }
}

}  // namespace

ContourConfig default_config(Regime regime) {
    ContourConfig cfg;
    cfg.height = regime == Regime::Low ? 0.35 : 0.15;
    return cfg;
}

Kernel::Kernel(int k, int m, const Complex& z, int trunc_order, int bits)
    : k_(k), m_(m), bits_(bits), z_(z) {
    const auto d = basis::decompose(k);
    ell_ = d.ell;
    PrecisionScope scope(bits_);
    delta_r_ = delta_r_series(d.r, trunc_order, bits_);
    delta_dual_ = delta_r_series(14 - d.r, trunc_order, bits_);
    delta_14_ = delta_r_series(14, trunc_order, bits_);
    fk_z_ = weight_form(z_);
    jz_ = j3_plus_at(z_);
}

Complex Kernel::series_at(const NumericSeries& s, const Complex& q) const {
    SeriesValue v = s.sum(q);
    Real tol = max(magnitude_bound(v.value), v.max_term);
    mpfr_mul_2si(tol.get(), tol.get(), -bits_ / 2, MPFR_RNDN);
    if (v.error > tol) {
        throw InsufficientTruncation("tau-side series with " + std::to_string(s.terms()) + " terms");
    }
    return std::move(v.value);
}

Complex Kernel::weight_form(const Complex& tau) const {
    PrecisionScope scope(bits_);
    return pow(delta3_plus_at(tau), static_cast<long>(ell_)) * series_at(delta_r_, q_of(tau));
}

Complex Kernel::operator()(const Complex& tau, KernelForm form) const {
    PrecisionScope scope(bits_);
    const Complex q = q_of(tau);
    const Complex delta = delta3_plus_at(tau);
    const Complex diff = j3_plus_at(tau) - jz_;
    if (abs(diff) < Real(1e-20)) throw PoleProximity("|j(tau) - j(z)| below 1e-20");
    const Complex lead = e_minus(m_, tau) * fk_z_;
    switch (form) {
        case KernelForm::Paired:
            return lead * pow(delta, static_cast<long>(-ell_ - 1)) * series_at(delta_dual_, q) / diff;
        case KernelForm::Quotient: {
            const Complex fk_tau = pow(delta, static_cast<long>(ell_)) * series_at(delta_r_, q);
            return lead / fk_tau * series_at(delta_14_, q) / delta / diff;
        }
        case KernelForm::Derivative: {
            Real h(1);
            mpfr_mul_2si(h.get(), h.get(), -bits_ / 3, MPFR_RNDN);
            const Complex step(h, Real(0));
            Complex dj = j3_plus_at(tau + step) - j3_plus_at(tau - step);
            dj *= Real(1) / (2 * h);
            const Complex fk_tau = pow(delta, static_cast<long>(ell_)) * series_at(delta_r_, q);
            return lead / fk_tau * over_minus_two_pi_i(dj) / diff;
        }
    }
    throw std::invalid_argument("unknown kernel form");
}

Complex G(const Complex& tau, const Complex& z, int k, int m, int trunc_order, int bits, KernelForm form) {
    return Kernel(k, m, z, trunc_order, bits)(tau, form);
}

LineIntegral line_integral(const Kernel& kernel, const ContourConfig& cfg) {
    if (cfg.quadrature_points < 64 || cfg.quadrature_points % 2 != 0) {
        throw std::invalid_argument("line_integral: quadrature_points must be even and >= 64");
    }
    PrecisionScope scope(kernel.bits());
    const Real height(cfg.height);
    auto node = [&](long j, long n) {
        return Complex(Real(-1) / Real(2) + Real(j) / Real(n), height);
    };

    long n = cfg.quadrature_points;
    std::vector<Complex> values(static_cast<std::size_t>(n));
    parallel_for(values.size(), [&](std::size_t j) { values[j] = kernel(node(static_cast<long>(j), n)); });

    LineIntegral out;
    for (;;) {
        Complex total{Real(0), Real(0)};
        Complex even{Real(0), Real(0)};
        Real mass(0);
        for (std::size_t j = 0; j < values.size(); ++j) {
            total += values[j];
            if (j % 2 == 0) even += values[j];
            mass += abs(values[j]);
        }
        out.value = total * (Real(1) / Real(n));
        out.half_value = even * (Real(2) / Real(n));
        out.l1 = mass / Real(n);
        out.change = abs(out.value - out.half_value);
        out.nodes = static_cast<int>(n);
        out.converged = out.change <= Real(cfg.tolerance) * out.l1;
        if (out.converged || 2 * n > cfg.max_quadrature_points) break;

        // Refine: the old nodes are the even nodes of the doubled rule.
        std::vector<Complex> odd(static_cast<std::size_t>(n));
        const long n2 = 2 * n;
        parallel_for(odd.size(), [&](std::size_t j) { odd[j] = kernel(node(2 * static_cast<long>(j) + 1, n2)); });
        std::vector<Complex> merged(static_cast<std::size_t>(n2));
        for (std::size_t j = 0; j < values.size(); ++j) {
            merged[2 * j] = std::move(values[j]);
            merged[2 * j + 1] = std::move(odd[j]);
        }
        values = std::move(merged);
        n = n2;
    }
    if (!out.converged) {
        throw QuadratureNotConverged("change " + out.change.to_string(4) + " vs mass " + out.l1.to_string(4) +
                                     " at " + std::to_string(out.nodes) + " nodes");
    }
    return out;
}

LineIntegral line_integral(const Complex& z, int k, int m, const ContourConfig& cfg) {
    return line_integral(Kernel(k, m, z, cfg.trunc_order, cfg.precision_bits), cfg);
}

std::pair<Complex, Complex> residues_main(const Complex& z, int k, int m) {
    const Complex at_z = over_minus_two_pi_i(e_minus(m, z));
    const Complex image = Complex(Real(-1)) / (Complex(Real(3)) * z);
    const Complex at_image = over_minus_two_pi_i(e_minus(m, image) / pow(z * sqrt3(), static_cast<long>(k)));
    return {at_z, at_image};
}

std::array<Complex, 4> crossed_poles(const Complex& z) {
    const Complex one(Real(1));
    const Complex three(Real(3));
    return {z / (three * z + one),
            Complex(Real(-1)) / (three * z + three),
            (-z - one) / (three * z + Complex(Real(2))),
            (three * z + one) / (Complex(Real(6)) * z + three)};
}

Corrections correction_terms(const Real& theta, int k, int m) {
    const Real r3 = sqrt3();
    const Real s = sin(theta);
    const Real c = cos(theta);
    const Real tm = two_pi() * Real(m);

    const Real cb = 4 + 2 * r3 * c;
    const Real xb = (r3 + c) / (4 * r3 + 6 * c);
    const Real pb = exp(-tm / r3 * (s - s / cb));
    const Complex tb = cis(Real(k) * theta / Real(2) - tm * xb) *
                       pow(r3 * cis(theta) + Complex(Real(1)), static_cast<long>(-k));

    const Real cc = 7 + 4 * r3 * c;
    const Real xc = (3 * r3 + 5 * c) / (7 * r3 + 12 * c);
    const Real pc = exp(-tm / r3 * (s - s / cc));
    const Complex tc = cis(Real(k) * theta / Real(2) - tm * xc) *
                       pow(2 * cis(theta) + Complex(r3), static_cast<long>(-k));

    return {2 * pb * tb.re, 2 * pc * tc.re};
}

Real printed_c_term(const Real& theta, int k, int m) {
    const Real r3 = sqrt3();
    const Real s = sin(theta);
    const Real c = cos(theta);
    const Real tm = two_pi() * Real(m);
    const Real cc = 7 + 4 * r3 * c;
    const Real xc = (3 * r3 + 5 * c) / (7 * r3 + 12 * c);
    const Real pc = exp(-tm / r3 * (s - s / cc));
    const Complex tc = cis(Real(k) * theta / Real(2) - tm * xc) *
                       pow(r3 * cis(theta) + Complex(Real(2)), static_cast<long>(-k));
    return 2 * pc * tc.re;
}

std::pair<Complex, Complex> correction_terms_from_residues(const Kernel& kernel, const Real& theta) {
    PrecisionScope scope(kernel.bits());
    const Complex& z = kernel.z();
    const auto poles = crossed_poles(z);
    const Complex fk_z = kernel.weight_form(z);
    // -2 pi i Res_{tau0} G = e(-m tau0) f_k(z) / f_k(tau0)
    std::array<Complex, 4> terms;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        terms[i] = e_minus(kernel.m(), poles[i]) * fk_z / kernel.weight_form(poles[i]);
    }
    const Complex fac = normalizer(theta, kernel.k(), kernel.m());
    return {fac * (terms[0] + terms[1]), fac * (terms[2] + terms[3])};
}

IdentityReport identity_check(const Real& theta, int k, int m, Regime regime, const ContourConfig& cfg) {
    check_regime(theta, m, regime);
    IdentityReport rep;
    rep.theta = theta.to_double();
    rep.k = k;
    rep.m = m;
    rep.regime = regime;

    const basis::BasisForm f = basis::build(k, m);
    const arc::ArcSample sample = arc::normalized_value(f, theta, std::max(cfg.precision_bits, arc::kDefaultBits));

    PrecisionScope scope(cfg.precision_bits);
    const Complex z = arc_point(theta);
    const Kernel kernel(k, m, z, cfg.trunc_order, cfg.precision_bits);
    const LineIntegral li = line_integral(kernel, cfg);
    const Complex fac = normalizer(theta, k, m);

    rep.integral = fac * li.value;
    const auto [r1, r2] = residues_main(z, k, m);
    rep.residues = fac * Complex(Real(0), -two_pi()) * (r1 + r2);
    rep.B = Real(0);
    rep.C = Real(0);
    if (regime == Regime::High) {
        const Corrections bc = correction_terms(theta, k, m);
        rep.B = bc.B;
        rep.C = bc.C;
    }
    const Complex total = rep.integral + rep.residues;
    rep.lhs = sample.h_value;
    rep.rhs = total.re + rep.B + rep.C;
    rep.rhs_imag = total.im;
    rep.residual = abs(rep.lhs - rep.rhs) / max(Real(1), abs(rep.lhs));
    rep.nodes = li.nodes;
    rep.quadrature_change = li.change;
    return rep;
}

IdentityReport identity_check(const Real& theta, int k, int m, Regime regime) {
    return identity_check(theta, k, m, regime, default_config(regime));
}

Envelope envelope_functions(const Real& theta) {
    const Real r3 = sqrt3();
    const Real s = sin(theta);
    const Real c = cos(theta);
    const Real third = Real(1) / Real(3);
    const Real cg = 4 + 2 * r3 * c;
    const Real ch = 7 + 4 * r3 * c;
    return {exp(-two_pi() / r3 * (s - s / cg)) * pow(cg, third),
            exp(-two_pi() / r3 * (s - s / ch)) * pow(ch, third)};
}

Envelope envelope_derivatives(const Real& theta) {
    const Real r3 = sqrt3();
    const Real pi = Real::pi();
    const Real s = sin(theta);
    const Real c = cos(theta);
    const Envelope e = envelope_functions(theta);
    const Real cg = 4 + 2 * r3 * c;
    const Real ch = 7 + 4 * r3 * c;
    const Real bg = s / cg * (2 * r3 * pi * s / cg - 1) - pi * c * (3 + 2 * r3 * c) / cg;
    const Real bh = 2 * s / ch * (2 * r3 * pi * s / ch - 1) - pi * c * (6 + 4 * r3 * c) / ch;
    const Real lead = Real(2) / r3;
    return {lead * e.g * bg, lead * e.h * bh};
}

Envelope envelope_derivative_lower_bounds() {
    const Real r3 = sqrt3();
    const Real pi = Real::pi();
    const Real theta = Real(5) * pi / Real(6) - Real(12) / Real(575);
    const Real s = sin(theta);
    const Real c = cos(theta);
    const Envelope e = envelope_functions(theta);
    const Real cg = 4 + 2 * r3 * c;
    const Real ch = 7 + 4 * r3 * c;
    const Real lead = Real(2) / r3;
    return {lead * e.g * s / cg * (2 * r3 * pi * s / cg - 1),
            lead * e.h * 2 * s / ch * (2 * r3 * pi * s / ch - 1)};
}

}  // namespace fricke::contour

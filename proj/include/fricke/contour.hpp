#pragma once

// The integral representation of f_{k,m} on a horizontal line, the residues
// picked up when the line is lowered, the closed-form correction terms B and
// C, and the end-to-end identity check that ties them to arc values.

#include "fricke/basis.hpp"
#include "fricke/numeric.hpp"

#include <array>
#include <utility>

namespace fricke::contour {

// Low: theta in [pi/2, 23/10], line at Im tau = 0.35, no extra poles.
// High: theta in [23/10, 5 pi/6 - 12/(25 m)], line at 0.15, four extra poles.
enum class Regime { Low, High };

struct ContourConfig {
    double height = 0.35;
    int quadrature_points = 512;
    int precision_bits = 256;
    int trunc_order = 600;
    // Trapezoid doubling tolerance relative to the L1 mass of the integrand.
    double tolerance = 1e-15;
    // identity_check doubles the node count up to this many nodes.
    int max_quadrature_points = 8192;
};

ContourConfig default_config(Regime regime);

// Three algebraically equal ways of writing the integrand.
enum class KernelForm {
    Paired,      // e(-m tau) f_k(z) f_{2-k}(tau) / (j(tau) - j(z))
    Quotient,    // the ratio of Delta_3^+, Delta_{3,r}, Delta_{3,14} values
    Derivative,  // e(-m tau) f_k(z)/f_k(tau) * j'(tau)/(-2 pi i) / (j(tau) - j(z)),
                 // with j' from a central difference of j
};

// G(., z) for fixed (k, m, z). Holds the tau-side series rounded once.
class Kernel {
public:
    Kernel(int k, int m, const Complex& z, int trunc_order, int bits);

    // Throws PoleProximity if |j(tau) - j(z)| < 1e-20, InsufficientTruncation
    // if a tau-side series fails its doubling check.
    Complex operator()(const Complex& tau, KernelForm form = KernelForm::Paired) const;

    // f_k = (Delta_3^+)^ell Delta_{3,r} at tau.
    Complex weight_form(const Complex& tau) const;

    const Complex& z() const { return z_; }
    const Complex& j_at_z() const { return jz_; }
    int bits() const { return bits_; }
    int k() const { return k_; }
    int m() const { return m_; }

private:
    Complex series_at(const NumericSeries& s, const Complex& q) const;

    int k_;
    int m_;
    int ell_;
    int bits_;
    Complex z_;
    Complex fk_z_;
    Complex jz_;
    NumericSeries delta_r_;       // Delta_{3,r}
    NumericSeries delta_dual_;    // Delta_{3,14-r}
    NumericSeries delta_14_;      // Delta_{3,14}
};

Complex G(const Complex& tau, const Complex& z, int k, int m, int trunc_order, int bits,
          KernelForm form = KernelForm::Paired);

struct LineIntegral {
    Complex value;       // N-node trapezoid
    Complex half_value;  // N/2-node trapezoid (even nodes)
    Real l1;             // trapezoid of |G|
    Real change;         // |value - half_value|
    int nodes = 0;
    bool converged = false;
};

// Integral of G(., z) over Re tau in [-1/2, 1/2] at Im tau = cfg.height.
// Throws QuadratureNotConverged if the doubling change exceeds
// cfg.tolerance * l1.
LineIntegral line_integral(const Kernel& kernel, const ContourConfig& cfg);
LineIntegral line_integral(const Complex& z, int k, int m, const ContourConfig& cfg);

// Res_z G and Res_{-1/(3z)} G.
std::pair<Complex, Complex> residues_main(const Complex& z, int k, int m);

// The four images of z crossed when lowering the line to 0.15:
// z/(3z+1), -1/(3z+3) (for B) and (-z-1)/(3z+2), (3z+1)/(6z+3) (for C).
std::array<Complex, 4> crossed_poles(const Complex& z);

struct Corrections {
    Real B;
    Real C;
};

// Closed forms. C uses (2 e^{i theta} + sqrt 3)^{-k}, the automorphy factor
// of the element that maps z to (3z+1)/(6z+3).
Corrections correction_terms(const Real& theta, int k, int m);
// C with (sqrt3 e^{i theta} + 2)^{-k} instead; agrees with the residue sum
// only for k = 0.
Real printed_c_term(const Real& theta, int k, int m);
// B and C straight from the residues: e(-m tau0) f_k(z)/f_k(tau0) summed over
// the crossed poles and normalized. Complex so that realness can be checked.
std::pair<Complex, Complex> correction_terms_from_residues(const Kernel& kernel, const Real& theta);

struct IdentityReport {
    double theta = 0;
    int k = 0;
    int m = 0;
    Regime regime = Regime::Low;
    Real lhs;          // h(theta)
    Real rhs;          // Re(integral + residues + B + C)
    Real rhs_imag;
    Real residual;     // |lhs - rhs| / max(1, |lhs|)
    Complex integral;  // normalized integral term
    Complex residues;  // normalized main residue term, equal to 2 cos(alpha)
    Real B;
    Real C;
    int nodes = 0;
    Real quadrature_change;
};

// Theta must lie in the regime's interval. The arc side is evaluated at
// max(cfg.precision_bits, 768) bits since F(j) loses bits to cancellation.
IdentityReport identity_check(const Real& theta, int k, int m, Regime regime,
                              const ContourConfig& cfg);
IdentityReport identity_check(const Real& theta, int k, int m, Regime regime);

struct Envelope {
    Real g;
    Real h;
};

Envelope envelope_functions(const Real& theta);
// Closed-form derivatives of the envelopes.
Envelope envelope_derivatives(const Real& theta);
// Lower bounds on g', h' over (5 pi/6 - 12/575, 5 pi/6): the positive
// first bracket term evaluated at the left end.
Envelope envelope_derivative_lower_bounds();

}  // namespace fricke::contour

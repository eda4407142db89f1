#include "fricke/arc.hpp"
#include "fricke/contour.hpp"
#include "fricke/error.hpp"

#include <doctest.h>

using namespace fricke;
using namespace fricke::contour;

namespace {

bool close(const Complex& a, const Complex& b, const char* tol) {
    return abs(a - b) <= Real(tol) * max(Real(1), abs(b));
}

}  // namespace

TEST_CASE("the three kernel forms agree") {
    PrecisionScope scope(256);
    for (int k : {0, 4, 8, -12, 14}) {
        CAPTURE(k);
        const Kernel kern(k, 7, arc_point(Real(2.0)), 600, 256);
        const Complex tau(Real("0.13"), Real("0.35"));
        const Complex paired = kern(tau, KernelForm::Paired);
        CHECK(close(kern(tau, KernelForm::Quotient), paired, "1e-60"));
        CHECK(close(kern(tau, KernelForm::Derivative), paired, "1e-20"));
    }
}

TEST_CASE("the kernel refuses to evaluate on top of a pole") {
    PrecisionScope scope(256);
    const Complex z = arc_point(Real(2.0));
    const Kernel kern(0, 3, z, 600, 256);
    CHECK_THROWS_AS(kern(z), PoleProximity);
}

TEST_CASE("crossed poles are images of z under the group") {
    PrecisionScope scope(256);
    const Complex z = arc_point(Real(2.5));
    const Complex jz = j3_plus_at(z);
    for (const Complex& p : crossed_poles(z)) {
        CHECK(close(j3_plus_at(p), jz, "1e-60"));
        CHECK(p.im > Real("0.15"));
        CHECK(p.im < Real("0.35"));
    }
}

TEST_CASE("closed-form corrections match the residues") {
    PrecisionScope scope(256);
    for (int k : {0, 4, -12, 14}) {
        CAPTURE(k);
        const Real theta(2.45);
        const Kernel kern(k, 11, arc_point(theta), 600, 256);
        const auto [b, c] = correction_terms_from_residues(kern, theta);
        const Corrections closed = correction_terms(theta, k, 11);
        CHECK(abs(b.re - closed.B) < Real("1e-60"));
        CHECK(abs(c.re - closed.C) < Real("1e-60"));
        CHECK(abs(b.im) < Real("1e-60"));
        CHECK(abs(c.im) < Real("1e-60"));
        const bool printed_matches = abs(printed_c_term(theta, k, 11) - closed.C) < Real("1e-60");
        CHECK(printed_matches == (k == 0));
    }
}

TEST_CASE("identity check in both regimes") {
    PrecisionScope scope(256);
    const auto low = identity_check(Real(1.9), 0, 23, Regime::Low);
    CHECK(low.residual < Real("1e-10"));
    CHECK(low.B.is_zero());
    CHECK(low.C.is_zero());
    CHECK(abs(low.residues.re - Real(2) * cos(arc::phase(Real(1.9), 0, 23))) < Real("1e-40"));

    const auto high = identity_check(Real(2.5), 4, 23, Regime::High);
    CHECK(high.residual < Real("1e-10"));
    CHECK_FALSE(high.B.is_zero());
    CHECK(abs(high.rhs_imag) < Real("1e-10"));
}

TEST_CASE("regime windows are enforced") {
    PrecisionScope scope(256);
    CHECK_THROWS_AS(identity_check(Real(2.5), 0, 23, Regime::Low), std::invalid_argument);
    CHECK_THROWS_AS(identity_check(Real(1.9), 0, 23, Regime::High), std::invalid_argument);
    // 5 pi/6 - 12/(25 m) cuts the high window off before the corner.
    CHECK_THROWS_AS(identity_check(Real(2.6), 0, 23, Regime::High), std::invalid_argument);
    CHECK_THROWS_AS(identity_check(Real(2.4), 0, 0, Regime::High), std::invalid_argument);
}

TEST_CASE("envelope derivatives") {
    PrecisionScope scope(256);
    const Real step("1e-30");
    for (double t : {2.3, 2.45, 2.58}) {
        CAPTURE(t);
        const Real theta(t);
        const Envelope d = envelope_derivatives(theta);
        const Envelope up = envelope_functions(theta + step);
        const Envelope down = envelope_functions(theta - step);
        CHECK(abs(d.g - (up.g - down.g) / (2 * step)) < Real("1e-40"));
        CHECK(abs(d.h - (up.h - down.h) / (2 * step)) < Real("1e-40"));
    }
    const Envelope lb = envelope_derivative_lower_bounds();
    CHECK(abs(lb.g - Real("2.4233")) < Real("1e-4"));
    CHECK(abs(lb.h - Real("4.2632")) < Real("1e-4"));
    // Monotone increase over the tail window, where the lower bounds apply.
    const Real right = Real(5) * Real::pi() / Real(6);
    const Real left = right - Real(12) / Real(575);
    for (int i = 0; i <= 100; ++i) {
        const Real theta = left + (right - left) * Real(i) / Real(100);
        const Envelope d = envelope_derivatives(theta);
        CHECK(d.g >= lb.g);
        CHECK(d.h >= lb.h);
    }
}

#include "fricke/arc.hpp"

#include <doctest.h>

#include <cmath>

using namespace fricke;

TEST_CASE("the Hauptmodul is real and decreasing along the arc") {
    const auto p = arc::j3_arc_profile(200, 256);
    CHECK(p.monotone);
    CHECK(abs(p.left - Real(66)) < Real("1e-30"));
    CHECK(abs(p.right + Real(42)) < Real("1e-30"));
    CHECK(p.max_imag < Real("1e-60"));
}

TEST_CASE("phase function") {
    PrecisionScope scope(128);
    const Real half_pi = Real::pi() / Real(2);
    // cos(pi/2) = 0, so only the weight term is left.
    CHECK(abs(arc::phase(half_pi, 8, 5) - Real(2) * Real::pi()) < Real("1e-30"));
}

TEST_CASE("normalized value is real and close to 2 cos alpha for a moderate index") {
    const auto b = basis::build(0, 23);
    const arc::ArcEvaluator ev(b, 512);
    PrecisionScope scope(512);
    for (double t : {1.7, 2.0, 2.2}) {
        const auto s = ev.sample(Real(t));
        CAPTURE(t);
        CHECK(s.imag_residual < Real("1e-100"));
        CHECK(abs(s.h_value - s.two_cos_alpha) < Real(2));
    }
}

TEST_CASE("zero scan and valence audit on small instances") {
    struct Case {
        int k, m;
    };
    for (const Case c : {Case{0, 23}, Case{8, 24}, Case{-12, 30}}) {
        CAPTURE(c.k);
        CAPTURE(c.m);
        const auto b = basis::build(c.k, c.m);
        const auto rep = arc::scan_zeros(b, 1000, 512);
        CHECK(rep.pass);
        CHECK(static_cast<int>(rep.zeros.size()) == rep.expected_count);
        CHECK(rep.expected_count == b.decomp.gap_end() + c.m);
        CHECK(arc::valence_audit(b, rep) == 0);
        for (std::size_t i = 1; i < rep.zeros.size(); ++i) CHECK(rep.zeros[i - 1].theta < rep.zeros[i].theta);
    }
}

TEST_CASE("corner orders show up in the audit") {
    // Weight 4 forces a zero of order 4 at rho_3; the count only balances
    // when it is included.
    const auto b = basis::build(4, 23);
    CHECK(b.decomp.t == 4);
    CHECK(b.decomp.s == 0);
    const auto rep = arc::scan_zeros(b, 1000, 512);
    CHECK(arc::valence_audit(b, rep) == 0);
}

#include "fricke/error.hpp"
#include "fricke/forms.hpp"
#include "fricke/numeric.hpp"
#include "fricke/parallel.hpp"

#include <doctest.h>

using namespace fricke;

TEST_CASE("precision scopes nest and restore") {
    const int outer = working_precision();
    {
        PrecisionScope a(300);
        CHECK(working_precision() == 300);
        CHECK(Real(1).precision() == 300);
        {
            PrecisionScope b(128);
            CHECK(working_precision() == 128);
        }
        CHECK(working_precision() == 300);
    }
    CHECK(working_precision() == outer);
}

TEST_CASE("Hauptmodul corner values") {
    PrecisionScope scope(256);
    const Real tol("1e-20");
    const Complex at_i = j3_plus_at(arc_point(Real::pi() / Real(2)));
    CHECK(abs(at_i.re - Real(66)) < tol);
    CHECK(abs(at_i.im) < tol);
    const Complex at_rho = j3_plus_at(arc_point(Real(5) * Real::pi() / Real(6)));
    CHECK(abs(at_rho.re + Real(42)) < tol);
    CHECK(abs(at_rho.im) < tol);
}

TEST_CASE("series and product evaluations agree") {
    PrecisionScope scope(256);
    const Complex z(Real("-0.2"), Real("0.45"));
    const auto j = forms::j3_plus(400).series;
    const SeriesValue v = evaluate(j, z, 256);
    const Complex p = j3_plus_at(z);
    CHECK(abs(v.value - p) < Real("1e-60"));
    const auto d = forms::delta3_plus(400).series;
    CHECK(abs(evaluate(d, z, 256).value - delta3_plus_at(z)) < Real("1e-60"));
    const EtaQuotient e = eta_quotient(z);
    CHECK(abs(e.a * e.b - Complex(Real(1))) < Real("1e-70"));
}

TEST_CASE("a short series fails the doubling check") {
    PrecisionScope scope(256);
    const auto j = forms::j3_plus(20).series;
    CHECK_THROWS_AS(evaluate(j, Complex(Real(0), Real("0.3")), 256), InsufficientTruncation);
    CHECK(terms_needed(0.3, 256, 4) > 20);
}

TEST_CASE("rational upper bounds") {
    PrecisionScope scope(200);
    const Real x = exp(Real(-1));
    const mpq_class u = x.rational_upper(64);
    CHECK(Real(u) >= x);
    // At most two units of 2^-64 above: one for the ceiling, one for rounding.
    CHECK(Real(u) - x <= Real(mpq_class(mpz_class(2), mpz_class(1) << 64)));
    CHECK(u.get_den() <= mpz_class(1) << 64);
}

TEST_CASE("parallel_for is deterministic and inherits precision") {
    PrecisionScope scope(333);
    const std::size_t n = 64;
    std::vector<std::string> serial(n), threaded(n);
    std::vector<int> bits(n);
    auto work = [](std::vector<std::string>& out) {
        return [&out](std::size_t i) { out[i] = sqrt(Real(static_cast<long>(i) + 2)).to_string(60); };
    };
    parallel_for(n, work(serial), 1);
    parallel_for(n, work(threaded), 4);
    CHECK(serial == threaded);
    parallel_for(n, [&](std::size_t i) { bits[i] = working_precision(); }, 4);
    for (int b : bits) CHECK(b == 333);
    CHECK_THROWS_AS(parallel_for(n, [](std::size_t i) { if (i == 17) throw Error("boom"); }, 3), Error);
}

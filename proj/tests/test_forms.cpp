#include "fricke/forms.hpp"

#include <doctest.h>

using namespace fricke;
using namespace fricke::forms;

TEST_CASE("Bernoulli numbers and divisor sums") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == mpq_class(-1, 2));
    CHECK(bernoulli(2) == mpq_class(1, 6));
    CHECK(bernoulli(12) == mpq_class(-691, 2730));
    CHECK(bernoulli(7) == 0);
    CHECK(sigma(1, 12) == 28);
    CHECK(sigma(3, 6) == 1 + 8 + 27 + 216);
}

TEST_CASE("level one Eisenstein series") {
    const auto e4 = eisenstein(4, 5).series;
    CHECK(e4[0] == 1);
    CHECK(e4[1] == 240);
    CHECK(e4[2] == 2160);
    const auto e6 = eisenstein(6, 3).series;
    CHECK(e6[1] == -504);
    // E_4^2 = E_8
    CHECK(e4 * e4 == eisenstein(8, 5).series);
}

TEST_CASE("closed-form coefficients of E_k^+ match the series") {
    for (int k : kEisensteinWeights) {
        const auto s = eisenstein_plus(k, 30).series;
        CAPTURE(k);
        CHECK(s[0] == 1);
        for (long n = 1; n <= 30; ++n) CHECK(s[static_cast<int>(n)] == s_coefficient(k, n));
    }
}

TEST_CASE("Hauptmodul expansion") {
    const auto j = j3_plus(6).series;
    CHECK(j[-1] == 1);
    CHECK(j[0] == 0);
    CHECK(j[1] == 783);
    CHECK(j[2] == 8672);
    CHECK(j[3] == 65367);
    CHECK(j.is_integral());
    const auto d = delta3_plus(6).series;
    CHECK(d.true_valuation() == 2);
    CHECK(d[2] == 1);
    CHECK(d[3] == -12);
}

TEST_CASE("Delta_{3,r} normalization and product identity") {
    const int N = 50;
    const auto d14 = delta3_r(14, N).series;
    for (int r : kResidueWeights) {
        CAPTURE(r);
        const auto f = delta3_r(r, N);
        const int eps = cusp_dimension(r);
        CHECK(f.weight == r);
        CHECK(f.series.true_valuation() == eps);
        CHECK(f.series[eps] == 1);
        CHECK(f.series.is_integral());
        CHECK(f.series * delta3_r(14 - r, N).series == d14);
    }
    CHECK(cusp_dimension(0) == 0);
    CHECK(cusp_dimension(14) == 1);
}

TEST_CASE("eta quotients are inverse and their coefficients grow at most like 2^n") {
    const int N = 200;
    const auto pair = eta_quotient_pair(N);
    CHECK(pair.a[0] == 1);
    CHECK(pair.b[0] == 1);
    CHECK(pair.a[1] == -1);
    CHECK(pair.a * pair.b == LaurentSeries::one(N));
    mpz_class bound = 1;
    for (int n = 0; n <= N; ++n) {
        CAPTURE(n);
        CHECK(abs(pair.a[n]) <= bound);
        CHECK(abs(pair.b[n]) <= bound);
        bound *= 2;
    }
}

TEST_CASE("form cache returns the same object") {
    form_cache().clear();
    const FormLabel l{FormKind::J3Plus, 0};
    const auto a = form_cache().get(l, 10);
    const auto b = form_cache().get(l, 10);
    CHECK(a == b);
    CHECK(form_cache().size() == 1);
    CHECK(make_form({FormKind::Delta3R, 8}, 10).series == delta3_r(8, 10).series);
    CHECK_THROWS(delta3_r(2, 10));
}

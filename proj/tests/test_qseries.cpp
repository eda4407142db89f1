#include "fricke/error.hpp"
#include "fricke/qseries.hpp"

#include <doctest.h>

#include <random>

using fricke::LaurentSeries;

namespace {

// Random series with small rational coefficients; a fixed seed keeps every
// run identical.
LaurentSeries random_series(std::mt19937& rng, int N) {
    std::uniform_int_distribution<int> val(-3, 2);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    const int v = val(rng);
    std::vector<mpq_class> c;
    for (int n = v; n <= N; ++n) {
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        c.push_back(x);
    }
    return LaurentSeries(v, std::move(c), N);
}

// Equal through the smaller of the two truncation orders.
bool agree(const LaurentSeries& x, const LaurentSeries& y) {
    const int n = std::min(x.trunc_order(), y.trunc_order());
    return x.truncated(n) == y.truncated(n);
}

}  // namespace

TEST_CASE("coefficient access and truncation order") {
    const LaurentSeries s(-1, {1, 2, 3}, 1);
    CHECK(s[-1] == 1);
    CHECK(s[1] == 3);
    CHECK(s[-5] == 0);
    CHECK_THROWS_AS(s[2], std::out_of_range);
    CHECK(s.true_valuation() == -1);
    CHECK(LaurentSeries::zero(5).is_zero());
    CHECK_THROWS_AS(LaurentSeries(3, {1}, 2), std::invalid_argument);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 40; ++trial) {
        const int N = 12;
        const auto a = random_series(rng, N);
        const auto b = random_series(rng, N);
        const auto c = random_series(rng, N);
        CAPTURE(trial);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        // Products of series with negative valuation lose known terms, so
        // the two sides are compared where both are known.
        CHECK(agree((a * b) * c, a * (b * c)));
        CHECK(agree(a * (b + c), a * b + a * c));
        CHECK((a - a).is_zero());
        CHECK(agree(a * LaurentSeries::one(N), a));
    }
}

TEST_CASE("truncation is sound: products never report unknown terms") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, 10);
        const auto b = random_series(rng, 10);
        const auto p = a * b;
        // Extending the inputs with arbitrary higher terms must leave every
        // reported coefficient unchanged.
        std::vector<mpq_class> ac(a.coeffs().begin(), a.coeffs().end());
        std::vector<mpq_class> bc(b.coeffs().begin(), b.coeffs().end());
        for (int i = 0; i < 8; ++i) {
            ac.emplace_back(trial + i + 1);
            bc.emplace_back(-(i + 3));
        }
        const LaurentSeries a2(a.valuation(), ac, 18);
        const LaurentSeries b2(b.valuation(), bc, 18);
        const auto p2 = a2 * b2;
        CAPTURE(trial);
        CHECK(p2.truncated(p.trunc_order()) == p);
        CHECK(p.trunc_order() == std::min(a.trunc_order() + b.valuation(), b.trunc_order() + a.valuation()));
    }
}

TEST_CASE("inverse, powers and dilation") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_series(rng, 10);
        if (a.is_zero()) continue;
        const auto inv = a.inverse();
        const auto prod = (a * inv).normalized();
        CHECK(prod == LaurentSeries::one(prod.trunc_order()));
        CHECK(agree(a.pow(3), a * a * a));
        CHECK(agree(a.pow(-2) * a * a, LaurentSeries::one(10)));
    }
    CHECK_THROWS_AS(LaurentSeries::zero(4).inverse(), fricke::NonInvertibleSeries);
    const LaurentSeries s(0, {1, 1, 1}, 2);
    const auto d = s.dilate(3);
    CHECK(d.trunc_order() == 8);
    CHECK(d[3] == 1);
    CHECK(d[4] == 0);
}

TEST_CASE("eta product matches the pentagonal expansion") {
    const auto e = fricke::eta_product(1, 30);
    // Exponents of the generalized pentagonal numbers carry +-1.
    const int expected[] = {1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1};
    for (int n = 0; n < 16; ++n) CHECK(e[n] == expected[n]);
    const auto e3 = fricke::eta_product(3, 30);
    CHECK(e3[3] == -1);
    CHECK(e3[1] == 0);
}

TEST_CASE("JSON round trip keeps exact rationals") {
    std::mt19937 rng(3);
    const auto a = random_series(rng, 15);
    CHECK(fricke::series_from_json(fricke::to_json(a)) == a);
    CHECK(fricke::rational_from_string("-7/3") == mpq_class(-7, 3));
    CHECK(fricke::rational_to_string(mpq_class(4)) == "4/1");
    CHECK_THROWS_AS(fricke::rational_from_string("1/0"), std::invalid_argument);
}

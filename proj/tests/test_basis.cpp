#include "fricke/basis.hpp"
#include "fricke/forms.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace fricke;
using namespace fricke::basis;

TEST_CASE("weight decomposition") {
    struct Row {
        int k, ell, r, eps;
    };
    const Row rows[] = {{0, 0, 0, 0},   {4, 0, 4, 0},  {6, 0, 6, 0},   {8, 0, 8, 1},
                        {10, 0, 10, 1}, {12, 1, 0, 0}, {14, 0, 14, 1}, {2, -1, 14, 1},
                        {-12, -1, 0, 0}, {26, 1, 14, 1}, {-10, -2, 14, 1}};
    for (const auto& row : rows) {
        CAPTURE(row.k);
        const auto d = decompose(row.k);
        CHECK(d.ell == row.ell);
        CHECK(d.r == row.r);
        CHECK(d.eps == row.eps);
        CHECK(12 * d.ell + d.r == row.k);
        CHECK(((2 * d.s - row.k) % 4 + 4) % 4 == 0);
        CHECK(((-2 * d.t - row.k) % 12 + 12) % 12 == 0);
        CHECK(d.gap_end() == 2 * d.ell + d.eps);
    }
    CHECK_THROWS_AS(decompose(3), std::invalid_argument);
}

TEST_CASE("small weight-zero basis elements are polynomials in the Hauptmodul") {
    const auto f0 = build(0, 0, 20);
    CHECK(f0.series == LaurentSeries::one(20));
    const auto f1 = build(0, 1, 20);
    CHECK(f1.series == forms::j3_plus(20).series);
    const auto f2 = build(0, 2, 20);
    REQUIRE(f2.poly.size() == 3);
    CHECK(f2.poly[0] == -1566);
    CHECK(f2.poly[1] == 0);
    CHECK(f2.poly[2] == 1);
}

TEST_CASE("canonical shape across weights") {
    for (int k : {-12, 0, 4, 6, 8, 10, 12, 14, 2, -10}) {
        const auto d = decompose(k);
        for (int m = d.min_m(); m <= d.min_m() + 6; ++m) {
            CAPTURE(k);
            CAPTURE(m);
            const auto b = build(k, m, d.gap_end() + 15);
            CHECK(b.degree() == d.gap_end() + m);
            CHECK(b.poly.back() == 1);
            CHECK(b.series.true_valuation() == -m);
            CHECK(b.series[-m] == 1);
            for (int n = -m + 1; n <= d.gap_end(); ++n) CHECK(b.series[n] == 0);
            CHECK(b.series.is_integral());
            CHECK(uniqueness_check(b));
        }
    }
    CHECK(generator(8, 10).series == forms::delta3_r(8, 10).series);
}

TEST_CASE("index below range is rejected") {
    CHECK_THROWS_WITH_AS(build(8, -2, 10), "index below basis range", std::invalid_argument);
    CHECK_THROWS_AS(build(-12, 1, 10), std::invalid_argument);
    CHECK_NOTHROW(build(-12, 2, 10));
}

TEST_CASE("JSON round trip and disk cache") {
    const auto b = build(10, 5, 30);
    const auto back = basis_from_json(to_json(b));
    CHECK(back.series == b.series);
    CHECK(back.poly == b.poly);
    CHECK(back.decomp == b.decomp);

    const auto dir = std::filesystem::temp_directory_path() / "fricke_basis_cache_test";
    std::filesystem::remove_all(dir);
    const BasisCache cache(dir);
    CHECK_FALSE(cache.load(10, 5, 30));
    const auto built = cache.get_or_build(10, 5, 30);
    CHECK(std::filesystem::exists(cache.path_for(10, 5, 30)));
    const auto hit = cache.load(10, 5, 30);
    REQUIRE(hit);
    CHECK(hit->series == built.series);

    // A damaged entry is ignored and replaced.
    {
        std::ofstream out(cache.path_for(10, 5, 30), std::ios::trunc);
        out << "{\"k\": 10, \"m\":";
    }
    CHECK_FALSE(cache.load(10, 5, 30));
    CHECK(cache.get_or_build(10, 5, 30).series == b.series);
    CHECK(cache.load(10, 5, 30));
    std::filesystem::remove_all(dir);
}

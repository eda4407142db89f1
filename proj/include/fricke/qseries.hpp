#pragma once

// Exact truncated Laurent series in q over arbitrary-precision rationals.
//
// A LaurentSeries stores coefficients of q^v, q^{v+1}, ..., q^N where v is the
// (nominal) valuation and N the truncation order: the series is known modulo
// q^{N+1}. Every ring operation propagates N so that no coefficient past the
// provable order is ever reported.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace fricke {

class LaurentSeries {
public:
    // The zero series known through q^trunc_order.
    LaurentSeries() : LaurentSeries(0, {mpq_class(0)}, 0) {}
    LaurentSeries(int valuation, std::vector<mpq_class> coeffs, int trunc_order);

    static LaurentSeries zero(int trunc_order);
    static LaurentSeries one(int trunc_order);
    static LaurentSeries monomial(int exponent, const mpq_class& c, int trunc_order);

    int valuation() const noexcept { return valuation_; }
    int trunc_order() const noexcept { return trunc_order_; }
    std::span<const mpq_class> coeffs() const noexcept { return coeffs_; }

    // Coefficient of q^n. Zero below the valuation; throws past trunc_order.
    const mpq_class& operator[](int n) const;

    // Exponent of the first nonzero coefficient, or trunc_order + 1 if the
    // series is zero to its known order.
    int true_valuation() const;
    bool is_zero() const { return true_valuation() > trunc_order_; }
    // Leading zero coefficients stripped so that coeffs()[0] != 0.
    LaurentSeries normalized() const;
    bool is_integral() const;

    LaurentSeries truncated(int n) const;
    // Multiply by q^s.
    LaurentSeries shifted(int s) const;
    // q -> q^t.
    LaurentSeries dilate(int t) const;
    LaurentSeries inverse() const;
    LaurentSeries pow(int e) const;

    LaurentSeries& operator+=(const LaurentSeries& rhs);
    LaurentSeries& operator-=(const LaurentSeries& rhs);
    LaurentSeries& operator*=(const LaurentSeries& rhs);
    LaurentSeries& operator*=(const mpq_class& c);

    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(LaurentSeries a, const mpq_class& c) { return a *= c; }
    friend LaurentSeries operator*(const mpq_class& c, LaurentSeries a) { return a *= c; }
    LaurentSeries operator-() const;

    // Same truncation order and the same coefficient at every exponent
    // (leading zeros are not significant).
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

    std::string to_string(int max_terms = 12) const;

private:
    int valuation_;
    int trunc_order_;
    std::vector<mpq_class> coeffs_;
};

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries inverse(const LaurentSeries& a);
LaurentSeries pow_int(const LaurentSeries& a, int e);
LaurentSeries dilate(const LaurentSeries& a, int t);

// prod_{n>=1} (1 - q^{t n}) through q^N, by the pentagonal number theorem.
// The q^{t/24} prefactor of eta(t z) is not included.
LaurentSeries eta_product(int t, int N);

// Exact "p/q" string form of a rational; always carries a denominator.
std::string rational_to_string(const mpq_class& x);
mpq_class rational_from_string(const std::string& s);

nlohmann::json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const nlohmann::json& j);

}  // namespace fricke

#pragma once

// Multiprecision real/complex arithmetic on top of MPFR and numeric evaluation
// of q-series and eta products at points of the upper half-plane.
//
// Precision model: every Real carries its own MPFR precision. New values
// (including results of arithmetic) are created at the thread's working
// precision, which PrecisionScope sets for a lexical block.

#include "fricke/qseries.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <vector>

namespace fricke {

int working_precision();

class PrecisionScope {
public:
    explicit PrecisionScope(int bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    int saved_;
};

class Real {
public:
    Real();
    Real(int x) : Real(static_cast<long>(x)) {}
    Real(long x);
    Real(double x);
    explicit Real(const mpz_class& x);
    explicit Real(const mpq_class& x);
    // Decimal literal such as "1.0258e-2", rounded to nearest.
    explicit Real(const std::string& decimal);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    static Real pi();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Scientific notation with `digits` significant digits, '.' separator.
    std::string to_string(int digits = 20) const;
    // Smallest rational with denominator 2^bits that is >= this value.
    mpq_class rational_upper(int bits) const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with 2^{e-1} <= |x| < 2^e; very negative for zero.
    long exponent() const;

    Real& operator+=(const Real& b);
    Real& operator-=(const Real& b);
    Real& operator*=(const Real& b);
    Real& operator/=(const Real& b);
    Real operator-() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long e);
Real hypot(const Real& x, const Real& y);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& b);
    Complex& operator-=(const Complex& b);
    Complex& operator*=(const Complex& b);
    Complex& operator*=(const Real& b);
    Complex& operator/=(const Complex& b);
    Complex operator-() const { return {-re, -im}; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const Real& b) { return a *= b; }
    friend Complex operator*(const Real& b, Complex a) { return a *= b; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
// max(|re|, |im|): within a factor sqrt(2) of |z|, and cheap.
Real magnitude_bound(const Complex& z);
Complex exp(const Complex& z);
// e^{i t}
Complex cis(const Real& t);
Complex pow(Complex z, long e);
// Principal branch z^a for real a.
Complex pow(const Complex& z, const Real& a);

// q = e^{2 pi i z}.
Complex q_of(const Complex& z);

// The point (1/sqrt 3) e^{i theta} of the arc.
Complex arc_point(const Real& theta);

// Result of summing a truncated series at a point.
struct SeriesValue {
    Complex value;
    // |S_N - S_{N/2}|: the doubling-check error estimate.
    Real error;
    // Largest |term| (as magnitude_bound) met while summing.
    Real max_term;
};

// A LaurentSeries with coefficients rounded once to Reals at a fixed
// precision, for repeated evaluation.
class NumericSeries {
public:
    NumericSeries() = default;
    NumericSeries(const LaurentSeries& s, int bits);

    int valuation() const { return valuation_; }
    int terms() const { return static_cast<int>(coeffs_.size()); }

    // sum_n c_n q^n over the stored terms; also the half-length partial sum
    // for the doubling check and the largest term magnitude.
    SeriesValue sum(const Complex& q) const;

private:
    int valuation_ = 0;
    std::vector<Real> coeffs_;
};

// Number of terms of a q-series whose coefficients grow at most polynomially
// (degree `growth_degree`) needed so that the tail past the half point is
// below 2^{-target_bits} at |q| = e^{-2 pi y}.
int terms_needed(double y, int target_bits, int growth_degree);

// Sum of a series at z with the doubling check: throws InsufficientTruncation
// if |S_N - S_{N/2}| > 2^{-bits/2} * max(|S_N|, largest term).
SeriesValue evaluate(const LaurentSeries& s, const Complex& z, int bits);

// prod_{n>=1} (1 - q^n) by the pentagonal number theorem, to working precision.
Complex euler_product(const Complex& q);

struct EtaQuotient {
    Complex a;  // eta(z)/eta(3z)
    Complex b;  // eta(3z)/eta(z)
};
EtaQuotient eta_quotient(const Complex& z);

// (eta(z) eta(3z))^12 from the product formula.
Complex delta3_plus_at(const Complex& z);
// (eta(z)/eta(3z))^12 + 12 + 3^6 (eta(3z)/eta(z))^12.
Complex j3_plus_at(const Complex& z);

}  // namespace fricke

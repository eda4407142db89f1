#include "fricke/numeric.hpp"

#include "fricke/error.hpp"
#include "fricke/parallel.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fricke {

namespace {

thread_local int tl_precision = 256;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

}  // namespace

int working_precision() { return tl_precision; }

PrecisionScope::PrecisionScope(int bits) : saved_(tl_precision) {
    if (bits < MPFR_PREC_MIN || bits > 1 << 20) throw std::invalid_argument("precision out of range");
    tl_precision = bits;
}

PrecisionScope::~PrecisionScope() { tl_precision = saved_; }

// ---- Real ------------------------------------------------------------------

Real::Real() {
    mpfr_init2(v_, tl_precision);
    mpfr_set_zero(v_, 1);
}

Real::Real(long x) {
    mpfr_init2(v_, tl_precision);
    mpfr_set_si(v_, x, kRnd);
}

Real::Real(double x) {
    mpfr_init2(v_, std::max(tl_precision, 53));
    mpfr_set_d(v_, x, kRnd);
}

Real::Real(const mpz_class& x) {
    mpfr_init2(v_, tl_precision);
    mpfr_set_z(v_, x.get_mpz_t(), kRnd);
}

Real::Real(const mpq_class& x) {
    mpfr_init2(v_, tl_precision);
    mpfr_set_q(v_, x.get_mpq_t(), kRnd);
}

Real::Real(const std::string& decimal) {
    mpfr_init2(v_, tl_precision);
    if (mpfr_set_str(v_, decimal.c_str(), 10, kRnd) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: " + decimal);
    }
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, kRnd);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi() {
    Real r;
    mpfr_const_pi(r.v_, kRnd);
    return r;
}

std::string Real::to_string(int digits) const {
    if (digits < 1) digits = 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

mpq_class Real::rational_upper(int bits) const {
    Real scaled(*this);
    mpfr_mul_2si(scaled.v_, v_, bits, kRnd);
    mpz_class num;
    mpfr_get_z(num.get_mpz_t(), scaled.v_, MPFR_RNDU);
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(bits);
    // One extra unit covers the rounding of `scaled` itself.
    return mpq_class(num + 1, den);
}

long Real::exponent() const {
    if (mpfr_zero_p(v_)) return LONG_MIN / 4;
    return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& b) {
    mpfr_add(v_, v_, b.v_, kRnd);
    return *this;
}
Real& Real::operator-=(const Real& b) {
    mpfr_sub(v_, v_, b.v_, kRnd);
    return *this;
}
Real& Real::operator*=(const Real& b) {
    mpfr_mul(v_, v_, b.v_, kRnd);
    return *this;
}
Real& Real::operator/=(const Real& b) {
    mpfr_div(v_, v_, b.v_, kRnd);
    return *this;
}

Real Real::operator-() const {
    Real r;
    mpfr_neg(r.v_, v_, kRnd);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.v_, a.v_, b.v_, kRnd);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.v_, a.v_, b.v_, kRnd);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.v_, a.v_, b.v_, kRnd);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.v_, a.v_, b.v_, kRnd);
    return r;
}

namespace {

template <typename F>
Real unary(const Real& x, F f) {
    Real r;
    f(r.get(), x.get(), kRnd);
    return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

Real atan2(const Real& y, const Real& x) {
    Real r;
    mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r;
    mpfr_pow(r.get(), x.get(), y.get(), kRnd);
    return r;
}

Real pow(const Real& x, long e) {
    Real r;
    mpfr_pow_si(r.get(), x.get(), e, kRnd);
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r;
    mpfr_hypot(r.get(), x.get(), y.get(), kRnd);
    return r;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

// ---- Complex ---------------------------------------------------------------

Complex& Complex::operator+=(const Complex& b) {
    re += b.re;
    im += b.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& b) {
    re -= b.re;
    im -= b.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& b) {
    Real r;
    mpfr_fmms(r.get(), re.get(), b.re.get(), im.get(), b.im.get(), kRnd);
    mpfr_fmma(im.get(), re.get(), b.im.get(), im.get(), b.re.get(), kRnd);
    re = std::move(r);
    return *this;
}

Complex& Complex::operator*=(const Real& b) {
    re *= b;
    im *= b;
    return *this;
}

Complex& Complex::operator/=(const Complex& b) {
    const Real n = norm(b);
    *this *= conj(b);
    re /= n;
    im /= n;
    return *this;
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real norm(const Complex& z) {
    Real r;
    mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), kRnd);
    return r;
}

Real magnitude_bound(const Complex& z) {
    return mpfr_cmpabs(z.re.get(), z.im.get()) >= 0 ? abs(z.re) : abs(z.im);
}

Complex cis(const Real& t) {
    Complex r;
    mpfr_sin_cos(r.im.get(), r.re.get(), t.get(), kRnd);
    return r;
}

Complex exp(const Complex& z) { return exp(z.re) * cis(z.im); }

Complex pow(Complex z, long e) {
    if (e < 0) return Complex(Real(1)) / pow(std::move(z), -e);
    Complex r(Real(1));
    while (e > 0) {
        if (e & 1) r *= z;
        e >>= 1;
        if (e > 0) z *= z;
    }
    return r;
}

Complex pow(const Complex& z, const Real& a) {
    const Real modulus = pow(abs(z), a);
    return modulus * cis(a * atan2(z.im, z.re));
}

Complex q_of(const Complex& z) {
    const Real two_pi = 2 * Real::pi();
    return exp(-two_pi * z.im) * cis(two_pi * z.re);
}

Complex arc_point(const Real& theta) {
    return cis(theta) * (Real(1) / sqrt(Real(3)));
}

// ---- series ----------------------------------------------------------------

NumericSeries::NumericSeries(const LaurentSeries& s, int bits) : valuation_(s.valuation()) {
    PrecisionScope scope(bits);
    coeffs_.reserve(s.coeffs().size());
    for (const auto& c : s.coeffs()) coeffs_.emplace_back(c);
}

SeriesValue NumericSeries::sum(const Complex& q) const {
    SeriesValue out;
    Complex acc{Real(0), Real(0)};
    Complex half;
    Real best(0);
    Complex power = pow(q, static_cast<long>(valuation_));
    Real tr, ti, scratch;
    const std::size_t n = coeffs_.size();
    const std::size_t half_len = (n + 1) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const Real& c = coeffs_[i];
        if (!c.is_zero()) {
            mpfr_mul(tr.get(), c.get(), power.re.get(), kRnd);
            mpfr_mul(ti.get(), c.get(), power.im.get(), kRnd);
            mpfr_add(acc.re.get(), acc.re.get(), tr.get(), kRnd);
            mpfr_add(acc.im.get(), acc.im.get(), ti.get(), kRnd);
            if (mpfr_cmpabs(tr.get(), best.get()) > 0) mpfr_abs(best.get(), tr.get(), kRnd);
            if (mpfr_cmpabs(ti.get(), best.get()) > 0) mpfr_abs(best.get(), ti.get(), kRnd);
        }
        if (i + 1 == half_len) half = acc;
        if (i + 1 < n) {
            mpfr_fmms(scratch.get(), power.re.get(), q.re.get(), power.im.get(), q.im.get(), kRnd);
            mpfr_fmma(power.im.get(), power.re.get(), q.im.get(), power.im.get(), q.re.get(), kRnd);
            mpfr_swap(power.re.get(), scratch.get());
        }
    }
    out.error = magnitude_bound(acc - half);
    out.value = std::move(acc);
    out.max_term = std::move(best);
    return out;
}

int terms_needed(double y, int target_bits, int growth_degree) {
    if (y <= 0) throw std::invalid_argument("terms_needed: point must lie in the upper half-plane");
    const double bits_per_term = 2 * M_PI * y / std::log(2.0);
    int n = 1;
    while (n * bits_per_term - growth_degree * std::log2(n + 1.0) - 24 < target_bits) ++n;
    return 2 * n + 2;
}

SeriesValue evaluate(const LaurentSeries& s, const Complex& z, int bits) {
    if (z.im.sign() <= 0) throw std::invalid_argument("evaluate: Im z must be positive");
    PrecisionScope scope(bits);
    const NumericSeries ns(s, bits);
    SeriesValue v = ns.sum(q_of(z));
    Real scale = max(magnitude_bound(v.value), v.max_term);
    Real tol = scale;
    mpfr_mul_2si(tol.get(), scale.get(), -bits / 2, kRnd);
    if (v.error > tol) {
        throw InsufficientTruncation("series through q^" + std::to_string(s.trunc_order()) +
                                     " changes by " + v.error.to_string(6) + " between N/2 and N terms");
    }
    return v;
}

// ---- eta products ----------------------------------------------------------

Complex euler_product(const Complex& q) {
    if (magnitude_bound(q) >= Real(1)) throw std::invalid_argument("euler_product: |q| must be < 1");
    const long cutoff = -static_cast<long>(working_precision()) - 16;
    Complex total(Real(1));
    const Complex q3 = pow(q, 3);
    Complex step = q;            // q^{3k+1} for the current k, starting at k = 0
    Complex power(Real(1));      // q^{k(3k-1)/2}
    Complex qk(Real(1));         // q^k
    for (long k = 1;; ++k) {
        // g(k) = g(k-1) + 3(k-1) + 1
        power *= step;
        step *= q3;
        qk *= q;
        Complex pair = power + power * qk;  // q^{k(3k-1)/2} + q^{k(3k+1)/2}
        if (k & 1) {
            total -= pair;
        } else {
            total += pair;
        }
        if (magnitude_bound(power).exponent() < cutoff) break;
    }
    return total;
}

EtaQuotient eta_quotient(const Complex& z) {
    const Complex q = q_of(z);
    const Complex ratio = euler_product(q) / euler_product(pow(q, 3));
    // q^{-1/12} = e^{-2 pi i z / 12}
    const Real two_pi = 2 * Real::pi();
    const Complex shift = exp(Complex(two_pi * z.im / Real(12), -two_pi * z.re / Real(12)));
    Complex a = shift * ratio;
    Complex b = Complex(Real(1)) / a;
    return {std::move(a), std::move(b)};
}

Complex delta3_plus_at(const Complex& z) {
    const Complex q = q_of(z);
    const Complex p = euler_product(q) * euler_product(pow(q, 3));
    return pow(q, 2) * pow(p, 12);
}

Complex j3_plus_at(const Complex& z) {
    const Complex q = q_of(z);
    const Complex r = pow(euler_product(q) / euler_product(pow(q, 3)), 12) / q;
    return r + Complex(Real(12)) + Complex(Real(729)) / r;
}

}  // namespace fricke

// ---- parallelism defaults --------------------------------------------------

namespace fricke {

namespace {
std::atomic<int> g_jobs{0};
}

int default_jobs() {
    const int j = g_jobs.load();
    if (j > 0) return j;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void set_default_jobs(int jobs) { g_jobs.store(std::max(jobs, 0)); }

}  // namespace fricke

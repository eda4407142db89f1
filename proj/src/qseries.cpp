#include "fricke/qseries.hpp"

#include "fricke/error.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fricke {

namespace {

// Common denominator of a coefficient block and the integer numerators over it.
struct Scaled {
    mpz_class denom;
    std::vector<mpz_class> nums;
};

Scaled scale_to_integers(std::span<const mpq_class> xs) {
    Scaled out;
    out.denom = 1;
    for (const auto& x : xs) {
        if (x.get_den() != 1) {
            mpz_lcm(out.denom.get_mpz_t(), out.denom.get_mpz_t(), x.get_den_mpz_t());
        }
    }
    out.nums.reserve(xs.size());
    for (const auto& x : xs) {
        mpz_class n = x.get_num();
        if (out.denom != 1) {
            mpz_class f;
            mpz_divexact(f.get_mpz_t(), out.denom.get_mpz_t(), x.get_den_mpz_t());
            n *= f;
        }
        out.nums.push_back(std::move(n));
    }
    return out;
}

mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
    mpq_class q;
    mpz_set(mpq_numref(q.get_mpq_t()), num.get_mpz_t());
    mpz_set(mpq_denref(q.get_mpq_t()), den.get_mpz_t());
    q.canonicalize();
    return q;
}

}  // namespace

LaurentSeries::LaurentSeries(int valuation, std::vector<mpq_class> coeffs, int trunc_order)
    : valuation_(valuation), trunc_order_(trunc_order), coeffs_(std::move(coeffs)) {
    if (valuation_ > trunc_order_) {
        throw std::invalid_argument("LaurentSeries: valuation exceeds truncation order");
    }
    if (coeffs_.size() != static_cast<std::size_t>(trunc_order_ - valuation_ + 1)) {
        throw std::invalid_argument("LaurentSeries: coefficient count does not match orders");
    }
}

LaurentSeries LaurentSeries::zero(int trunc_order) {
    return LaurentSeries(trunc_order, {mpq_class(0)}, trunc_order);
}

LaurentSeries LaurentSeries::one(int trunc_order) {
    return monomial(0, mpq_class(1), trunc_order);
}

LaurentSeries LaurentSeries::monomial(int exponent, const mpq_class& c, int trunc_order) {
    if (exponent > trunc_order) return zero(trunc_order);
    std::vector<mpq_class> cs(static_cast<std::size_t>(trunc_order - exponent + 1));
    cs[0] = c;
    return LaurentSeries(exponent, std::move(cs), trunc_order);
}

const mpq_class& LaurentSeries::operator[](int n) const {
    static const mpq_class kZero(0);
    if (n > trunc_order_) {
        throw std::out_of_range("coefficient q^" + std::to_string(n) + " is past truncation order " +
                                std::to_string(trunc_order_));
    }
    if (n < valuation_) return kZero;
    return coeffs_[static_cast<std::size_t>(n - valuation_)];
}

int LaurentSeries::true_valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) return valuation_ + static_cast<int>(i);
    }
    return trunc_order_ + 1;
}

LaurentSeries LaurentSeries::normalized() const {
    const int v = true_valuation();
    if (v == valuation_ || v > trunc_order_) return *this;
    std::vector<mpq_class> cs(coeffs_.begin() + (v - valuation_), coeffs_.end());
    return LaurentSeries(v, std::move(cs), trunc_order_);
}

bool LaurentSeries::is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const mpq_class& c) { return c.get_den() == 1; });
}

LaurentSeries LaurentSeries::truncated(int n) const {
    if (n > trunc_order_) {
        throw std::invalid_argument("cannot extend a series past its truncation order");
    }
    if (n < valuation_) return zero(n);
    std::vector<mpq_class> cs(coeffs_.begin(), coeffs_.begin() + (n - valuation_ + 1));
    return LaurentSeries(valuation_, std::move(cs), n);
}

LaurentSeries LaurentSeries::shifted(int s) const {
    return LaurentSeries(valuation_ + s, coeffs_, trunc_order_ + s);
}

LaurentSeries LaurentSeries::dilate(int t) const {
    if (t <= 0) throw std::invalid_argument("dilate: factor must be positive");
    if (t == 1) return *this;
    const int v = t * valuation_;
    // Known modulo q^{N+1} becomes known modulo q^{t(N+1)}.
    const int n = t * (trunc_order_ + 1) - 1;
    std::vector<mpq_class> cs(static_cast<std::size_t>(n - v + 1));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) cs[i * static_cast<std::size_t>(t)] = coeffs_[i];
    return LaurentSeries(v, std::move(cs), n);
}

LaurentSeries LaurentSeries::inverse() const {
    const LaurentSeries a = normalized();
    if (a.is_zero()) throw NonInvertibleSeries();
    const int v = a.valuation_;
    const std::size_t len = a.coeffs_.size();
    std::vector<mpq_class> r(len);

    const Scaled s = scale_to_integers(a.coeffs_);
    const mpz_class& u0 = s.nums[0];
    if (u0 == 1 || u0 == -1) {
        // 1/(U/D) = D * (1/U) with U integral and unit leading term.
        std::vector<mpz_class> ri(len);
        ri[0] = u0;
        mpz_class acc;
        for (std::size_t n = 1; n < len; ++n) {
            acc = 0;
            for (std::size_t k = 1; k <= n; ++k) {
                if (s.nums[k] != 0) mpz_addmul(acc.get_mpz_t(), s.nums[k].get_mpz_t(), ri[n - k].get_mpz_t());
            }
            ri[n] = (u0 == 1) ? mpz_class(-acc) : acc;
        }
        for (std::size_t n = 0; n < len; ++n) r[n] = mpq_class(ri[n] * s.denom);
    } else {
        const mpq_class inv0 = 1 / a.coeffs_[0];
        r[0] = inv0;
        mpq_class acc;
        for (std::size_t n = 1; n < len; ++n) {
            acc = 0;
            for (std::size_t k = 1; k <= n; ++k) {
                if (a.coeffs_[k] != 0) acc += a.coeffs_[k] * r[n - k];
            }
            r[n] = -acc * inv0;
        }
    }
    return LaurentSeries(-v, std::move(r), -v + static_cast<int>(len) - 1);
}

LaurentSeries LaurentSeries::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) {
        const LaurentSeries a = normalized();
        return one(std::max(0, a.trunc_order_ - a.valuation_));
    }
    LaurentSeries base = *this;
    LaurentSeries result;
    bool have = false;
    while (e > 0) {
        if (e & 1) {
            result = have ? result * base : base;
            have = true;
        }
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& rhs) {
    const int v = std::min(valuation_, rhs.valuation_);
    const int n = std::min(trunc_order_, rhs.trunc_order_);
    std::vector<mpq_class> cs(static_cast<std::size_t>(n - v + 1));
    for (int e = v; e <= n; ++e) {
        auto& c = cs[static_cast<std::size_t>(e - v)];
        if (e >= valuation_) c = coeffs_[static_cast<std::size_t>(e - valuation_)];
        if (e >= rhs.valuation_) c += rhs.coeffs_[static_cast<std::size_t>(e - rhs.valuation_)];
    }
    valuation_ = v;
    trunc_order_ = n;
    coeffs_ = std::move(cs);
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& rhs) { return *this += -rhs; }

LaurentSeries& LaurentSeries::operator*=(const LaurentSeries& rhs) {
    *this = *this * rhs;
    return *this;
}

LaurentSeries& LaurentSeries::operator*=(const mpq_class& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

LaurentSeries LaurentSeries::operator-() const {
    LaurentSeries out = *this;
    for (auto& x : out.coeffs_) x = -x;
    return out;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    const int v = a.valuation_ + b.valuation_;
    const int n = std::min(a.trunc_order_ + b.valuation_, b.trunc_order_ + a.valuation_);
    const std::size_t len = static_cast<std::size_t>(n - v + 1);
    const std::size_t la = std::min(len, a.coeffs_.size());
    const std::size_t lb = std::min(len, b.coeffs_.size());

    const Scaled sa = scale_to_integers(std::span(a.coeffs_).first(la));
    const Scaled sb = scale_to_integers(std::span(b.coeffs_).first(lb));
    std::vector<mpz_class> acc(len);
    for (std::size_t i = 0; i < la; ++i) {
        if (sa.nums[i] == 0) continue;
        const std::size_t jmax = std::min(lb, len - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (sb.nums[j] != 0) mpz_addmul(acc[i + j].get_mpz_t(), sa.nums[i].get_mpz_t(), sb.nums[j].get_mpz_t());
        }
    }
    const mpz_class den = sa.denom * sb.denom;
    std::vector<mpq_class> cs(len);
    for (std::size_t k = 0; k < len; ++k) cs[k] = make_rational(acc[k], den);
    return LaurentSeries(v, std::move(cs), n);
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.trunc_order_ != b.trunc_order_) return false;
    const int v = std::min(a.valuation_, b.valuation_);
    for (int e = v; e <= a.trunc_order_; ++e) {
        if (a[e] != b[e]) return false;
    }
    return true;
}

std::string LaurentSeries::to_string(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    for (int e = valuation_; e <= trunc_order_ && shown < max_terms; ++e) {
        const auto& c = (*this)[e];
        if (c == 0) continue;
        if (shown > 0) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        const mpq_class mag = abs(c);
        if (mag != 1 || e == 0) os << mag.get_str();
        if (e != 0) os << "q" << (e == 1 ? "" : "^" + std::to_string(e));
        ++shown;
    }
    if (shown == 0) os << "0";
    os << " + O(q^" << trunc_order_ + 1 << ")";
    return os.str();
}

LaurentSeries add(const LaurentSeries& a, const LaurentSeries& b) { return a + b; }
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b) { return a * b; }
LaurentSeries inverse(const LaurentSeries& a) { return a.inverse(); }
LaurentSeries pow_int(const LaurentSeries& a, int e) { return a.pow(e); }
LaurentSeries dilate(const LaurentSeries& a, int t) { return a.dilate(t); }

LaurentSeries eta_product(int t, int N) {
    if (t <= 0) throw std::invalid_argument("eta_product: t must be positive");
    if (N < 0) throw std::invalid_argument("eta_product: N must be non-negative");
    std::vector<mpq_class> cs(static_cast<std::size_t>(N + 1));
    cs[0] = 1;
    // Generalized pentagonal exponents n(3n-1)/2 and n(3n+1)/2, sign (-1)^n.
    for (long n = 1;; ++n) {
        const long e1 = t * n * (3 * n - 1) / 2;
        const long e2 = t * n * (3 * n + 1) / 2;
        if (e1 > N) break;
        const int sign = (n % 2 == 0) ? 1 : -1;
        cs[static_cast<std::size_t>(e1)] += sign;
        if (e2 <= N) cs[static_cast<std::size_t>(e2)] += sign;
    }
    return LaurentSeries(0, std::move(cs), N);
}

std::string rational_to_string(const mpq_class& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

mpq_class rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

nlohmann::json to_json(const LaurentSeries& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(rational_to_string(c));
    return {{"valuation", s.valuation()}, {"trunc_order", s.trunc_order()}, {"coeffs", std::move(coeffs)}};
}

LaurentSeries series_from_json(const nlohmann::json& j) {
    std::vector<mpq_class> cs;
    for (const auto& c : j.at("coeffs")) cs.push_back(rational_from_string(c.get<std::string>()));
    return LaurentSeries(j.at("valuation").get<int>(), std::move(cs), j.at("trunc_order").get<int>());
}

}  // namespace fricke

#include "fricke/forms.hpp"

#include "fricke/error.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fricke::forms {

namespace {

bool is_eisenstein_weight(int k) {
    return std::find(std::begin(kEisensteinWeights), std::end(kEisensteinWeights), k) !=
           std::end(kEisensteinWeights);
}

void require_eisenstein_weight(int k) {
    if (k < 4 || k % 2 != 0) {
        throw std::invalid_argument("Eisenstein series need even weight k >= 4, got " + std::to_string(k));
    }
}

mpz_class pow3(int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(e));
    return r;
}

}  // namespace

std::string FormLabel::to_string() const {
    switch (kind) {
        case FormKind::Eisenstein: return "E" + std::to_string(param);
        case FormKind::EisensteinPlus: return "E" + std::to_string(param) + "plus";
        case FormKind::Delta3Plus: return "delta3plus";
        case FormKind::J3Plus: return "j3plus";
        case FormKind::Delta3R: return "delta3r" + std::to_string(param);
    }
    return "?";
}

mpq_class bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    static const std::vector<mpq_class> table = [] {
        constexpr int kMax = 64;
        std::vector<mpq_class> b(kMax + 1);
        b[0] = 1;
        for (int m = 1; m <= kMax; ++m) {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0
            mpq_class acc = 0;
            mpz_class binom = 1;  // C(m+1, 0)
            for (int j = 0; j < m; ++j) {
                acc += mpq_class(binom) * b[static_cast<std::size_t>(j)];
                binom = binom * (m + 1 - j) / (j + 1);
            }
            b[static_cast<std::size_t>(m)] = -acc / (m + 1);
        }
        return b;
    }();
    if (n >= static_cast<int>(table.size())) throw std::out_of_range("bernoulli: index too large");
    return table[static_cast<std::size_t>(n)];
}

mpz_class sigma(int power, long n) {
    if (n <= 0) throw std::invalid_argument("sigma: n must be positive");
    mpz_class total = 0;
    mpz_class term;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(power));
        total += term;
        const long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(power));
            total += term;
        }
    }
    return total;
}

NamedForm eisenstein(int k, int N) {
    require_eisenstein_weight(k);
    if (N < 0) throw std::invalid_argument("eisenstein: N must be non-negative");
    const mpq_class factor = -mpq_class(2 * k) / bernoulli(k);
    std::vector<mpq_class> cs(static_cast<std::size_t>(N + 1));
    cs[0] = 1;
    for (int n = 1; n <= N; ++n) cs[static_cast<std::size_t>(n)] = factor * mpq_class(sigma(k - 1, n));
    return {{FormKind::Eisenstein, k}, k, LaurentSeries(0, std::move(cs), N)};
}

NamedForm eisenstein_plus(int k, int N) {
    require_eisenstein_weight(k);
    if (N < 0) throw std::invalid_argument("eisenstein_plus: N must be non-negative");
    const mpq_class scale(pow3(k / 2));
    const LaurentSeries e = eisenstein(k, N).series;
    const LaurentSeries e3 = eisenstein(k, N / 3 + 1).series.dilate(3).truncated(N);
    LaurentSeries s = (e + scale * e3) * mpq_class(1 / (1 + scale));
    return {{FormKind::EisensteinPlus, k}, k, std::move(s)};
}

mpq_class s_coefficient(int k, long n) {
    if (!is_eisenstein_weight(k)) {
        throw std::invalid_argument("s_coefficient: unsupported weight " + std::to_string(k));
    }
    if (n < 0) throw std::invalid_argument("s_coefficient: n must be non-negative");
    if (n == 0) return 1;
    const mpq_class p3(pow3(k / 2));
    const mpq_class lead = -mpq_class(1) / (1 + p3) * mpq_class(2 * k) / bernoulli(k);
    mpq_class div(sigma(k - 1, n));
    if (n % 3 == 0) div += p3 * mpq_class(sigma(k - 1, n / 3));
    return lead * div;
}

NamedForm delta3_plus(int N) {
    if (N < 2) throw std::invalid_argument("delta3_plus: N must be at least 2");
    const int rel = N - 2;
    const LaurentSeries p1 = eta_product(1, rel).pow(12);
    const LaurentSeries p3 = eta_product(3, rel).pow(12);
    return {{FormKind::Delta3Plus, 0}, 12, (p1 * p3).shifted(2)};
}

NamedForm j3_plus(int N) {
    if (N < 0) throw std::invalid_argument("j3_plus: N must be non-negative");
    const LaurentSeries p1 = eta_product(1, N + 1);
    const LaurentSeries p3 = eta_product(3, N + 1);
    // (eta(z)/eta(3z))^12 = q^{-1} (P1/P3)^12 and (eta(3z)/eta(z))^12 = q (P3/P1)^12.
    const LaurentSeries up = (p1 * p3.inverse()).pow(12).shifted(-1);
    const LaurentSeries down = (p3 * p1.inverse()).pow(12).shifted(1) * mpq_class(729);
    LaurentSeries j = (up + down + LaurentSeries::monomial(0, mpq_class(12), N + 1)).truncated(N);
    return {{FormKind::J3Plus, 0}, 0, std::move(j)};
}

int cusp_dimension(int r) {
    switch (r) {
        case 0:
        case 4:
        case 6: return 0;
        case 8:
        case 10:
        case 14: return 1;
        default: throw std::invalid_argument("no Delta_{3,r} for r = " + std::to_string(r));
    }
}

NamedForm delta3_r(int r, int N) {
    const int eps = cusp_dimension(r);
    if (N < eps) throw std::invalid_argument("delta3_r: N below the form's valuation");
    auto ep = [N](int k) { return eisenstein_plus(k, N).series; };
    LaurentSeries s;
    switch (r) {
        case 0: s = LaurentSeries::one(N); break;
        case 4: s = ep(4); break;
        case 6: s = ep(6); break;
        case 8: s = mpq_class(41, 1728) * (ep(4) * ep(4) - ep(8)); break;
        case 10: s = mpq_class(61, 432) * (ep(4) * ep(6) - ep(10)); break;
        case 14: s = mpq_class(-22427, 272160) * (ep(6) * ep(8) - ep(14)); break;
    }
    if (s.true_valuation() != eps) {
        throw InternalConsistencyError("Delta_{3," + std::to_string(r) + "} has valuation " +
                                       std::to_string(s.true_valuation()));
    }
    int sign = 1;
    if (s[eps] == -1) {
        sign = -1;
        s = -s;
    } else if (s[eps] != 1) {
        throw InternalConsistencyError("Delta_{3," + std::to_string(r) + "} leading coefficient " +
                                       s[eps].get_str());
    }
    NamedForm f{{FormKind::Delta3R, r}, r, s.normalized()};
    f.normalization_sign = sign;
    return f;
}

EtaQuotientPair eta_quotient_pair(int N) {
    if (N < 0) throw std::invalid_argument("eta_quotient_pair: N must be non-negative");
    const LaurentSeries p1 = eta_product(1, N);
    const LaurentSeries p3 = eta_product(3, N);
    return {p1 * p3.inverse(), p3 * p1.inverse()};
}

NamedForm make_form(const FormLabel& label, int N) {
    switch (label.kind) {
        case FormKind::Eisenstein: return eisenstein(label.param, N);
        case FormKind::EisensteinPlus: return eisenstein_plus(label.param, N);
        case FormKind::Delta3Plus: return delta3_plus(N);
        case FormKind::J3Plus: return j3_plus(N);
        case FormKind::Delta3R: return delta3_r(label.param, N);
    }
    throw std::invalid_argument("unknown form kind");
}

std::shared_ptr<const NamedForm> FormCache::get(const FormLabel& label, int N) {
    const auto key = std::make_pair(label, N);
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto built = std::make_shared<const NamedForm>(make_form(label, N));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.emplace(key, std::move(built));
    return it->second;
}

void FormCache::clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
}

std::size_t FormCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

FormCache& form_cache() {
    static FormCache cache;
    return cache;
}

}  // namespace fricke::forms

#pragma once

// The named modular forms for the Fricke group of level 3 as exact
// q-expansions: E_k, E_k^+, Delta_3^+, the Hauptmodul j_3^+, the holomorphic
// forms Delta_{3,r}, and the eta quotients eta(z)/eta(3z), eta(3z)/eta(z).

#include "fricke/qseries.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <utility>

namespace fricke::forms {

enum class FormKind { Eisenstein, EisensteinPlus, Delta3Plus, J3Plus, Delta3R };

struct FormLabel {
    FormKind kind;
    int param = 0;  // k for Eisenstein kinds, r for Delta3R, unused otherwise

    std::string to_string() const;
    friend auto operator<=>(const FormLabel&, const FormLabel&) = default;
};

struct NamedForm {
    FormLabel label;
    int weight = 0;
    LaurentSeries series;
    // Rational power of q multiplying `series`; zero for every form here.
    mpq_class exponent_offset = 0;
    // Sign applied to the literal defining combination to reach the
    // q^eps + O(q^{eps+1}) normalization (Delta3R only; +1 otherwise).
    int normalization_sign = 1;
};

// Supported weights of E_k^+ inside the Delta_{3,r} definitions.
inline constexpr int kEisensteinWeights[] = {4, 6, 8, 10, 14};
inline constexpr int kResidueWeights[] = {0, 4, 6, 8, 10, 14};

mpq_class bernoulli(int n);
mpz_class sigma(int power, long n);

NamedForm eisenstein(int k, int N);
NamedForm eisenstein_plus(int k, int N);
// Closed-form Fourier coefficient of E_k^+ (three-case divisor formula).
mpq_class s_coefficient(int k, long n);
NamedForm delta3_plus(int N);
NamedForm j3_plus(int N);
// dim S_r(Gamma_0^+(3)) for r in {0,4,6,8,10,14}.
int cusp_dimension(int r);
NamedForm delta3_r(int r, int N);

struct EtaQuotientPair {
    LaurentSeries a;  // eta(z)/eta(3z) = q^{-1/12} * a
    LaurentSeries b;  // eta(3z)/eta(z) = q^{+1/12} * b
    mpq_class a_offset{-1, 12};
    mpq_class b_offset{1, 12};
};
EtaQuotientPair eta_quotient_pair(int N);

NamedForm make_form(const FormLabel& label, int N);

// Process-wide memo cache of constructed forms. Lookups take a shared lock;
// construction happens outside the lock and the first writer wins.
class FormCache {
public:
    std::shared_ptr<const NamedForm> get(const FormLabel& label, int N);
    void clear();
    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<FormLabel, int>, std::shared_ptr<const NamedForm>> entries_;
};

FormCache& form_cache();

}  // namespace fricke::forms

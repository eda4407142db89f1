#pragma once

// Weight decomposition k = 12*ell + r and the canonical basis
//   f_{k,m} = (Delta_3^+)^ell * Delta_{3,r} * F(j_3^+) = q^{-m} + O(q^{2 ell + eps + 1}),
// F monic with integer coefficients of degree 2 ell + eps + m.

#include "fricke/qseries.hpp"

#include <gmpxx.h>

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

namespace fricke::basis {

struct WeightDecomposition {
    int k = 0;
    int ell = 0;
    int r = 0;
    int eps = 0;  // dim S_r
    int s = 0;    // forced order at i/sqrt(3): 2s = k (mod 4)
    int t = 0;    // forced order at rho_3:     -2t = k (mod 12)

    // Exponent 2 ell + eps: the end of the gap window and the smallest allowed -m.
    int gap_end() const { return 2 * ell + eps; }
    int min_m() const { return -gap_end(); }
    friend bool operator==(const WeightDecomposition&, const WeightDecomposition&) = default;
};

WeightDecomposition decompose(int k);

struct BasisForm {
    WeightDecomposition decomp;
    int m = 0;
    std::vector<mpz_class> poly;  // F coefficients, constant term first
    LaurentSeries series;

    int degree() const { return static_cast<int>(poly.size()) - 1; }
};

inline constexpr int kDefaultMargin = 40;

// Default truncation order for the (k, m) basis element: gap end + margin.
int default_order(int k, int margin = kDefaultMargin);

// (Delta_3^+)^ell Delta_{3,r}: the m = -2 ell - eps element, F = 1.
BasisForm generator(int k, int N);

// Throws std::invalid_argument("index below basis range") if m < -2 ell - eps,
// InternalConsistencyError if the triangular solve leaves a non-integral
// coefficient or the expansion does not have the canonical shape.
BasisForm build(int k, int m, int N);
BasisForm build(int k, int m);

// Structural checks on a BasisForm: monic integral F of the right degree,
// q^{-m} + (zeros) + O(q^{gap_end+1}), and agreement with a fresh solve at a
// higher truncation order.
bool uniqueness_check(const BasisForm& b);

nlohmann::json to_json(const BasisForm& b);
BasisForm basis_from_json(const nlohmann::json& j);

// Disk cache of built forms keyed by (k, m, N). Files are JSON written under
// an advisory lock; identical keys race benignly (results are deterministic).
class BasisCache {
public:
    explicit BasisCache(std::filesystem::path dir);

    std::optional<BasisForm> load(int k, int m, int N) const;
    void store(const BasisForm& b) const;
    // load() or build() + store().
    BasisForm get_or_build(int k, int m, int N) const;

    std::filesystem::path path_for(int k, int m, int N) const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace fricke::basis

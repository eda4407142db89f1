#pragma once

// Evaluation of basis forms on the arc S = {(1/sqrt 3) e^{i theta}},
// pi/2 <= theta <= 5 pi/6, realness residuals, sign-change zero location and
// the valence bookkeeping that accounts for every zero in the fundamental
// domain.

#include "fricke/basis.hpp"
#include "fricke/numeric.hpp"

#include <gmpxx.h>

#include <vector>

namespace fricke::arc {

inline constexpr int kDefaultBits = 768;
inline constexpr int kDefaultGrid = 4000;

// Value of f_{k,m} at a point together with the size of the largest term
// that went into it, so that cancellation can be measured.
struct FormValue {
    Complex value;
    Real scale;
};

struct ArcSample {
    Real theta;
    Complex z;
    Real h_value;         // Re of e^{-2 pi m sin(theta)/sqrt3} e^{ik theta/2} f(z)
    Real alpha;           // k theta/2 - 2 pi m cos(theta)/sqrt3
    Real two_cos_alpha;
    Real imag_residual;   // |Im| of the same product divided by its term scale
    Real scale;           // normalized term scale
};

// Numeric evaluator for one basis form. f_{k,m} is evaluated in factored
// form (Delta_3^+)^ell * Delta_{3,r} * F(j_3^+): Delta_3^+ and j_3^+ from the
// eta products, Delta_{3,r} from its q-series (with the doubling check) and
// F by Horner's rule.
class ArcEvaluator {
public:
    ArcEvaluator(basis::BasisForm form, int bits = kDefaultBits);

    // Points with Im z >= min_height; the Delta_{3,r} series length is sized
    // for that height. Throws InsufficientTruncation when the doubling check
    // on the Delta_{3,r} series fails.
    FormValue form_at(const Complex& z) const;
    ArcSample sample(const Real& theta) const;

    const basis::BasisForm& form() const { return form_; }
    int bits() const { return bits_; }
    double min_height() const { return min_height_; }

private:
    basis::BasisForm form_;
    int bits_;
    double min_height_;
    NumericSeries delta_r_;
    std::vector<Real> poly_;
    std::vector<double> poly_log2_;  // log2 |coefficient|, -inf for zeros
};

// Alpha(theta) for weight k and index m.
Real phase(const Real& theta, int k, int m);

ArcSample normalized_value(const basis::BasisForm& b, const Real& theta, int bits = kDefaultBits);

struct ArcZero {
    double theta;
    // Inside (5 pi/6 - 12/(25 m), 5 pi/6): outside the window where the
    // theorem's argument applies.
    bool in_tail;
};

struct ArcZeroReport {
    int k = 0;
    int m = 0;
    std::vector<ArcZero> zeros;
    int expected_count = 0;
    int s = 0;
    int t = 0;
    // |h| at the corners relative to the term scale.
    double corner_left_value = 0;
    double corner_right_value = 0;
    bool corner_left_small = false;
    bool corner_right_small = false;
    int grid_points = 0;
    int precision_bits = 0;
    double tolerance = 0;
    // Largest imaginary residual over the grid, as log2 (relative to scale).
    double max_imag_residual_log2 = 0;
    bool rescan_recommended = false;
    bool pass = false;
};

ArcZeroReport scan_zeros(const ArcEvaluator& ev, int grid_points = kDefaultGrid);
ArcZeroReport scan_zeros(const basis::BasisForm& b, int grid_points = kDefaultGrid, int bits = kDefaultBits);

// Samples at `grid_points` uniformly spaced theta with the grid endpoints.
std::vector<ArcSample> sample_grid(const ArcEvaluator& ev, const Real& from, const Real& to, int grid_points);

struct J3Sample {
    double theta;
    Real value;
    Real imag;
};

struct J3Profile {
    std::vector<J3Sample> samples;
    Real left;   // theta = pi/2
    Real right;  // theta = 5 pi/6
    // Real part strictly decreasing in theta over the grid.
    bool monotone = false;
    Real max_imag;
};

J3Profile j3_arc_profile(int grid_points, int bits = 256);

// v_inf + s/2 + t/6 + (simple arc zeros) - k/6 with v_inf read off the series.
mpq_class valence_audit(const basis::BasisForm& b, const ArcZeroReport& report);

}  // namespace fricke::arc

#pragma once

// Numerical estimates behind Proposition 2.4: the two-sided bounds on
// |Delta_3^+|, the separation of j_3^+ values, the sup bounds on Delta_{3,r},
// the correction-term envelopes and the scalar chains that combine them.
//
// Every estimate is produced twice: by the argument the proof uses (series
// head plus closed-form tail, Lipschitz slack on a grid, and so on), and as a
// plain grid extremum of the quantity itself.

#include "fricke/numeric.hpp"

#include <string>
#include <vector>

namespace fricke::bounds {

// Direction of the printed inequality: quantity < constant, quantity >
// constant, or a printed equality of decimals.
enum class Relation { Less, Greater, Equal };

enum class Status { Pass, Fail, Blocked };

struct GridInfo {
    int points = 0;
    double spacing = 0;
    int precision_bits = 0;
};

struct BoundReport {
    std::string name;         // e.g. "L4.1(a) lower"
    std::string printed_value;  // decimal as printed
    Relation relation = Relation::Less;
    // The estimate recomputed the way the proof computes it.
    Real bound_value;
    // Extremum of the bounded quantity itself over a grid (equal to
    // bound_value where the estimate has no separate underlying quantity).
    Real computed_extremum;
    // Signed distance of bound_value from the printed constant, positive when
    // the printed inequality is respected.
    Real margin;
    GridInfo grid;
    Status status = Status::Fail;
    // bound_value agrees with the printed constant to within two units of its
    // fifth significant digit, on the printed side.
    bool reproduced = false;
    // False for checks that have no printed estimate to match digit for
    // digit; reproduced then just mirrors the status.
    bool compare_digits = true;
    std::string note;
};

const char* to_string(Relation r);
const char* to_string(Status s);

struct BoundsConfig {
    int precision_bits = 256;
    int grid_points = 4001;
};

// Fills margin, status and reproduced from the other fields. Status is pass
// iff the margin is positive (for Equal: |bound - constant| is within half a
// unit of the last printed digit) and the grid extremum also lies on the
// printed side.
void finalize(BoundReport& r);

// Decimal unit of the fifth significant digit of a printed constant.
Real fifth_digit_unit(const std::string& decimal);

enum class Segment { ArcLow, Line035, ArcHigh, Line015 };

// Lower and upper bound on |Delta_3^+| over the segment, in that order.
// Pentagonal-sum upper bound at the lowest point; product lower bound with
// the exponential prefactor at the highest point.
std::vector<BoundReport> delta3_range(Segment seg, const BoundsConfig& cfg = {});

enum class Section { Four, Five };

// Derivative bound, Lipschitz slack, grid minimum of the six-factor product,
// arc spread and net separation, in that order.
std::vector<BoundReport> j3_separation(Section sec, const BoundsConfig& cfg = {});

// Upper bound on |d/dx (eta(tau)/eta(3tau) - sqrt3 w eta(3tau)/eta(tau))| at
// height y for any |w| = 1, using the exact |a_n|, |b_n| up to n = head and
// 2^n beyond.
Real derivative_bound(const Real& y, int head = 100);

// |a_n|, |b_n| <= 2^n; |s_{k,n}| <= 504 (n+1)^k; |t_{k1,k2,n}| <= 504^2 (n+1)^{k1+k2+1}
// for 0 <= n <= N, exactly.
std::vector<BoundReport> coefficient_bounds(int N);

// sum_{n >= start} (n+1)^p x^n for rational 0 <= x < 1, exactly.
mpq_class power_tail(int p, const mpq_class& x, long start);

// Upper bound on |Delta_{3,r}| at height y: exact head sum up to n = 200 plus
// the closed-form tail, evaluated at a rational upper bound of e^{-2 pi y}.
Real delta_r_bound(int r, const Real& y);

// The per-r sup constants (section four only) and the worst pairing
// |Delta_{3,r}(z)| |Delta_{3,14-r}(tau)|.
std::vector<BoundReport> delta_r_sup(Section sec, const BoundsConfig& cfg = {});

// g'(theta) and h'(theta) lower bounds near 5pi/6, the mean-value constants
// 1.1631 and 2.0463, and the B and C bounds 0.62504 and 0.25843.
std::vector<BoundReport> correction_bounds(const BoundsConfig& cfg = {});

enum class Part { A, B };
enum class EllSign { NonNegative, Negative };

// Scalar chain for one case of the proof. When `verified` is given and any of
// the reports it holds has failed, every link is marked blocked.
std::vector<BoundReport> prop24_aggregate(Part part, EllSign sign,
                                          const std::vector<BoundReport>* verified = nullptr);

// max over the section's theta-grid of |h(theta) - 2 cos alpha(theta)| for
// f_{k,m}, against 1.9674 (part A) or 0.99728 (part B). The part B window is
// [23/10, 5pi/6 - 12/(25m)].
BoundReport prop24_direct(Part part, int k, int m, int grid_points = 4000, int bits = 768);

enum class Suite { Lemma41, Lemma51, Prop24, All };

// Reports in a fixed order. Prop24 includes the direct check for the eight
// reference forms.
std::vector<BoundReport> run_suite(Suite suite, const BoundsConfig& cfg = {});

bool all_pass(const std::vector<BoundReport>& reports);

}  // namespace fricke::bounds

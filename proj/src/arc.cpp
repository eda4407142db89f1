#include "fricke/arc.hpp"

#include "fricke/error.hpp"
#include "fricke/forms.hpp"
#include "fricke/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fricke::arc {

namespace {

// Lowest point of the arc: theta = 5 pi/6, Im z = 1/(2 sqrt 3). Slightly
// below so that points a rounding error under the corner stay covered.
constexpr double kArcMinHeight = 0.2886;

double log2_abs(const Real& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long e = 0;
    const double mant = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return std::log2(std::fabs(mant)) + static_cast<double>(e);
}

Real pow2(double e) {
    const double whole = std::floor(e);
    Real r(std::exp2(e - whole));
    mpfr_mul_2si(r.get(), r.get(), static_cast<long>(whole), MPFR_RNDN);
    return r;
}

Real arc_left() { return Real::pi() / Real(2); }
Real arc_right() { return Real(5) * Real::pi() / Real(6); }

}  // namespace

ArcEvaluator::ArcEvaluator(basis::BasisForm form, int bits)
    : form_(std::move(form)), bits_(bits), min_height_(kArcMinHeight) {
    PrecisionScope scope(bits_);
    const int n = terms_needed(min_height_, bits_ / 2 + 32, 15);
    const auto dr = forms::form_cache().get({forms::FormKind::Delta3R, form_.decomp.r}, n);
    delta_r_ = NumericSeries(dr->series, bits_);
    poly_.reserve(form_.poly.size());
    for (const auto& c : form_.poly) {
        poly_.emplace_back(c);
        if (c == 0) {
            poly_log2_.push_back(-std::numeric_limits<double>::infinity());
        } else {
            long e = 0;
            const double mant = mpz_get_d_2exp(&e, c.get_mpz_t());
            poly_log2_.push_back(std::log2(std::fabs(mant)) + static_cast<double>(e));
        }
    }
}

FormValue ArcEvaluator::form_at(const Complex& z) const {
    PrecisionScope scope(bits_);
    if (z.im.to_double() < min_height_) {
        throw std::invalid_argument("ArcEvaluator: point below the supported height");
    }
    const Complex q = q_of(z);
    const Complex delta = delta3_plus_at(z);
    const Complex j = j3_plus_at(z);

    const SeriesValue dr = delta_r_.sum(q);
    const Real dr_scale = max(magnitude_bound(dr.value), dr.max_term);
    Real tol = dr_scale;
    mpfr_mul_2si(tol.get(), tol.get(), -bits_ / 2, MPFR_RNDN);
    if (dr.error > tol) {
        throw InsufficientTruncation("Delta_{3," + std::to_string(form_.decomp.r) + "} series at " +
                                     std::to_string(delta_r_.terms()) + " terms");
    }

    // Horner for F(j), tracking the largest |c_i j^i|.
    const std::size_t d = poly_.size() - 1;
    Complex acc(poly_[d]);
    for (std::size_t i = d; i-- > 0;) {
        acc *= j;
        acc.re += poly_[i];
    }
    const double lj = log2_abs(abs(j));
    double horner_log2 = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= d; ++i) {
        const double term = poly_log2_[i] + (i == 0 ? 0.0 : static_cast<double>(i) * lj);
        horner_log2 = std::max(horner_log2, term);
    }

    const int ell = form_.decomp.ell;
    const Complex delta_pow = pow(delta, static_cast<long>(ell));
    FormValue out;
    out.value = delta_pow * dr.value * acc;
    out.scale = abs(delta_pow) * dr_scale * pow2(horner_log2);
    return out;
}

Real phase(const Real& theta, int k, int m) {
    const Real two_pi = 2 * Real::pi();
    return Real(k) * theta / Real(2) - two_pi * Real(m) * cos(theta) / sqrt(Real(3));
}

ArcSample ArcEvaluator::sample(const Real& theta) const {
    PrecisionScope scope(bits_);
    const int k = form_.decomp.k;
    const int m = form_.m;
    ArcSample s;
    s.theta = theta;
    s.z = arc_point(theta);
    const FormValue fv = form_at(s.z);
    const Real damping = exp(-2 * Real::pi() * Real(m) * sin(theta) / sqrt(Real(3)));
    const Complex w = fv.value * cis(Real(k) * theta / Real(2)) * damping;
    s.h_value = w.re;
    s.scale = fv.scale * damping;
    s.imag_residual = abs(w.im) / s.scale;
    s.alpha = phase(theta, k, m);
    s.two_cos_alpha = 2 * cos(s.alpha);
    return s;
}

ArcSample normalized_value(const basis::BasisForm& b, const Real& theta, int bits) {
    return ArcEvaluator(b, bits).sample(theta);
}

std::vector<ArcSample> sample_grid(const ArcEvaluator& ev, const Real& from, const Real& to, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("sample_grid: need at least two points");
    PrecisionScope scope(ev.bits());
    std::vector<ArcSample> out(static_cast<std::size_t>(grid_points));
    const Real step = (to - from) / Real(grid_points - 1);
    parallel_for(out.size(), [&](std::size_t i) {
        out[i] = ev.sample(from + step * Real(static_cast<long>(i)));
    });
    return out;
}

ArcZeroReport scan_zeros(const ArcEvaluator& ev, int grid_points) {
    if (grid_points < 16) throw std::invalid_argument("scan_zeros: grid must have at least 16 points");
    PrecisionScope scope(ev.bits());
    const auto& f = ev.form();
    ArcZeroReport rep;
    rep.k = f.decomp.k;
    rep.m = f.m;
    rep.s = f.decomp.s;
    rep.t = f.decomp.t;
    rep.expected_count = f.decomp.gap_end() + f.m;
    rep.grid_points = grid_points;
    rep.precision_bits = ev.bits();
    rep.tolerance = 1e-12 * M_PI;

    const Real left = arc_left();
    const Real right = arc_right();
    const Real step = (right - left) / Real(grid_points);

    // Interior nodes theta_i = left + i*step, i = 1 .. grid_points-1.
    const std::size_t n = static_cast<std::size_t>(grid_points - 1);
    std::vector<ArcSample> samples(n);
    parallel_for(n, [&](std::size_t i) { samples[i] = ev.sample(left + step * Real(static_cast<long>(i + 1))); });

    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) worst = std::max(worst, log2_abs(s.imag_residual));
    rep.max_imag_residual_log2 = worst;

    const ArcSample cl = ev.sample(left);
    const ArcSample cr = ev.sample(right);
    const double corner_tol = std::exp2(-ev.bits() / 2.0);
    rep.corner_left_value = std::exp2(log2_abs(cl.h_value) - log2_abs(cl.scale));
    rep.corner_right_value = std::exp2(log2_abs(cr.h_value) - log2_abs(cr.scale));
    rep.corner_left_small = rep.corner_left_value < corner_tol;
    rep.corner_right_small = rep.corner_right_value < corner_tol;

    struct Bracket {
        Real lo;
        Real hi;
        int sign_lo;
    };
    std::vector<Bracket> brackets;
    std::vector<double> exact_hits;
    for (std::size_t i = 0; i < n; ++i) {
        const int si = samples[i].h_value.sign();
        if (si == 0) {
            exact_hits.push_back(samples[i].theta.to_double());
            continue;
        }
        if (i + 1 < n) {
            const int sj = samples[i + 1].h_value.sign();
            if (sj != 0 && sj != si) brackets.push_back({samples[i].theta, samples[i + 1].theta, si});
        }
    }

    const Real tol(rep.tolerance);
    std::vector<double> roots(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t b) {
        Real lo = brackets[b].lo;
        Real hi = brackets[b].hi;
        while (hi - lo > tol) {
            const Real mid = (lo + hi) / Real(2);
            const int sm = ev.sample(mid).h_value.sign();
            if (sm == 0) {
                lo = mid;
                hi = mid;
                break;
            }
            if (sm == brackets[b].sign_lo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots[b] = ((lo + hi) / Real(2)).to_double();
    });

    roots.insert(roots.end(), exact_hits.begin(), exact_hits.end());
    std::sort(roots.begin(), roots.end());
    const double tail_start = f.m >= 1 ? right.to_double() - 12.0 / (25.0 * f.m) : right.to_double();
    for (double r : roots) rep.zeros.push_back({r, f.m >= 1 && r > tail_start});

    const double h = step.to_double();
    bool crowded = false;
    for (std::size_t i = 1; i < roots.size(); ++i) {
        if (roots[i] - roots[i - 1] < 3 * h) crowded = true;
    }
    const int found = static_cast<int>(rep.zeros.size());
    rep.rescan_recommended = crowded || found < rep.expected_count;
    rep.pass = found == rep.expected_count && !rep.rescan_recommended;
    return rep;
}

ArcZeroReport scan_zeros(const basis::BasisForm& b, int grid_points, int bits) {
    return scan_zeros(ArcEvaluator(b, bits), grid_points);
}

J3Profile j3_arc_profile(int grid_points, int bits) {
    if (grid_points < 2) throw std::invalid_argument("j3_arc_profile: need at least two points");
    PrecisionScope scope(bits);
    const Real left = arc_left();
    const Real right = arc_right();
    const Real step = (right - left) / Real(grid_points - 1);
    J3Profile p;
    p.samples.resize(static_cast<std::size_t>(grid_points));
    parallel_for(p.samples.size(), [&](std::size_t i) {
        const Real theta = left + step * Real(static_cast<long>(i));
        const Complex j = j3_plus_at(arc_point(theta));
        p.samples[i] = {theta.to_double(), j.re, abs(j.im)};
    });
    p.left = p.samples.front().value;
    p.right = p.samples.back().value;
    p.monotone = true;
    p.max_imag = Real(0);
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
        p.max_imag = max(p.max_imag, p.samples[i].imag);
        if (i > 0 && !(p.samples[i].value < p.samples[i - 1].value)) p.monotone = false;
    }
    return p;
}

mpq_class valence_audit(const basis::BasisForm& b, const ArcZeroReport& report) {
    const auto& d = b.decomp;
    mpq_class total(b.series.true_valuation());
    total += mpq_class(d.s) / 2;
    total += mpq_class(d.t) / 6;
    total += static_cast<long>(report.zeros.size());
    total -= mpq_class(d.k) / 6;
    total.canonicalize();
    return total;
}

}  // namespace fricke::arc

#include "fricke/bounds.hpp"

#include "fricke/arc.hpp"
#include "fricke/basis.hpp"
#include "fricke/contour.hpp"
#include "fricke/forms.hpp"
#include "fricke/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace fricke::bounds {

namespace {

constexpr int kHeadTerms = 200;
constexpr int kTailRationalBits = 96;

Real ldexp_real(Real x, long e) {
    mpfr_mul_2si(x.get(), x.get(), e, MPFR_RNDN);
    return x;
}

Real dec(const char* s) { return Real(std::string(s)); }
Real pi() { return Real::pi(); }
Real sqrt3() { return sqrt(Real(3)); }
Real split_angle() { return Real(23) / Real(10); }
Real corner_angle() { return Real(5) * pi() / Real(6); }

struct ReferenceForm {
    int k;
    int m;
};
constexpr ReferenceForm kReferenceForms[] = {{0, 23}, {4, 23},  {6, 23},  {8, 24},
                                             {10, 24}, {14, 25}, {12, 41}, {-12, 41}};

BoundReport make(std::string name, const char* printed, Relation rel, Real bound, Real extremum,
                 GridInfo grid = {}) {
    BoundReport r;
    r.name = std::move(name);
    r.printed_value = printed;
    r.relation = rel;
    r.bound_value = std::move(bound);
    r.computed_extremum = std::move(extremum);
    r.grid = grid;
    return r;
}

std::string fmt(const Real& x, int digits = 10) { return x.to_string(digits); }

// Rational x with x >= e^{-2 pi y}.
mpq_class nome_upper(const Real& y) { return exp(-2 * pi() * y).rational_upper(kTailRationalBits); }

// Pentagonal sum bound sum_{n in Z} e^{-c (3n^2 - n)}.
Real theta_sum(const Real& c) {
    Real total(1);
    const Real cutoff = ldexp_real(Real(1), -working_precision() - 8);
    for (long n = 1;; ++n) {
        const Real plus = exp(-c * Real(3 * n * n - n));
        const Real minus = exp(-c * Real(3 * n * n + n));
        total += plus + minus;
        if (plus < cutoff) break;
    }
    return total;
}

// prod_{n>=1} (1 - e^{-c n}).
Real one_minus_product(const Real& c) {
    Real total(1);
    const Real cutoff = ldexp_real(Real(1), -working_precision() - 8);
    for (long n = 1;; ++n) {
        const Real t = exp(-c * Real(n));
        total *= Real(1) - t;
        if (t < cutoff) break;
    }
    return total;
}

Real delta3_upper(const Real& y) {
    return exp(-4 * pi() * y) * pow(theta_sum(pi() * y), 12L) * pow(theta_sum(3 * pi() * y), 12L);
}

// Prefactor e^{-4 pi y_hi}, products at the lowest height y_lo.
Real delta3_lower(const Real& y_lo, const Real& y_hi) {
    return exp(-4 * pi() * y_hi) * pow(one_minus_product(2 * pi() * y_lo), 12L) *
           pow(one_minus_product(6 * pi() * y_lo), 12L);
}

// Points of a theta-segment of the arc or of the line Im tau = y.
std::vector<Complex> arc_points(const Real& from, const Real& to, int n) {
    std::vector<Complex> pts(static_cast<std::size_t>(n));
    const Real step = (to - from) / Real(n - 1);
    parallel_for(pts.size(), [&](std::size_t i) { pts[i] = arc_point(from + step * Real(static_cast<long>(i))); });
    return pts;
}

std::vector<Complex> line_points(const Real& y, int n) {
    std::vector<Complex> pts(static_cast<std::size_t>(n));
    const Real step = Real(1) / Real(n - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = Complex(Real(-1) / Real(2) + step * Real(static_cast<long>(i)), y);
    }
    return pts;
}

template <class F>
std::vector<Real> map_abs(const std::vector<Complex>& pts, F&& fn) {
    std::vector<Real> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { out[i] = abs(fn(pts[i])); });
    return out;
}

Real min_of(const std::vector<Real>& v) { return *std::min_element(v.begin(), v.end()); }
Real max_of(const std::vector<Real>& v) { return *std::max_element(v.begin(), v.end()); }

mpq_class abs_q(const mpq_class& x) { return x < 0 ? mpq_class(-x) : x; }

}  // namespace

const char* to_string(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::Greater: return ">";
        case Relation::Equal: return "=";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Blocked: return "blocked";
    }
    return "?";
}

Real fifth_digit_unit(const std::string& decimal) {
    const double v = std::fabs(std::stod(decimal));
    if (v == 0) return Real(0);
    const int e = static_cast<int>(std::floor(std::log10(v)));
    return Real("1e" + std::to_string(e - 4));
}

void finalize(BoundReport& r) {
    const Real printed(r.printed_value);
    const Real unit = fifth_digit_unit(r.printed_value);
    bool extremum_ok = true;
    switch (r.relation) {
        case Relation::Less:
            r.margin = printed - r.bound_value;
            extremum_ok = r.computed_extremum < printed;
            break;
        case Relation::Greater:
            r.margin = r.bound_value - printed;
            extremum_ok = r.computed_extremum > printed;
            break;
        case Relation::Equal:
            r.margin = unit / Real(2) - abs(r.bound_value - printed);
            break;
    }
    if (r.status != Status::Blocked) {
        r.status = r.margin.sign() > 0 && extremum_ok ? Status::Pass : Status::Fail;
    }
    if (!r.compare_digits || unit.is_zero()) {
        r.reproduced = r.status == Status::Pass;
    } else if (r.relation == Relation::Equal) {
        r.reproduced = r.margin.sign() > 0;
    } else {
        r.reproduced = r.margin.sign() >= 0 && r.margin <= 2 * unit;
    }
}

std::vector<BoundReport> delta3_range(Segment seg, const BoundsConfig& cfg) {
    PrecisionScope scope(cfg.precision_bits);
    const Real s23 = sin(split_angle()) / sqrt3();
    Real y_lo, y_hi;
    std::string tag;
    const char* lower_printed = "";
    const char* upper_printed = "";
    std::vector<Complex> pts;
    double spacing = 0;
    switch (seg) {
        case Segment::ArcLow:
            y_lo = s23;
            y_hi = Real(1) / sqrt3();
            tag = "L4.1(a)";
            lower_printed = "2.8964e-4";
            upper_printed = "1.0258e-2";
            pts = arc_points(pi() / Real(2), split_angle(), cfg.grid_points);
            spacing = (2.3 - M_PI / 2) / (cfg.grid_points - 1);
            break;
        case Segment::Line035:
            y_lo = y_hi = dec("0.35");
            tag = "L4.1(b)";
            lower_printed = "4.3086e-4";
            upper_printed = "5.0415e-2";
            pts = line_points(y_lo, cfg.grid_points);
            spacing = 1.0 / (cfg.grid_points - 1);
            break;
        case Segment::ArcHigh:
            y_lo = Real(1) / (2 * sqrt3());
            y_hi = s23;
            tag = "L5.1(a)";
            lower_printed = "3.4094e-4";
            upper_printed = "0.22521";
            pts = arc_points(split_angle(), corner_angle(), cfg.grid_points);
            spacing = (5 * M_PI / 6 - 2.3) / (cfg.grid_points - 1);
            break;
        case Segment::Line015:
            y_lo = y_hi = dec("0.15");
            tag = "L5.1(b)";
            lower_printed = "7.8764e-6";
            upper_printed = "61.432";
            pts = line_points(y_lo, cfg.grid_points);
            spacing = 1.0 / (cfg.grid_points - 1);
            break;
    }
    const std::vector<Real> vals = map_abs(pts, [](const Complex& z) { return delta3_plus_at(z); });
    const GridInfo grid{cfg.grid_points, spacing, cfg.precision_bits};

    BoundReport lo = make(tag + " lower |Delta_3^+|", lower_printed, Relation::Greater, delta3_lower(y_lo, y_hi),
                          min_of(vals), grid);
    BoundReport up = make(tag + " upper |Delta_3^+|", upper_printed, Relation::Less, delta3_upper(y_lo),
                          max_of(vals), grid);
    if (seg == Segment::ArcLow || seg == Segment::ArcHigh) {
        const std::string ends = "endpoint values " + fmt(vals.front(), 8) + ", " + fmt(vals.back(), 8);
        lo.note = ends;
        up.note = ends;
    }
    finalize(lo);
    finalize(up);
    return {lo, up};
}

Real derivative_bound(const Real& y, int head) {
    const auto pair = forms::eta_quotient_pair(head);
    const Real twelfth = Real(1) / Real(12);
    const Real r3 = sqrt3();
    const Real tpy = 2 * pi() * y;
    Real total(0);
    for (int n = 0; n <= head; ++n) {
        const Real a(abs_q(pair.a[n]));
        const Real b(abs_q(pair.b[n]));
        total += abs(Real(n) - twelfth) * a * exp(-tpy * (Real(n) - twelfth));
        total += r3 * (Real(n) + twelfth) * b * exp(-tpy * (Real(n) + twelfth));
    }
    // sum_{n>=N} (n + c) x^n = x^N ((N + c)/(1 - x) + x/(1 - x)^2), x = 2 e^{-2 pi y}.
    const Real x = 2 * exp(-tpy);
    if (!(x < Real(1))) throw std::invalid_argument("derivative_bound: 2 e^{-2 pi y} must be below 1");
    const long N = head + 1;
    const Real xn = pow(x, N);
    const Real one_minus = Real(1) - x;
    auto tail = [&](const Real& c) { return xn * ((Real(N) + c) / one_minus + x / (one_minus * one_minus)); };
    total += exp(tpy * twelfth) * tail(-twelfth);
    total += r3 * exp(-tpy * twelfth) * tail(twelfth);
    return 2 * pi() * total;
}

std::vector<BoundReport> j3_separation(Section sec, const BoundsConfig& cfg) {
    PrecisionScope scope(cfg.precision_bits);
    const bool four = sec == Section::Four;
    const std::string tag = four ? "L4.1(c)" : "L5.1(c)";
    const Real y = dec(four ? "0.35" : "0.15");
    const Real r3 = sqrt3();

    std::vector<BoundReport> out;

    const Real deriv = derivative_bound(y);
    out.push_back(make(tag + " derivative bound", four ? "4.0200" : "32.023", Relation::Less, deriv, deriv));

    // The proof feeds the printed derivative constant into the slack.
    const Real printed_deriv = dec(four ? "4.0200" : "32.023");
    const Real slack = sqrt(Real(2)) * printed_deriv / Real(4000);
    BoundReport slack_rep =
        make(tag + " Lipschitz slack", four ? "1.4213e-3" : "1.1322e-2", Relation::Less, slack, slack);
    slack_rep.note = "with the computed derivative bound: " + fmt(sqrt(Real(2)) * deriv / Real(4000), 8);
    out.push_back(slack_rep);

    // tau_0 = n/2000 + iy, -1000 <= n <= 1000.
    std::array<Complex, 6> omega;
    for (int k = 0; k < 6; ++k) {
        omega[static_cast<std::size_t>(k)] =
            four ? cis(pi() * Real(k) / Real(3)) : cis(pi() * Real(2 * k + 1) / Real(6));
    }
    const Real used_slack = dec(four ? "1.4213e-3" : "1.1322e-2");
    constexpr int kNodes = 2001;
    std::vector<Real> with_slack(kNodes);
    std::vector<Real> raw(kNodes);
    std::vector<char> slack_ok(kNodes, 1);
    parallel_for(kNodes, [&](std::size_t i) {
        const Complex tau(Real(static_cast<long>(i) - 1000) / Real(2000), y);
        const EtaQuotient e = eta_quotient(tau);
        Real p(1);
        Real q(1);
        for (const auto& w : omega) {
            const Real f = abs(e.a - r3 * w * e.b);
            if (!(f > used_slack)) slack_ok[i] = 0;
            const Real d = abs(f - used_slack);
            p *= d * d;
            q *= f * f;
        }
        with_slack[i] = p;
        raw[i] = q;
    });
    const Real grid_min = min_of(with_slack);
    BoundReport gm = make(tag + " grid minimum", four ? "106.42886" : "6.1224", Relation::Greater, grid_min,
                          min_of(raw), {kNodes, 1.0 / 2000, cfg.precision_bits});
    gm.note = std::string("every factor exceeds the slack: ") +
              (std::all_of(slack_ok.begin(), slack_ok.end(), [](char c) { return c != 0; }) ? "yes" : "no");
    out.push_back(gm);

    // Arc spread between the elliptic point and theta = 23/10; the grid
    // extremum is the largest |j(z) - j(corner)| over that part of the arc.
    const Real j_split = j3_plus_at(arc_point(split_angle())).re;
    const Real j_ref = Real(four ? 66 : -42);
    const Real spread = abs(j_ref - j_split);
    const auto arc =
        four ? arc_points(pi() / Real(2), split_angle(), cfg.grid_points) : arc_points(split_angle(), corner_angle(), cfg.grid_points);
    const std::vector<Real> arc_dist = map_abs(arc, [&](const Complex& z) { return j3_plus_at(z) - Complex(j_ref); });
    const double arc_spacing = (four ? 2.3 - M_PI / 2 : 5 * M_PI / 6 - 2.3) / (cfg.grid_points - 1);
    BoundReport sp = make(tag + " arc spread", four ? "106.01791" : "1.9821", Relation::Less, spread,
                          max_of(arc_dist), {cfg.grid_points, arc_spacing, cfg.precision_bits});
    sp.note = "j_3^+ at theta = 23/10: " + fmt(j_split, 15);
    out.push_back(sp);

    // Net separation; the grid extremum is the distance from j(tau) to the
    // real segment of arc values.
    const Real lo = min(j_ref, j_split);
    const Real hi = max(j_ref, j_split);
    const auto line = line_points(y, kNodes);
    const std::vector<Real> dist = map_abs(line, [&](const Complex& tau) {
        Complex j = j3_plus_at(tau);
        j.re -= max(lo, min(hi, j.re));
        return j;
    });
    out.push_back(make(tag + " net separation", four ? "0.41095" : "4.1403", Relation::Greater, grid_min - spread,
                       min_of(dist), {kNodes, 1.0 / 2000, cfg.precision_bits}));

    for (auto& r : out) finalize(r);
    return out;
}

std::vector<BoundReport> coefficient_bounds(int N) {
    if (N < 1) throw std::invalid_argument("coefficient_bounds: N must be at least 1");
    PrecisionScope scope(128);
    std::vector<BoundReport> out;
    auto exact = [&](std::string name, const char* printed, const mpq_class& worst, long violations,
                     std::string note) {
        BoundReport r;
        r.name = std::move(name);
        r.printed_value = printed;
        r.relation = Relation::Less;
        r.bound_value = Real(worst);
        r.computed_extremum = r.bound_value;
        r.margin = Real(1) - r.bound_value;
        r.grid = {N + 1, 1, 0};
        r.status = violations == 0 ? Status::Pass : Status::Fail;
        r.compare_digits = false;
        r.reproduced = r.status == Status::Pass;
        r.note = std::move(note);
        out.push_back(std::move(r));
    };

    {
        const auto pair = forms::eta_quotient_pair(N);
        mpq_class worst = 0;
        long bad = 0;
        mpz_class pow2 = 1;
        for (int n = 0; n <= N; ++n, pow2 *= 2) {
            for (const auto* s : {&pair.a, &pair.b}) {
                const mpq_class ratio = abs_q((*s)[n]) / mpq_class(pow2);
                worst = std::max(worst, ratio);
                if (ratio > 1) ++bad;
            }
        }
        exact("|a_n|, |b_n| <= 2^n", "1", worst, bad, "max |c_n| / 2^n over n <= " + std::to_string(N));
    }

    std::map<int, std::vector<mpq_class>> s;
    for (int k : forms::kEisensteinWeights) {
        auto& v = s[k];
        for (int n = 0; n <= N; ++n) v.push_back(forms::s_coefficient(k, n));
    }
    {
        mpq_class worst = 0;
        long bad = 0;
        for (const auto& [k, v] : s) {
            for (int n = 0; n <= N; ++n) {
                mpz_class b;
                mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(k));
                const mpq_class ratio = abs_q(v[static_cast<std::size_t>(n)]) / mpq_class(504 * b);
                worst = std::max(worst, ratio);
                if (ratio > 1) ++bad;
            }
        }
        exact("|s_{k,n}| <= 504 (n+1)^k", "1", worst, bad, "k in {4,6,8,10,14}, n <= " + std::to_string(N));
    }
    {
        mpq_class worst = 0;
        long bad = 0;
        const auto& ks = forms::kEisensteinWeights;
        for (std::size_t i = 0; i < std::size(ks); ++i) {
            for (std::size_t j = i; j < std::size(ks); ++j) {
                const auto& u = s[ks[i]];
                const auto& v = s[ks[j]];
                for (int n = 0; n <= N; ++n) {
                    mpq_class t = 0;
                    for (int l = 0; l <= n; ++l) t += u[static_cast<std::size_t>(l)] * v[static_cast<std::size_t>(n - l)];
                    mpz_class b;
                    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(n + 1),
                                  static_cast<unsigned long>(ks[i] + ks[j] + 1));
                    const mpq_class ratio = abs_q(t) / mpq_class(504 * 504 * b);
                    worst = std::max(worst, ratio);
                    if (ratio > 1) ++bad;
                }
            }
        }
        exact("|t_{k1,k2,n}| <= 504^2 (n+1)^{k1+k2+1}", "1", worst, bad,
              "k1 <= k2 in {4,6,8,10,14}, n <= " + std::to_string(N));
    }
    return out;
}

mpq_class power_tail(int p, const mpq_class& x, long start) {
    if (p < 0) throw std::invalid_argument("power_tail: p must be non-negative");
    if (x < 0 || x >= 1) throw std::invalid_argument("power_tail: x must lie in [0, 1)");
    if (start < 0) throw std::invalid_argument("power_tail: start must be non-negative");
    // sum_{n>=start} (n+1)^p x^n = x^start sum_{j>=0} (j + M)^p x^j with M = start + 1,
    // and sum_j j^i x^j = x A_i(x) / (1 - x)^{i+1} with the Eulerian polynomial A_i.
    const mpq_class one_minus = 1 - x;
    std::vector<mpq_class> T(static_cast<std::size_t>(p + 1));
    T[0] = 1 / one_minus;
    std::vector<mpz_class> euler{1};  // A_1
    mpq_class denom = one_minus * one_minus;
    for (int i = 1; i <= p; ++i) {
        if (i > 1) {
            std::vector<mpz_class> next(static_cast<std::size_t>(i));
            for (int m = 0; m < i; ++m) {
                mpz_class v = 0;
                if (m >= 1) v += (i - m) * euler[static_cast<std::size_t>(m - 1)];
                if (m < i - 1) v += (m + 1) * euler[static_cast<std::size_t>(m)];
                next[static_cast<std::size_t>(m)] = v;
            }
            euler = std::move(next);
            denom *= one_minus;
        }
        mpq_class poly = 0;
        mpq_class xm = 1;
        for (const auto& c : euler) {
            poly += mpq_class(c) * xm;
            xm *= x;
        }
        T[static_cast<std::size_t>(i)] = x * poly / denom;
    }
    const mpz_class M = start + 1;
    mpq_class total = 0;
    mpz_class binom = 1;
    for (int i = 0; i <= p; ++i) {
        mpz_class mp;
        mpz_pow_ui(mp.get_mpz_t(), M.get_mpz_t(), static_cast<unsigned long>(p - i));
        total += mpq_class(binom * mp) * T[static_cast<std::size_t>(i)];
        binom = binom * (p - i) / (i + 1);
    }
    mpq_class xs = 1;
    for (long n = 0; n < start; ++n) xs *= x;
    total *= xs;
    total.canonicalize();
    return total;
}

Real delta_r_bound(int r, const Real& y) {
    if (r == 0) return Real(1);
    struct TailRule {
        int power;
        mpq_class factor;
    };
    TailRule rule;
    switch (r) {
        case 4: rule = {4, 504}; break;
        case 6: rule = {6, 504}; break;
        case 8: rule = {9, mpq_class(41, 1728) * 2 * 504 * 504}; break;
        case 10: rule = {11, mpq_class(61, 432) * 2 * 504 * 504}; break;
        case 14: rule = {15, mpq_class(22427, 272160) * 2 * 504 * 504}; break;
        default: throw std::invalid_argument("delta_r_bound: r must be one of 0, 4, 6, 8, 10, 14");
    }
    rule.factor.canonicalize();
    const auto f = forms::form_cache().get({forms::FormKind::Delta3R, r}, kHeadTerms);
    const mpq_class x = nome_upper(y);
    mpq_class head = 0;
    mpq_class xn = 1;
    for (int n = 0; n <= kHeadTerms; ++n) {
        head += abs_q(f->series[n]) * xn;
        xn *= x;
    }
    const mpq_class total = head + rule.factor * power_tail(rule.power, x, kHeadTerms + 1);
    Real out(total);
    mpfr_nextabove(out.get());
    return out;
}

std::vector<BoundReport> delta_r_sup(Section sec, const BoundsConfig& cfg) {
    PrecisionScope scope(cfg.precision_bits);
    const bool four = sec == Section::Four;
    const std::string tag = four ? "L4.1(d)" : "L5.1(d)";
    const Real yz = four ? sin(split_angle()) / sqrt3() : Real(1) / (2 * sqrt3());
    const Real yt = dec(four ? "0.35" : "0.15");

    const auto arc = four ? arc_points(pi() / Real(2), split_angle(), cfg.grid_points)
                          : arc_points(split_angle(), corner_angle(), cfg.grid_points);
    const auto line = line_points(yt, cfg.grid_points);
    const double arc_spacing = (four ? 2.3 - M_PI / 2 : 5 * M_PI / 6 - 2.3) / (cfg.grid_points - 1);

    std::map<int, Real> bz, bt, sz, st;
    for (int r : forms::kResidueWeights) {
        bz[r] = delta_r_bound(r, yz);
        bt[r] = delta_r_bound(r, yt);
        if (r == 0) {
            sz[r] = st[r] = Real(1);
            continue;
        }
        const int n = terms_needed(yt.to_double(), cfg.precision_bits / 2 + 32, 15);
        const auto f = forms::form_cache().get({forms::FormKind::Delta3R, r}, n);
        const NumericSeries ns(f->series, cfg.precision_bits);
        auto value = [&](const Complex& z) { return ns.sum(q_of(z)).value; };
        sz[r] = max_of(map_abs(arc, value));
        st[r] = max_of(map_abs(line, value));
    }

    std::vector<BoundReport> out;
    if (four) {
        struct Printed {
            int r;
            const char* z;
            const char* tau;
        };
        constexpr Printed printed[] = {{4, "3.8757", "7.8622"},   {6, "6.7891", "21.157"},
                                       {8, "0.10414", "0.24233"}, {10, "0.26974", "0.81140"},
                                       {14, "0.54192", "3.0481"}};
        for (const auto& p : printed) {
            const std::string r = std::to_string(p.r);
            out.push_back(make(tag + " |Delta_{3," + r + "}(z)|", p.z, Relation::Less, bz[p.r], sz[p.r],
                               {cfg.grid_points, arc_spacing, cfg.precision_bits}));
            out.push_back(make(tag + " |Delta_{3," + r + "}(tau)|", p.tau, Relation::Less, bt[p.r], st[p.r],
                               {cfg.grid_points, 1.0 / (cfg.grid_points - 1), cfg.precision_bits}));
        }
    }

    Real worst_bound(0), worst_grid(0);
    int worst_r = 0;
    for (int r : forms::kResidueWeights) {
        const Real b = bz[r] * bt[14 - r];
        if (b > worst_bound) {
            worst_bound = b;
            worst_r = r;
        }
        worst_grid = max(worst_grid, sz[r] * st[14 - r]);
    }
    BoundReport pair = make(tag + " pairing |Delta_{3,r}(z)||Delta_{3,14-r}(tau)|", four ? "3.1448" : "1.8006e3",
                            Relation::Less, worst_bound, worst_grid,
                            {cfg.grid_points, arc_spacing, cfg.precision_bits});
    pair.note = "worst r = " + std::to_string(worst_r);
    if (four) pair.note += "; the printed value is the product of the rounded constants 3.8757 x 0.81140";
    out.push_back(pair);

    for (auto& r : out) finalize(r);
    return out;
}

std::vector<BoundReport> correction_bounds(const BoundsConfig& cfg) {
    PrecisionScope scope(cfg.precision_bits);
    const Real corner = corner_angle();
    const Real theta1 = corner - Real(12) / Real(575);
    const contour::Envelope lb = contour::envelope_derivative_lower_bounds();
    const int n = cfg.grid_points;

    // Derivatives over the short window near the corner.
    std::vector<contour::Envelope> near(static_cast<std::size_t>(n));
    const Real step = (corner - theta1) / Real(n - 1);
    parallel_for(near.size(), [&](std::size_t i) {
        near[i] = contour::envelope_derivatives(theta1 + step * Real(static_cast<long>(i)));
    });
    Real gmin = near.front().g, hmin = near.front().h;
    for (const auto& e : near) {
        gmin = min(gmin, e.g);
        hmin = min(hmin, e.h);
    }
    const GridInfo near_grid{n, (12.0 / 575) / (n - 1), cfg.precision_bits};

    std::vector<BoundReport> out;
    out.push_back(make("L5.1(e) g' lower bound", "2.4233", Relation::Greater, lb.g, gmin, near_grid));
    out.push_back(make("L5.1(f) h' lower bound", "4.2632", Relation::Greater, lb.h, hmin, near_grid));

    // Positivity over the whole window (23/10, 5pi/6).
    std::vector<contour::Envelope> wide(static_cast<std::size_t>(n));
    const Real wstep = (corner - split_angle()) / Real(n - 1);
    parallel_for(wide.size(), [&](std::size_t i) {
        wide[i] = contour::envelope_derivatives(split_angle() + wstep * Real(static_cast<long>(i)));
    });
    Real wmin = min(wide.front().g, wide.front().h);
    for (const auto& e : wide) wmin = min(wmin, min(e.g, e.h));
    BoundReport mono = make("L5.1(e,f) g', h' > 0 on (23/10, 5pi/6)", "0", Relation::Greater, wmin, wmin,
                            {n, (5 * M_PI / 6 - 2.3) / (n - 1), cfg.precision_bits});
    mono.compare_digits = false;
    out.push_back(mono);

    // Mean-value constants and the resulting bounds, for every m from 23 to
    // 22 + grid_points: c <= m (1 - g(5pi/6 - 12/(25m))) and 2 g(...)^m.
    const int m_count = n;
    std::vector<contour::Envelope> per_m_c(static_cast<std::size_t>(m_count));
    std::vector<contour::Envelope> per_m_sup(static_cast<std::size_t>(m_count));
    parallel_for(per_m_c.size(), [&](std::size_t i) {
        const long m = 23 + static_cast<long>(i);
        const contour::Envelope e = contour::envelope_functions(corner - Real(12) / (Real(25) * Real(m)));
        per_m_c[i] = {Real(m) * (Real(1) - e.g), Real(m) * (Real(1) - e.h)};
        per_m_sup[i] = {2 * pow(e.g, m), 2 * pow(e.h, m)};
    });
    Real cg = per_m_c.front().g, ch = per_m_c.front().h, bg(0), bh(0);
    for (int i = 0; i < m_count; ++i) {
        cg = min(cg, per_m_c[static_cast<std::size_t>(i)].g);
        ch = min(ch, per_m_c[static_cast<std::size_t>(i)].h);
        bg = max(bg, per_m_sup[static_cast<std::size_t>(i)].g);
        bh = max(bh, per_m_sup[static_cast<std::size_t>(i)].h);
    }
    const GridInfo m_grid{m_count, 1, cfg.precision_bits};
    const Real frac = Real(12) / Real(25);
    out.push_back(make("L5.1(e) mean-value constant for g", "1.1631", Relation::Greater, frac * dec("2.4233"), cg,
                       m_grid));
    out.push_back(make("L5.1(f) mean-value constant for h", "2.0463", Relation::Greater, frac * dec("4.2632"), ch,
                       m_grid));
    out.push_back(make("L5.1(e) |B_{k,m}|", "0.62504", Relation::Less, 2 * exp(-dec("1.1631")), bg, m_grid));
    out.push_back(make("L5.1(f) |C_{k,m}|", "0.25843", Relation::Less, 2 * exp(-dec("2.0463")), bh, m_grid));
    out[3].note = out[4].note = "m from 23 to " + std::to_string(22 + m_count);
    out[5].note = out[6].note = "sup over m from 23 to " + std::to_string(22 + m_count) + " of 2 (envelope)^m";

    for (auto& r : out) finalize(r);
    return out;
}

std::vector<BoundReport> prop24_aggregate(Part part, EllSign sign, const std::vector<BoundReport>* verified) {
    PrecisionScope scope(256);
    std::vector<BoundReport> out;
    auto add = [&](std::string name, const char* printed, Relation rel, const Real& v) {
        out.push_back(make(std::move(name), printed, rel, v, v));
    };
    if (part == Part::A) {
        const Real c4 = sin(split_angle()) / sqrt3() - dec("0.35");
        const Real final_term = exp(-36 * pi() * c4) * dec("3.1448") / (dec("4.3086e-4") * dec("0.41095"));
        if (sign == EllSign::NonNegative) {
            add("P2.4(a) l>=0 ratio", "0.68936", Relation::Less,
                exp(-14 * pi() * c4) * dec("1.0258e-2") / dec("4.3086e-4"));
            add("P2.4(a) l>=0 bound", "1.9674", Relation::Less, final_term);
        } else {
            add("P2.4(a) l<0 ratio", "0.66589", Relation::Less,
                exp(-22 * pi() * c4) * dec("5.0415e-2") / dec("2.8964e-4"));
            add("P2.4(a) l<0 constant", "1.9674", Relation::Less, final_term);
            add("P2.4(a) l<0 bound", "1.3101", Relation::Less, dec("0.66589") * dec("1.9674"));
        }
    } else {
        const Real c5 = Real(1) / (2 * sqrt3()) - dec("0.15");
        const Real final_term = exp(-46 * pi() * c5) * dec("1.8006e3") / (dec("7.8764e-6") * dec("4.1403"));
        const Real bc = dec("0.62504") + dec("0.25843");
        const char* s = sign == EllSign::NonNegative ? "l>=0" : "l<0";
        if (sign == EllSign::NonNegative) {
            add(std::string("P2.4(b) ") + s + " ratio", "4.4145e-3", Relation::Less,
                exp(-36 * pi() * c5) * dec("0.22521") / dec("7.8764e-6"));
        } else {
            add(std::string("P2.4(b) ") + s + " ratio", "2.7819e-2", Relation::Less,
                exp(-36 * pi() * c5) * dec("61.432") / dec("3.4094e-4"));
        }
        add(std::string("P2.4(b) ") + s + " integral constant", "0.10931", Relation::Less, final_term);
        add(std::string("P2.4(b) ") + s + " B + C", "0.88347", Relation::Equal, bc);
        if (sign == EllSign::NonNegative) {
            // Printed as the value of 0.10931 + 0.88347, which is 0.99278; the
            // printed figure is still an upper bound, so it is checked as one.
            add(std::string("P2.4(b) ") + s + " bound", "0.99728", Relation::Less, dec("0.10931") + dec("0.88347"));
            out.back().note = "printed as equal to 0.10931 + 0.88347 = 0.99278";
        } else {
            add(std::string("P2.4(b) ") + s + " bound", "0.88652", Relation::Less,
                dec("2.7819e-2") * dec("0.10931") + dec("0.88347"));
        }
    }
    bool blocked = false;
    if (verified) {
        blocked = std::any_of(verified->begin(), verified->end(),
                              [](const BoundReport& r) { return r.status != Status::Pass; });
    }
    for (auto& r : out) {
        if (blocked) {
            r.status = Status::Blocked;
            r.note = "a lemma bound feeding this chain did not pass";
        }
        finalize(r);
    }
    return out;
}

BoundReport prop24_direct(Part part, int k, int m, int grid_points, int bits) {
    PrecisionScope scope(bits);
    const basis::BasisForm f = basis::build(k, m);
    const arc::ArcEvaluator ev(f, bits);
    const Real from = part == Part::A ? pi() / Real(2) : split_angle();
    const Real to = part == Part::A ? split_angle() : corner_angle() - Real(12) / (Real(25) * Real(m));
    if (!(from < to)) throw std::invalid_argument("prop24_direct: empty theta window for this m");
    const auto samples = arc::sample_grid(ev, from, to, grid_points);
    Real worst(0);
    for (const auto& s : samples) worst = max(worst, abs(s.h_value - s.two_cos_alpha));

    const int ell = f.decomp.ell;
    const int threshold = part == Part::A ? 9 * std::abs(ell) - 2 * ell + 18 : 18 * std::abs(ell) + 23;
    char name[96];
    std::snprintf(name, sizeof name, "P2.4(%c) direct f_{%d,%d}", part == Part::A ? 'a' : 'b', k, m);
    BoundReport r = make(name, part == Part::A ? "1.9674" : "0.99728", Relation::Less, worst, worst,
                         {grid_points, (to - from).to_double() / (grid_points - 1), bits});
    r.compare_digits = false;
    r.note = "m threshold " + std::to_string(threshold) + (m >= threshold ? " met" : " not met");
    finalize(r);
    return r;
}

std::vector<BoundReport> run_suite(Suite suite, const BoundsConfig& cfg) {
    std::vector<BoundReport> out;
    auto append = [&](std::vector<BoundReport> v) {
        for (auto& r : v) out.push_back(std::move(r));
    };
    const bool all = suite == Suite::All;
    if (all || suite == Suite::Lemma41) {
        append(delta3_range(Segment::ArcLow, cfg));
        append(delta3_range(Segment::Line035, cfg));
        append(j3_separation(Section::Four, cfg));
        append(delta_r_sup(Section::Four, cfg));
        append(coefficient_bounds(kHeadTerms));
    }
    if (all || suite == Suite::Lemma51) {
        append(delta3_range(Segment::ArcHigh, cfg));
        append(delta3_range(Segment::Line015, cfg));
        append(j3_separation(Section::Five, cfg));
        append(delta_r_sup(Section::Five, cfg));
        append(correction_bounds(cfg));
    }
    if (all || suite == Suite::Prop24) {
        const std::vector<BoundReport> lemmas = out;
        const std::vector<BoundReport>* feed = all ? &lemmas : nullptr;
        append(prop24_aggregate(Part::A, EllSign::NonNegative, feed));
        append(prop24_aggregate(Part::A, EllSign::Negative, feed));
        append(prop24_aggregate(Part::B, EllSign::NonNegative, feed));
        append(prop24_aggregate(Part::B, EllSign::Negative, feed));
        const int bits = std::max(cfg.precision_bits, arc::kDefaultBits);
        const int grid = std::max(16, cfg.grid_points - 1);
        for (Part part : {Part::A, Part::B}) {
            for (const auto& f : kReferenceForms) out.push_back(prop24_direct(part, f.k, f.m, grid, bits));
        }
    }
    return out;
}

bool all_pass(const std::vector<BoundReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.status == Status::Pass; });
}

}  // namespace fricke::bounds

// End-to-end acceptance checks, one per numbered criterion. Each prints a
// single PASS/FAIL line; details of individual failures go to stderr.

#include "fricke/arc.hpp"
#include "fricke/basis.hpp"
#include "fricke/bounds.hpp"
#include "fricke/contour.hpp"
#include "fricke/forms.hpp"
#include "fricke/qseries.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace fricke;

namespace {

struct KM {
    int k, m;
};

constexpr KM kZeroForms[] = {{0, 23}, {4, 23}, {6, 23}, {8, 24}, {10, 24}, {14, 25}, {12, 41}, {-12, 41}};
constexpr KM kRealnessForms[] = {{0, 23}, {8, 24}, {12, 41}, {-12, 41}};

// Collects failure messages; a criterion passes when none were recorded.
class Tally {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) {
            failures_.push_back(what);
            std::cerr << "  failed: " << what << "\n";
        }
    }
    bool ok() const { return failures_.empty(); }
    std::string summary() const {
        std::ostringstream s;
        s << checks_ - failures_.size() << "/" << checks_ << " checks";
        return s.str();
    }

private:
    int checks_ = 0;
    std::vector<std::string> failures_;
};

std::string label(const KM& f) { return "f_{" + std::to_string(f.k) + "," + std::to_string(f.m) + "}"; }

void special_values(Tally& t) {
    PrecisionScope scope(256);
    const Real tol("1e-20");
    const Complex at_i = j3_plus_at(arc_point(Real::pi() / Real(2)));
    const Complex at_rho = j3_plus_at(arc_point(Real(5) * Real::pi() / Real(6)));
    t.expect(abs(at_i - Complex(Real(66))) < tol, "j(i/sqrt3) = 66, got " + at_i.re.to_string(25));
    t.expect(abs(at_rho - Complex(Real(-42))) < tol, "j(rho_3) = -42, got " + at_rho.re.to_string(25));
}

void basis_structure(Tally& t) {
    for (int k : {-12, 0, 4, 6, 8, 10, 12, 14}) {
        const auto d = basis::decompose(k);
        const std::set<int> ms = {d.min_m(), d.min_m() + 1, d.min_m() + 2, 10, 23};
        for (int m : ms) {
            const auto b = basis::build(k, m);
            const std::string name = label({k, m});
            t.expect(b.degree() == d.gap_end() + m, name + " degree");
            t.expect(b.poly.back() == 1, name + " monic");
            bool gap = b.series[-m] == 1 && b.series.true_valuation() == -m;
            for (int n = -m + 1; n <= d.gap_end(); ++n) gap = gap && b.series[n] == 0;
            t.expect(gap, name + " expansion q^{-m} + O(q^{gap+1})");
            t.expect(b.series.is_integral(), name + " integral coefficients");
            t.expect(basis::uniqueness_check(b), name + " uniqueness");
        }
    }
}

void normalization(Tally& t) {
    const int N = 50;
    const auto d14 = forms::delta3_r(14, N).series;
    for (int r : forms::kResidueWeights) {
        const auto f = forms::delta3_r(r, N).series;
        const int eps = forms::cusp_dimension(r);
        t.expect(f.true_valuation() == eps && f[eps] == 1, "Delta_{3," + std::to_string(r) + "} = q^eps + ...");
        t.expect(f * forms::delta3_r(14 - r, N).series == d14,
                 "Delta_{3," + std::to_string(r) + "} Delta_{3," + std::to_string(14 - r) + "} = Delta_{3,14}");
    }
}

void realness(Tally& t) {
    const Real limit = pow(Real(2), -384L);
    for (const KM& f : kRealnessForms) {
        const arc::ArcEvaluator ev(basis::build(f.k, f.m), 768);
        PrecisionScope scope(768);
        const auto samples = arc::sample_grid(ev, Real::pi() / Real(2), Real(5) * Real::pi() / Real(6), 4000);
        Real worst(0);
        for (const auto& s : samples) worst = max(worst, s.imag_residual);
        t.expect(worst < limit, label(f) + " imaginary residual " + worst.to_string(4));
    }
}

void zero_counts(Tally& t) {
    for (const KM& f : kZeroForms) {
        const auto b = basis::build(f.k, f.m);
        const auto rep = arc::scan_zeros(b, 4000, 768);
        const int expected = b.decomp.gap_end() + f.m;
        t.expect(static_cast<int>(rep.zeros.size()) == expected,
                 label(f) + " has " + std::to_string(rep.zeros.size()) + " arc zeros, expected " +
                     std::to_string(expected));
        t.expect(rep.pass, label(f) + " scan report");
        const mpq_class audit = arc::valence_audit(b, rep);
        t.expect(audit == 0, label(f) + " valence audit " + audit.get_str());
    }
}

void direct_inequalities(Tally& t) {
    for (auto part : {bounds::Part::A, bounds::Part::B}) {
        for (const KM& f : kZeroForms) {
            const auto r = bounds::prop24_direct(part, f.k, f.m);
            t.expect(r.status == bounds::Status::Pass,
                     r.name + ": max " + r.bound_value.to_string(8) + " against " + r.printed_value);
        }
    }
}

void lemma_constants(Tally& t) {
    for (auto suite : {bounds::Suite::Lemma41, bounds::Suite::Lemma51}) {
        for (const auto& r : bounds::run_suite(suite)) {
            const std::string line = r.name + " " + bounds::to_string(r.relation) + " " + r.printed_value +
                                     ": computed " + r.bound_value.to_string(8) + ", grid " +
                                     r.computed_extremum.to_string(8);
            t.expect(r.status == bounds::Status::Pass, line + " (status " + bounds::to_string(r.status) + ")");
            t.expect(r.reproduced, line + " (not reproduced to 5 digits)");
        }
    }
}

void contour_identity(Tally& t) {
    struct Point {
        double theta;
        contour::Regime regime;
    };
    const Point points[] = {{1.75, contour::Regime::Low}, {2.2, contour::Regime::Low}, {2.45, contour::Regime::High}};
    for (const KM f : {KM{0, 23}, KM{4, 23}}) {
        for (const Point& p : points) {
            PrecisionScope scope(256);
            const auto rep = contour::identity_check(Real(p.theta), f.k, f.m, p.regime);
            std::ostringstream what;
            what << label(f) << " at theta " << p.theta << ": residual " << rep.residual.to_string(4);
            t.expect(rep.residual < Real("1e-10"), what.str());
            if (p.regime == contour::Regime::High) {
                t.expect(!rep.B.is_zero() && !rep.C.is_zero(), label(f) + " high regime carries B and C");
            }
        }
    }
}

void aggregates(Tally& t) {
    using bounds::EllSign;
    using bounds::Part;
    for (auto [part, sign] : {std::pair{Part::A, EllSign::NonNegative}, std::pair{Part::A, EllSign::Negative},
                              std::pair{Part::B, EllSign::NonNegative}, std::pair{Part::B, EllSign::Negative}}) {
        for (const auto& r : bounds::prop24_aggregate(part, sign)) {
            const std::string line = r.name + " " + r.printed_value + ": computed " + r.bound_value.to_string(8);
            t.expect(r.status == bounds::Status::Pass, line + " (status " + bounds::to_string(r.status) + ")");
            t.expect(r.reproduced, line + " (not reproduced to 5 digits)");
        }
    }
}

LaurentSeries random_series(std::mt19937& rng, int N) {
    std::uniform_int_distribution<int> val(-2, 2), num(-20, 20), den(1, 6);
    const int v = val(rng);
    std::vector<mpq_class> c;
    for (int n = v; n <= N; ++n) {
        mpq_class x(num(rng), den(rng));
        x.canonicalize();
        c.push_back(x);
    }
    return LaurentSeries(v, std::move(c), N);
}

bool agree(const LaurentSeries& x, const LaurentSeries& y) {
    const int n = std::min(x.trunc_order(), y.trunc_order());
    return x.truncated(n) == y.truncated(n);
}

void properties(Tally& t) {
    std::mt19937 rng(1729);
    bool ring = true, sound = true;
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_series(rng, 16), b = random_series(rng, 16), c = random_series(rng, 16);
        ring = ring && a + b == b + a && a * b == b * a && agree((a * b) * c, a * (b * c)) &&
               agree(a * (b + c), a * b + a * c) && (a - a).is_zero();
        // Coefficients of a product must not change when the inputs are
        // extended past their truncation order.
        const auto longer_a = LaurentSeries(a.valuation(), [&] {
            std::vector<mpq_class> v(a.coeffs().begin(), a.coeffs().end());
            for (int i = 0; i < 5; ++i) v.emplace_back(i + 1);
            return v;
        }(), 21);
        sound = sound && (longer_a * b).truncated((a * b).trunc_order()) == a * b;
    }
    t.expect(ring, "q-series ring axioms on 200 random triples");
    t.expect(sound, "truncation soundness on 200 random pairs");

    const auto pair = forms::eta_quotient_pair(200);
    bool growth = true;
    mpz_class bound = 1;
    for (int n = 0; n <= 200; ++n, bound *= 2) growth = growth && abs(pair.a[n]) <= bound && abs(pair.b[n]) <= bound;
    t.expect(growth, "|a_n|, |b_n| <= 2^n for n <= 200");

    for (const auto& r : bounds::coefficient_bounds(200)) t.expect(r.status == bounds::Status::Pass, r.name);
    for (const auto& r : bounds::correction_bounds()) {
        if (r.printed_value == "0.62504" || r.printed_value == "0.25843") continue;  // lemma constants, criterion 7
        t.expect(r.status == bounds::Status::Pass, r.name + " against " + r.printed_value);
    }
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Tally&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "special values of the Hauptmodul", special_values},
        {2, "exact basis structure", basis_structure},
        {3, "Delta_{3,r} normalization and product identity", normalization},
        {4, "realness on the arc at 768 bits", realness},
        {5, "arc zero counts and valence audit", zero_counts},
        {6, "direct arc inequalities", direct_inequalities},
        {7, "lemma constants", lemma_constants},
        {8, "contour identity", contour_identity},
        {9, "aggregation chains", aggregates},
        {10, "property suite", properties},
    };

    bool all = true;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        Tally t;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(t);
        } catch (const std::exception& e) {
            t.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (t.ok() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << t.summary()
                  << ", " << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
        all = all && t.ok();
    }
    return all ? 0 : 1;
}

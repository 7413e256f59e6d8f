// Acceptance gate: one line per criterion, every tolerance pinned in code.
// Exits nonzero when any criterion fails.

#include "segspec/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <span>

using namespace segspec;

namespace {

int g_failures = 0;
std::vector<std::string> g_lines;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& what, bool pass, const std::string& detail = "") {
    std::string line = std::string(pass ? "[PASS]" : "[FAIL]") + " criterion " +
                       std::to_string(criterion) + ": " + what;
    if (!detail.empty()) line += " (" + detail + ")";
    std::cout << line << "\n" << std::flush;
    g_lines.push_back(line);
    if (!pass) ++g_failures;
}

ExactScalar rat(long p, long q = 1) { return ExactScalar(Rational(p, q)); }
Vec pt(ExactScalar x, ExactScalar y) { return Vec(std::move(x), std::move(y)); }
Vec pt1(ExactScalar x) { return Vec(std::vector<ExactScalar>{std::move(x)}); }

Measure cross_m(ExactScalar t1, ExactScalar t2, ExactScalar T1, ExactScalar T2) {
    return CrossConfig(std::move(t1), std::move(t2), std::move(T1), std::move(T2)).measure();
}

Measure two_intervals_1d(long gap) {
    return Measure::segments_only(
        1, {SegmentPiece{pt1(rat(0)), pt1(rat(1)), rat(1, 2)},
            SegmentPiece{pt1(rat(1 + gap)), pt1(rat(2 + gap)), rat(1, 2)}});
}

// ---------------------------------------------------------------------------

void criterion_1_truth_table() {
    Timer timer;
    int wrong = 0;
    auto expect_cross = [&](ExactScalar t1, ExactScalar t2, ExactScalar T1, ExactScalar T2,
                            bool spectral) {
        if (classify_cross(CrossConfig(t1, t2, T1, T2)).spectral != spectral) ++wrong;
    };
    auto expect_collinear = [&](ExactScalar l1, ExactScalar l2, ExactScalar gap, bool spectral) {
        if (classify_collinear(l1, l2, gap).spectral != spectral) ++wrong;
    };

    expect_cross(0, 0, 1, 1, true);
    expect_cross(rat(-1, 2), rat(-1, 2), 1, 1, false);         // symmetric center
    expect_cross(rat(3, 10), rat(3, 10), 1, 1, false);         // diff 0, sum not integral
    expect_cross(rat(-3, 10), rat(-7, 10), 1, 1, false);       // sum -1, diff not integral
    expect_cross(ExactScalar::sqrt2(), ExactScalar::sqrt2(), 1, 1, false);  // irrational sum
    expect_cross(1, 0, 1, 1, true);                            // both conditions
    expect_cross(0, 0, rat(3, 2), rat(1, 2), true);
    expect_cross(1, 0, rat(3, 2), rat(1, 2), false);
    expect_collinear(1, 1, 2, true);
    expect_collinear(1, 1, rat(3, 2), false);
    expect_collinear(rat(3, 2), rat(1, 2), 2, true);
    expect_collinear(rat(3, 2), rat(1, 2), 1, false);
    expect_collinear(1, 1, 0, true);

    // Parallel pairs are always spectral.
    SegmentPiece p1{pt(rat(0), rat(0)), pt(rat(1), rat(0)), rat(1, 2)};
    SegmentPiece p2{pt(rat(2), rat(3)), pt(rat(3), rat(3)), rat(1, 2)};
    if (!classify_two_segments(TwoSegmentInput(p1, p2)).spectral) ++wrong;

    // The (0,0,3/2,1/2) spectrum is (1/2) Z (1,-1).
    auto specs = cross_line_spectrum(CrossConfig(0, 0, rat(3, 2), rat(1, 2)));
    bool lattice_ok = specs.size() == 1 && specs[0].offsets().size() == 1 &&
                      specs[0].lattice()[0] == pt(rat(1, 2), rat(-1, 2));
    if (!lattice_ok) ++wrong;

    double elapsed = timer.seconds();
    report(1, "classifier truth table (14 exact verdicts)", wrong == 0 && elapsed < 1.0,
           std::to_string(14 - wrong) + "/14 correct, " + std::to_string(elapsed) + " s");
}

struct Case {
    std::string name;
    Measure measure;
    SpectrumSpec spectrum;
};

std::vector<Case> verified_cases() {
    std::vector<Case> cases;
    for (auto [name, cfg] : {std::make_pair("cross(0,0,1,1)", CrossConfig(0, 0, 1, 1)),
                             std::make_pair("cross(1,0,1,1)", CrossConfig(1, 0, 1, 1)),
                             std::make_pair("cross(0,0,3/2,1/2)",
                                            CrossConfig(0, 0, rat(3, 2), rat(1, 2)))}) {
        int idx = 0;
        for (const auto& s : cross_line_spectrum(cfg))
            cases.push_back({std::string(name) + "#" + std::to_string(idx++), cfg.measure(), s});
    }
    BuiltinExample pair = builtin_examples("parallel-pair");
    for (size_t i = 0; i < pair.spectra.size(); ++i)
        cases.push_back({"parallel-pair#" + std::to_string(i), pair.measure, pair.spectra[i]});
    for (long gap : {1, 2}) {
        auto spec = two_interval_spectrum_1d(1, 1, rat(gap)).to_spectrum();
        cases.push_back({"two-interval gap " + std::to_string(gap), two_intervals_1d(gap), spec});
    }
    BuiltinExample th_par = builtin_examples("th-parallel");
    cases.push_back({"th-parallel", th_par.measure, th_par.spectra[0]});
    BuiltinExample th_l = builtin_examples("th-L");
    cases.push_back({"th-L", th_l.measure, th_l.spectra[0]});
    return cases;
}

void criteria_2_3_4_orthogonality_bessel_completeness() {
    Timer ortho_timer;
    auto cases = verified_cases();
    int ortho_bad = 0;
    std::string first_bad;
    for (const auto& c : cases) {
        auto rep = check_orthogonality(c.measure, c.spectrum, 50.0, 1e-10);
        if (rep.verdict != Verdict::Pass) {
            ++ortho_bad;
            if (first_bad.empty()) first_bad = c.name;
        }
    }
    double ortho_elapsed = ortho_timer.seconds();
    report(2, "zero orthogonality violations up to |lambda| <= 50 at tol 1e-10",
           ortho_bad == 0 && ortho_elapsed < 30.0,
           std::to_string(cases.size()) + " spectra, " + std::to_string(ortho_elapsed) + " s" +
               (first_bad.empty() ? "" : ", first failure " + first_bad));

    // Criterion 3: Bessel cap on an 8x8 grid at R in {50, 200, 500}, and
    // criterion 4 completeness levels on the same sweep.
    bool bessel_ok = true, cross_complete = true, interval_complete = true;
    double bessel_worst = 0.0;
    for (const auto& c : cases) {
        auto grid = unit_grid(c.measure.dim(), c.measure.dim() == 2 ? 8 : 8);
        auto rep = completeness_curve(c.measure, c.spectrum, grid, {50.0, 200.0, 500.0});
        bessel_worst = std::max(bessel_worst, rep.bessel_max);
        if (rep.bessel_max > 1.0 + 1e-9) bessel_ok = false;
        for (const auto& cs : rep.completeness_samples) {
            if (c.name == "cross(0,0,1,1)#0" && cs.radius == 500.0 && cs.sum < 0.99)
                cross_complete = false;
            if (c.name.rfind("two-interval", 0) == 0 && cs.radius == 200.0 && cs.sum < 0.995)
                interval_complete = false;
        }
    }
    report(3, "Bessel invariant S <= 1 + 1e-9 on the 8x8 grid at R in {50,200,500}", bessel_ok,
           "max S = " + std::to_string(bessel_worst));
    report(4, "completeness: cross S(x,500) >= 0.99, two-interval S(x,200) >= 0.995",
           cross_complete && interval_complete);
}

void criterion_5_nonspectral_witness() {
    Measure sym = cross_m(rat(-1, 2), rat(-1, 2), 1, 1);
    SpectrumSpec candidate(2, {pt(rat(0), rat(0)), pt(rat(1, 2), rat(-1, 2))},
                           {pt(rat(1), rat(-1))});
    auto rep = check_orthogonality(sym, candidate, 50.0, 1e-10);
    bool witness = false;
    for (const auto& v : rep.violations) {
        Vec d = v.lambda - v.lambda_prime;
        bool at_half = d == pt(rat(1, 2), rat(-1, 2)) || d == pt(rat(-1, 2), rat(1, 2));
        if (at_half && std::abs(v.value - 2.0 / std::numbers::pi) <= 1e-12) witness = true;
    }

    SpectrumSpec diagonal(2, {pt(rat(0), rat(0))}, {pt(rat(1), rat(-1))});
    auto diag_ortho = check_orthogonality(sym, diagonal, 50.0, 1e-10);
    auto plateau = completeness_curve(sym, diagonal, {{0.25, 0.25}}, {100.0, 250.0, 500.0});
    double analytic = 0.5 * (1.0 + 2.0 / std::numbers::pi);
    bool plateau_ok = diag_ortho.verdict == Verdict::Pass;
    for (const auto& cs : plateau.completeness_samples) {
        if (cs.sum >= 0.9 || std::abs(cs.sum - analytic) > 0.01) plateau_ok = false;
    }
    report(5, "symmetric cross: 2/pi violation at (1/2,-1/2) and plateau at (1/2)(1+2/pi)",
           rep.verdict == Verdict::Fail && witness && plateau_ok);
}

void criterion_6_obstructions() {
    BuiltinExample th_l = builtin_examples("th-L");
    bool empty_scan = injectivity_scan(th_l.measure).empty();

    BuiltinExample th_par = builtin_examples("th-parallel");
    auto feas = line_spectrum_feasibility(th_par.measure);
    bool incommensurable = feas.status == FeasibilityStatus::IncommensurableGaps &&
                           feas.certificate.has_value() &&
                           *feas.certificate == ExactScalar(Rational(0), Rational(1, 20000));
    report(6, "no-line-spectrum obstructions: th-L scan empty, th-parallel incommensurable",
           empty_scan && incommensurable,
           feas.certificate ? "certificate " + feas.certificate->str() : "no certificate");
}

void criterion_7_newton_brute_force() {
    Timer timer;
    // All sorted offset sets {0, a, b, c} on (1/12) Z inside [0, 2).
    long checked = 0, t1_pass = 0, t1_expected = 0, mismatch = 0, t32_pass = 0;
    for (int a = 1; a <= 23; ++a)
        for (int b = a + 1; b <= 23; ++b)
            for (int c = b + 1; c <= 23; ++c) {
                std::vector<ExactScalar> offs{rat(0), rat(a, 12), rat(b, 12), rat(c, 12)};
                PeriodicSet1D ps(offs, rat(2));
                ++checked;

                bool tiles_1 = check_tiling_1d(ps, 1, 2, 24).pass;
                bool form = (b == 12) && (c == a + 12) && (a < 12);
                if (tiles_1) ++t1_pass;
                if (form) ++t1_expected;
                if (tiles_1 != form) ++mismatch;

                auto cls1 = classify_periodic_tiler(offs, 1);
                if (tiles_1 != (cls1.form == TilerForm::TwoOffsetsPlusZ)) ++mismatch;
                if (tiles_1 && !cls1.newton_consistent) ++mismatch;

                bool tiles_32 = check_tiling_1d(ps, rat(3, 2), 3, 24).pass;
                bool half = (a == 6 && b == 12 && c == 18);
                if (tiles_32) ++t32_pass;
                if (tiles_32 != half) ++mismatch;
                auto cls32 = classify_periodic_tiler(offs, rat(3, 2));
                if (tiles_32 != (cls32.form == TilerForm::HalfIntegers)) ++mismatch;
            }
    double elapsed = timer.seconds();
    report(7, "tiling brute force on (1/12)Z: exactly the {0,a,1,1+a} family (half-integers for T=3/2)",
           mismatch == 0 && t1_pass == t1_expected && t32_pass == 1 && elapsed < 60.0,
           std::to_string(checked) + " sets, " + std::to_string(t1_pass) + " tile at T=1, " +
               std::to_string(elapsed) + " s");
}

void criterion_8_growth_and_entropy() {
    SpectrumSpec diag(2, {pt(rat(0), rat(0)), pt(rat(1, 2), rat(-1, 2))}, {pt(rat(1), rat(-1))});
    long count1000 = count_in_ball(diag, Vec::zero(2), 1000.0);
    double ratio = static_cast<double>(count1000) / 1000.0;
    bool ratio_ok = ratio >= 2.7 && ratio <= 3.0;

    double lo = 1e300, hi = 0.0;
    for (double R : {250.0, 400.0, 630.0, 1000.0}) {
        double r = static_cast<double>(count_in_ball(diag, Vec::zero(2), R)) / R;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    bool stable = (hi - lo) / hi < 0.05;

    Measure rho = cross_m(0, 0, 1, 1);
    auto entropy = entropy_bound_check(rho, diag, {2, 4, 8, 16, 32, 64}, 0.5, 0);
    report(8, "growth: count(0,1000)/1000 in [2.7,3.0], <5% drift, entropy bound with one fitted C",
           ratio_ok && stable && entropy.holds,
           "ratio " + std::to_string(ratio) + ", drift " + std::to_string((hi - lo) / hi) +
               ", C " + std::to_string(entropy.fitted_c));
}

void criterion_9_energy() {
    Timer timer;
    Measure rho = cross_m(0, 0, 1, 1);
    double e20 = fourier_energy(rho, 20.0, 0.05);
    double e40 = fourier_energy(rho, 40.0, 0.05);
    double r20 = e20 / 20.0, r40 = e40 / 40.0;
    bool rates = r20 >= 0.5 && r40 >= 0.5 && std::abs(r20 - r40) / std::max(r20, r40) <= 0.15;
    auto lev = lev_exponent_estimate(rho, {5.0, 10.0, 20.0, 40.0}, 0.05);
    bool alpha_ok = lev.alpha >= 0.8 && lev.alpha <= 1.2;
    double elapsed = timer.seconds();
    report(9, "energy growth rate and Lev exponent", rates && alpha_ok && elapsed < 60.0,
           "energy/R = " + std::to_string(r20) + " vs " + std::to_string(r40) + ", alpha = " +
               std::to_string(lev.alpha) + ", " + std::to_string(elapsed) + " s");
}

void criterion_10_property_suites() {
    std::mt19937 rng(20250809);
    int failures = 0;

    // Field axioms.
    auto random_scalar = [&](int grain) {
        std::uniform_int_distribution<int> num(-grain, grain);
        std::uniform_int_distribution<int> den(1, 12);
        return ExactScalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    };
    for (int i = 0; i < 150; ++i) {
        ExactScalar a = random_scalar(40), b = random_scalar(40);
        if ((a + b) - b != a) ++failures;
        if (!b.is_zero() && (a * b) / b != a) ++failures;
    }

    // Hermitian symmetry and F(0) = total mass.
    Measure rho = cross_m(0, 0, 1, 1);
    FourierEvaluator F(rho);
    std::uniform_real_distribution<double> coord(-8.0, 8.0);
    for (int i = 0; i < 120; ++i) {
        std::vector<double> xi{coord(rng), coord(rng)};
        std::vector<double> neg{-xi[0], -xi[1]};
        if (std::abs(F(std::span<const double>(xi)) -
                     std::conj(F(std::span<const double>(neg)))) > 1e-13)
            ++failures;
    }
    if (std::abs(F(Vec::zero(2)) - 1.0) > 1e-14) ++failures;

    // Projection consistency along y = -x.
    auto proj = project_to_line(rho, LineDir(pt(rat(1), rat(-1))));
    FourierEvaluator Fp(proj.line_measure);
    double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    std::uniform_real_distribution<double> ts(-10.0, 10.0);
    for (int i = 0; i < 120; ++i) {
        double t = ts(rng);
        std::vector<double> xi1{t};
        std::vector<double> xi2{t * inv_sqrt2, -t * inv_sqrt2};
        if (std::abs(Fp(std::span<const double>(xi1)) - F(std::span<const double>(xi2))) > 1e-12)
            ++failures;
    }

    // Convolution identity.
    Measure masks = Measure::atoms_only(2, {AtomPiece{pt(rat(0), rat(0)), rat(1, 2)},
                                            AtomPiece{pt(rat(1), rat(1)), rat(1, 2)}});
    Measure conv = convolve(masks, rho);
    FourierEvaluator Fm(masks), Fc(conv);
    for (int i = 0; i < 120; ++i) {
        std::vector<double> xi{coord(rng), coord(rng)};
        auto lhs = Fc(std::span<const double>(xi));
        auto rhs = Fm(std::span<const double>(xi)) * F(std::span<const double>(xi));
        if (std::abs(lhs - rhs) > 1e-12) ++failures;
    }

    // Affine covariance.
    for (int i = 0; i < 110; ++i) {
        std::uniform_int_distribution<int> small(-3, 3);
        Mat2 A(rat(small(rng)), rat(small(rng)), rat(small(rng)), rat(small(rng)));
        if (A.det().is_zero()) continue;
        Vec b = pt(rat(small(rng)), rat(small(rng)));
        Measure pushed = affine_pushforward(rho, A, b);
        FourierEvaluator G(pushed);
        std::vector<double> xi{coord(rng) / 4, coord(rng) / 4};
        Vec xiv(ExactScalar(rational_from_double(xi[0])), ExactScalar(rational_from_double(xi[1])));
        double phase =
            -2.0 * std::numbers::pi * (xi[0] * b[0].to_double() + xi[1] * b[1].to_double());
        auto lhs = G(std::span<const double>(xi));
        auto rhs = std::polar(1.0, phase) * F(A.transpose().apply(xiv));
        if (std::abs(lhs - rhs) > 1e-11) ++failures;
    }

    // Dyadic refinement consistency.
    for (int level = 1; level <= 4; ++level) {
        auto fine = dyadic_masses(rho, level + 1);
        auto coarse = dyadic_masses(rho, level);
        DyadicMasses agg;
        ExactScalar total{0};
        for (const auto& [idx, mass] : fine) {
            std::vector<long long> up(idx.size());
            for (size_t i = 0; i < idx.size(); ++i)
                up[i] = idx[i] >= 0 ? idx[i] / 2 : (idx[i] - 1) / 2;
            auto it = agg.find(up);
            if (it == agg.end())
                agg.emplace(up, mass);
            else
                it->second += mass;
            total += mass;
        }
        if (total != rat(1)) ++failures;
        if (agg.size() != coarse.size()) ++failures;
        for (const auto& [idx, mass] : coarse)
            if (agg.at(idx) != mass) ++failures;
    }

    // Exact membership agrees with the numeric zero test on the diagonals.
    CrossConfig cc(1, 0, 1, 1);
    FourierEvaluator Fcc(cc.measure());
    std::uniform_int_distribution<int> num(-60, 60);
    std::uniform_int_distribution<int> den(1, 4);
    int agreement_checked = 0;
    for (int i = 0; i < 400 && agreement_checked < 250; ++i) {
        ExactScalar l1(Rational(num(rng), den(rng)));
        if (l1.is_zero() || l1.abs() > rat(20)) continue;
        for (int sgn : {1, -1}) {
            Vec lam = pt(l1, sgn == 1 ? l1 : -l1);
            bool member = cross_zero_membership(cc, lam, 1e-10).member;
            bool numeric =
                numeric_zero_test(Fcc, std::span<const double>(lam.to_doubles()), 1e-9);
            if (member != numeric) ++failures;
            ++agreement_checked;
        }
    }

    // Tiler acceptance / rejection family.
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> qd(3, 200);
        int q = qd(rng);
        int p = std::uniform_int_distribution<int>(1, q - 1)(rng);
        ExactScalar alpha(Rational(p, q));
        auto good = classify_periodic_tiler({rat(0), alpha, rat(1), rat(1) + alpha}, 1);
        if (good.form != TilerForm::TwoOffsetsPlusZ) ++failures;
        ExactScalar eps(Rational(1, 1000));
        ExactScalar bumped = alpha + eps < rat(1) ? alpha + eps : alpha - eps;
        auto bad = classify_periodic_tiler({rat(0), alpha, rat(1), rat(1) + bumped}, 1);
        if (bad.form != TilerForm::Reject) ++failures;
    }

    report(10, "randomized property suites (field, transform, projection, tiling)", failures == 0,
           failures == 0 ? "all invariants held" : std::to_string(failures) + " violations");
}

}  // namespace

int main() {
    Timer total;
    criterion_1_truth_table();
    criteria_2_3_4_orthogonality_bessel_completeness();
    criterion_5_nonspectral_witness();
    criterion_6_obstructions();
    criterion_7_newton_brute_force();
    criterion_8_growth_and_entropy();
    criterion_9_energy();
    criterion_10_property_suites();

    std::cout << "----\n"
              << (g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << g_lines.size() << " criteria, " << g_failures << " failures, " << total.seconds()
              << " s)\n";
    return g_failures == 0 ? 0 : 1;
}

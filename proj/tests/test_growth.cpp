#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "segspec/growth.hpp"
#include "helpers.hpp"

#include <numbers>

using namespace segspec;
using namespace segspec::testutil;

namespace {

SpectrumSpec half_integer_diagonal() {
    return SpectrumSpec(2, {pt(0, 0)}, {pt(rat(1, 2), rat(-1, 2))});
}

SpectrumSpec cross_spectrum() {
    return SpectrumSpec(2, {pt(0, 0), pt(rat(1, 2), rat(-1, 2))}, {pt(1, -1)});
}

}  // namespace

TEST_CASE("counts in balls: reference values") {
    CHECK(count_in_ball(half_integer_diagonal(), Vec::zero(2), 10.0) == 29);
    SpectrumSpec finite(2, {pt(0, 0), pt(1, 1), pt(2, 2)}, {});
    CHECK(count_in_ball(finite, Vec::zero(2), 1e9) == 3);
    CHECK(count_in_ball(cross_spectrum(), Vec::zero(2), 10.0) == 29);
}

TEST_CASE("count monotone in radius") {
    auto s = cross_spectrum();
    long prev = 0;
    for (double R : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
        long c = count_in_ball(s, Vec::zero(2), R);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("growth profile of the diagonal spectrum is linear with slope 2 sqrt 2") {
    auto prof = growth_profile(cross_spectrum(), 1000.0);
    CHECK(!prof.superlinear);
    CHECK(prof.slope == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(0.02));
    // count/R stays within a tight band over the top decade.
    double lo = 1e300, hi = 0.0;
    for (const auto& s : prof.samples) {
        if (s.radius < 250.0) continue;
        double ratio = static_cast<double>(s.count) / s.radius;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 1.05);
}

TEST_CASE("planar lattice is flagged superlinear") {
    SpectrumSpec z2(2, {pt(0, 0)}, {pt(1, 0), pt(0, 1)});
    auto prof = growth_profile(z2, 60.0, {}, 12);
    CHECK(prof.superlinear);
    CHECK(prof.max_ratio > 50.0);
}

TEST_CASE("dense line spectrum is linear but steep") {
    // The three-parallel-segment spectrum: (1/100) Z x {0, 1/3, 2/3}.
    SpectrumSpec sp(2, {pt(0, 0), pt(0, rat(1, 3)), pt(0, rat(2, 3))},
                    {pt(rat(1, 100), 0)});
    auto prof = growth_profile(sp, 50.0, {}, 10);
    CHECK(!prof.superlinear);
    CHECK(prof.slope == doctest::Approx(600.0).epsilon(0.05));
}

TEST_CASE("fourier energy of basic measures") {
    // Atom: |mu^| is identically the mass, so energy is the ball volume.
    Measure atom = Measure::atoms_only(2, {AtomPiece{pt(0, 0), rat(1)}});
    double e = fourier_energy(atom, 3.0, 0.05);
    CHECK(e == doctest::Approx(std::numbers::pi * 9.0).epsilon(0.01));

    // Unit interval: energy tends to the total sinc^2 integral, which is 1.
    double e1 = fourier_energy(unit_interval_1d(), 50.0, 0.05);
    CHECK(e1 == doctest::Approx(1.0).epsilon(0.02));

    CHECK_THROWS_AS(fourier_energy(atom, 3.0, 0.5), std::invalid_argument);
}

TEST_CASE("unit cross energy grows linearly at rate about one") {
    Measure rho = unit_cross();
    double step = default_energy_step(rho);
    CHECK(step <= 0.05);
    double e20 = fourier_energy(rho, 20.0, 0.05);
    double e40 = fourier_energy(rho, 40.0, 0.05);
    double r20 = e20 / 20.0, r40 = e40 / 40.0;
    CHECK(r20 > 0.5);
    CHECK(r40 > 0.5);
    CHECK(std::abs(r20 - r40) / std::max(r20, r40) < 0.15);
    CHECK(e40 >= e20);  // superadditivity in R
}

TEST_CASE("lev exponent estimates") {
    Measure rho = unit_cross();
    auto lev = lev_exponent_estimate(rho, {5.0, 10.0, 20.0, 40.0}, 0.05);
    CHECK(lev.alpha == doctest::Approx(1.0).epsilon(0.2));
    CHECK(!lev.saturated);

    // Full-volume energy growth: the sharpest admissible exponent is zero
    // (an orthogonal set for a point mass has at most one element).
    Measure atom = Measure::atoms_only(2, {AtomPiece{pt(0, 0), rat(1)}});
    auto lev_atom = lev_exponent_estimate(atom, {2.0, 4.0, 8.0}, 0.05);
    CHECK(lev_atom.slope == doctest::Approx(2.0).epsilon(0.02));
    CHECK(lev_atom.alpha == doctest::Approx(0.0).epsilon(0.05));

    auto lev_seg = lev_exponent_estimate(unit_interval_1d(), {10.0, 20.0, 40.0}, 0.05);
    CHECK(lev_seg.saturated);
    CHECK(lev_seg.alpha == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("dyadic masses: reference splits") {
    auto cells = dyadic_masses(unit_interval_1d(), 3);
    REQUIRE(cells.size() == 8);
    for (const auto& [idx, mass] : cells) CHECK(mass == rat(1, 8));

    auto cross_cells = dyadic_masses(unit_cross(), 1);
    REQUIRE(cross_cells.size() == 3);
    CHECK(cross_cells.at({0, 0}) == rat(1, 2));
    CHECK(cross_cells.at({1, 0}) == rat(1, 4));
    CHECK(cross_cells.at({0, 1}) == rat(1, 4));

    // Atom at a dyadic corner lands in the half-open cell that starts there.
    Measure atom = Measure::atoms_only(2, {AtomPiece{pt(rat(1, 2), rat(1, 2)), rat(1)}});
    auto acells = dyadic_masses(atom, 1);
    REQUIRE(acells.size() == 1);
    CHECK(acells.begin()->first == std::vector<long long>{1, 1});
}

TEST_CASE("dyadic masses: totals and refinement consistency") {
    Measure rho = unit_cross();
    for (int level : {0, 1, 2, 3, 4, 5}) {
        auto cells = dyadic_masses(rho, level);
        ExactScalar total{0};
        for (const auto& [idx, mass] : cells) total += mass;
        CHECK(total == rat(1));
    }
    // Level n+1 aggregates exactly to level n.
    for (int level : {1, 2, 3, 4}) {
        auto fine = dyadic_masses(rho, level + 1);
        auto coarse = dyadic_masses(rho, level);
        DyadicMasses agg;
        for (const auto& [idx, mass] : fine) {
            std::vector<long long> up(idx.size());
            for (size_t i = 0; i < idx.size(); ++i)
                up[i] = idx[i] >= 0 ? idx[i] / 2 : (idx[i] - 1) / 2;
            auto it = agg.find(up);
            if (it == agg.end())
                agg.emplace(up, mass);
            else
                it->second += mass;
        }
        CHECK(agg.size() == coarse.size());
        for (const auto& [idx, mass] : coarse) CHECK(agg.at(idx) == mass);
    }
}

TEST_CASE("dyadic entropy of the cross tracks n + 1") {
    Measure rho = unit_cross();
    for (int level : {2, 3, 4, 5, 6}) {
        double h = dyadic_entropy(dyadic_masses(rho, level));
        double expected = level + 1 - std::pow(2.0, -level);
        CHECK(h == doctest::Approx(expected).epsilon(1e-9));
    }
    // Interval: H_n = n exactly.
    double h3 = dyadic_entropy(dyadic_masses(unit_interval_1d(), 3));
    CHECK(h3 == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("entropy bound holds with a single fitted constant") {
    Measure rho = unit_cross();
    auto rep = entropy_bound_check(rho, cross_spectrum(), {2, 4, 8, 16, 32, 64}, 0.5, 0);
    CHECK(rep.holds);
    CHECK(rep.delta > 0.0);
    CHECK(rep.varrho >= 1);
    REQUIRE(rep.rows.size() == 6);
    for (const auto& row : rep.rows) {
        CHECK(static_cast<double>(row.max_count) <= row.bound * (1 + 1e-9));
        // Counts scale linearly with h for a line spectrum.
        CHECK(row.max_count > 0);
    }
    CHECK_THROWS_AS(entropy_bound_check(rho, cross_spectrum(), {2.0}, 1.5, 0),
                    std::invalid_argument);
}

TEST_CASE("single atom: entropy bound degenerates to a constant") {
    Measure atom = Measure::atoms_only(2, {AtomPiece{pt(0, 0), rat(1)}});
    SpectrumSpec one(2, {pt(0, 0)}, {});
    auto rep = entropy_bound_check(atom, one, {2, 8, 32}, 0.5, 0);
    CHECK(rep.holds);
    for (const auto& row : rep.rows) {
        CHECK(row.entropy == doctest::Approx(0.0));
        CHECK(row.max_count == 1);
    }
}

TEST_CASE("ahlfors estimates") {
    auto seg = ahlfors_estimate(unit_interval_1d(), 1.0, 4000, 0);
    CHECK(seg.c_min >= 0.9);
    CHECK(seg.c_min <= 1.6);
    CHECK(seg.c_max <= 2.05);
    CHECK(seg.c_max >= 1.8);

    Measure atom = Measure::atoms_only(2, {AtomPiece{pt(1, 1), rat(1)}});
    auto a = ahlfors_estimate(atom, 0.0, 500, 0);
    CHECK(a.c_min == doctest::Approx(1.0));
    CHECK(a.c_max == doctest::Approx(1.0));

    // Near the crossing the cross carries two arms worth of mass.
    auto crossr = ahlfors_estimate(unit_cross(), 1.0, 4000, 0);
    CHECK(crossr.c_max > 0.9);
    CHECK(crossr.c_max < 2.1);
}

TEST_CASE("entropy bound check input validation") {
    Measure rho = unit_cross();
    CHECK_THROWS_AS(entropy_bound_check(rho, cross_spectrum(), {}, 0.5, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(dyadic_masses(rho, -1), std::invalid_argument);
    CHECK_THROWS_AS(ahlfors_estimate(rho, -1.0, 10, 0), std::invalid_argument);
}

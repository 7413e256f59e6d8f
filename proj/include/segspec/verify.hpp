#pragma once

#include "segspec/spectra.hpp"

namespace segspec {

enum class Verdict { Pass, Fail, Inconclusive };

struct Violation {
    Vec lambda, lambda_prime;  // witness pair; the difference is the tested frequency
    double value;              // |mu^(lambda - lambda')| for the probability measure
};

struct CompletenessSample {
    std::vector<double> x;
    double radius;
    double sum;  // S(x, R) = sum over |lambda| <= R of |mu^(x - lambda)|^2
};

struct VerificationReport {
    std::vector<Violation> violations;
    double bessel_max = 0.0;
    std::vector<CompletenessSample> completeness_samples;
    Verdict verdict = Verdict::Inconclusive;
    double tol = 0.0;
    double radius = 0.0;
    ExactScalar normalization_factor{1};
    long points_enumerated = 0;
    long differences_checked = 0;
    std::string note;
};

// Pairwise orthogonality of the exponentials indexed by the spectrum points
// inside B(0, radius). The measure is normalized to probability internally.
// Distinct differences are enumerated once (with a witness pair); the exact
// cross membership certificates are used whenever the measure is of the
// normalized-cross shape.
VerificationReport check_orthogonality(const Measure& m, const SpectrumSpec& s, double radius,
                                       double tol = 1e-10);

// Truncated completeness sums S(x, R) for every x in xs and R in radii,
// deterministic evaluation order (points sorted by |lambda|). Verdict: Fail on
// a Bessel violation or a detected plateau below one, Pass when the truncation
// gap at the largest radius is within the C0/R band fitted at the smallest
// radius, Inconclusive otherwise.
VerificationReport completeness_curve(const Measure& m, const SpectrumSpec& s,
                                      const std::vector<std::vector<double>>& xs,
                                      std::vector<double> radii,
                                      bool orthogonality_passed = true);

// Regular grid on [0,1]^d with n points per axis.
std::vector<std::vector<double>> unit_grid(int dim, int n);

struct TilingCheck {
    bool pass = false;
    double max_deviation = 0.0;  // distance from target beyond the certified allowance
    double tail_bound = 0.0;     // 0 for the closed-form path
    bool closed_form = false;    // exact lattice-sum evaluation (T * period integral)
};

// Verifies sum over lambda of |1^_{[0,T]}|^2(x - lambda) = target on `grid`
// samples of one period. Uses the exact closed form when T*period is an
// integer, otherwise a truncated sum with an analytic tail certificate.
TilingCheck check_tiling_1d(const PeriodicSet1D& s, const ExactScalar& T,
                            const ExactScalar& target, int grid = 32, double tail_target = 1e-6);

// Normal form of a discrete periodic multiset with tiling constant 2w for the
// interval [0, T]: period mT/(2w) with m = number of offsets per period.
PeriodicSet1D canonical_period(std::vector<ExactScalar> offsets, const ExactScalar& T,
                               const ExactScalar& w);

enum class TilerForm { TwoOffsetsPlusZ, HalfIntegers, Reject, OutOfScopeOddCount };

struct TilerClassification {
    TilerForm form = TilerForm::Reject;
    std::optional<ExactScalar> alpha;
    std::vector<double> power_sum_magnitudes;  // |p_k| for k = 1..m (m included when used)
    bool newton_consistent = false;  // roots satisfy x^{2m} + (-1)^m e_m x^m + e_{2m}
};

// Power-sum test of Theorem-2.4 type for 2m offsets in [0, m): the offsets
// tile iff p_1 = ... = p_{m-1} = 0 (plus p_m = 0 when T > 1), in which case
// the set is {0, alpha} + Z (or half-integers for T > 1).
TilerClassification classify_periodic_tiler(std::vector<ExactScalar> offsets,
                                            const ExactScalar& T, double tol = 1e-10);

// Exact a.e.-injectivity of the orthogonal projection onto the line spanned
// by `direction`: no segment may collapse and no two shadows may overlap in
// positive length.
bool projection_injective_ae(const Measure& m, const Vec& direction);

struct CriticalAngle {
    double theta;   // in [0, pi)
    Vec direction;  // exact canonical representative
    bool injective;
};

struct AngleArc {
    double begin, end;     // open arc (begin, end); end may exceed pi when wrapping
    Vec sample_direction;  // exact direction strictly inside, injectivity verified
};

struct AngleIntervalSet {
    std::vector<CriticalAngle> critical;
    std::vector<AngleArc> arcs;

    bool empty() const;  // no arc and no injective critical direction
};

// Directions (mod pi) along which the projection is injective a.e.: the
// status is constant between consecutive critical directions (where projected
// endpoints collide), so each open gap is decided by one exact test.
AngleIntervalSet injectivity_scan(const Measure& m);

enum class FeasibilityStatus {
    Feasible,
    NoInjectiveDirection,
    IncommensurableGaps,
    NoneFound,
    Unsupported,
};

struct FeasibleDirection {
    Vec direction;
    std::vector<ExactScalar> gap_ratios;  // projected gap / common projected length
};

struct FeasibilityReport {
    FeasibilityStatus status = FeasibilityStatus::NoneFound;
    std::vector<FeasibleDirection> directions;
    std::string obstruction;
    std::optional<ExactScalar> certificate;  // exact non-integer gap-ratio witness
};

// Necessary-condition scan for line spectra: identifies the projection
// directions with constant projected density whose gaps satisfy the exact
// integrality requirements, or reports the obstruction.
FeasibilityReport line_spectrum_feasibility(const Measure& m, int max_gap_integer = 16);

}  // namespace segspec

#pragma once

#include "segspec/verify.hpp"

#include <map>

namespace segspec {

// Exact number of spectrum points in the closed ball B(center, R).
long count_in_ball(const SpectrumSpec& s, const Vec& center, double R);

struct GrowthSample {
    std::vector<double> center;
    double radius;
    long count;
};

struct GrowthProfile {
    std::vector<GrowthSample> samples;
    double slope = 0.0;      // least-squares count vs R at the first center
    double intercept = 0.0;
    double max_ratio = 0.0;  // max count/R over all samples
    bool superlinear = false;
};

// Counts on a log-spaced radius grid up to rmax; flags superlinear growth
// when count/R drifts upward by more than 10% across the top decade.
GrowthProfile growth_profile(const SpectrumSpec& s, double rmax,
                             const std::vector<Vec>& centers = {}, int steps = 16);

// Riemann-sum estimate of the Fourier energy integral over the ball |t| < R.
double fourier_energy(const Measure& m, double R, double grid_step);

// Step resolving the sinc oscillations of the measure's transform.
double default_energy_step(const Measure& m);

struct LevEstimate {
    double alpha = 0.0;  // d - slope of the log-log energy fit
    double slope = 0.0;
    bool saturated = false;  // energy already flat across the radius list
};

// Log-log regression of energy(R) against R; the admissible growth exponent
// is d minus the fitted slope.
LevEstimate lev_exponent_estimate(const Measure& m, const std::vector<double>& radii,
                                  double grid_step = 0.05);

// Exact masses of the probability-normalized measure on the half-open dyadic
// cells [k/2^n, (k+1)/2^n)^d of level n.
using DyadicMasses = std::map<std::vector<long long>, ExactScalar>;
DyadicMasses dyadic_masses(const Measure& m, int level);

// H_n = sum of -mass * log2(mass), in bits.
double dyadic_entropy(const DyadicMasses& masses);

struct EntropyBoundRow {
    double h;
    int level;       // n_h + varrho
    long max_count;  // over the sampled centers
    double entropy;
    double bound;    // C * 2^entropy
};

struct EntropyBoundReport {
    double epsilon = 0.0;
    double delta = 0.0;  // numeric estimate; the abstract bound does not construct it
    int varrho = 0;
    double fitted_c = 0.0;  // fitted on the smallest h
    std::vector<EntropyBoundRow> rows;
    bool holds = false;
};

// Dyadic entropy count bound: #(Lambda cap B(t, h)) <= C 2^{H_{n_h + varrho}}
// with varrho tied to the smallest delta at which every occupied rescaled
// cell keeps |FT| > epsilon. C is fitted on the smallest h and must then
// dominate every larger sampled h.
EntropyBoundReport entropy_bound_check(const Measure& m, const SpectrumSpec& s,
                                       const std::vector<double>& hs, double epsilon = 0.5,
                                       unsigned seed = 0);

struct AhlforsEstimate {
    double c_min = 0.0;
    double c_max = 0.0;
};

// Empirical min/max of mu(B(x, r))/r^s over support points and radii.
AhlforsEstimate ahlfors_estimate(const Measure& m, double s_exp, int samples, unsigned seed = 0);

}  // namespace segspec

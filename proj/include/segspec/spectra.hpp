#pragma once

#include "segspec/classify.hpp"

namespace segspec {

// Discrete frequency set Lambda = offsets + Z-span(lattice). Offsets are kept
// reduced into the fundamental domain of the lattice and must be distinct
// modulo the lattice. All constructors below produce sets containing the
// origin (the paper's 0-in-Lambda convention); translated copies are still
// representable for verification purposes.
class SpectrumSpec {
public:
    SpectrumSpec(int dim, std::vector<Vec> offsets, std::vector<Vec> lattice);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(lattice_.size()); }
    const std::vector<Vec>& offsets() const { return offsets_; }
    const std::vector<Vec>& lattice() const { return lattice_; }

    bool contains_origin() const;
    SpectrumSpec translated(const Vec& c) const;

    // All points with |p - center| <= R (closed ball, exact test).
    std::vector<Vec> points_in_ball(const Vec& center, double R) const;
    long count_in_ball(const Vec& center, double R) const;

private:
    void reduce_offsets();
    int dim_;
    std::vector<Vec> offsets_;
    std::vector<Vec> lattice_;
};

// Periodic multiset of reals: offsets + period*Z, offsets sorted in
// [0, period) starting at 0. Repeated offsets are allowed (projections of
// planar spectra can be multisets).
struct PeriodicSet1D {
    std::vector<ExactScalar> offsets;
    ExactScalar period;

    PeriodicSet1D(std::vector<ExactScalar> offs, ExactScalar per);

    // Requires distinct offsets.
    SpectrumSpec to_spectrum() const;
};

// The two families of line spectra of a spectral cross (one SpectrumSpec per
// matched condition of the classification):
//   T1 == T2, N = t1+t2 in Z\{-1}: {(n,-n)} u {(n+a,-(n+a))}, a = 1/(2(N+1))
//   T1 == T2, N = t1-t2 in Z\{0}:  {(n, n)} u {(n+a,  n+a )}, a = 1/(2N)
//   T1 != T2, t1+t2 in 2Z:         (1/2)Z (1,-1)
//   T1 != T2, t1-t2-T2 in 2Z:      (1/2)Z (1, 1)
std::vector<SpectrumSpec> cross_line_spectrum(const CrossConfig& c);

// Spectrum of two collinear intervals normalized to len1 + len2 = 2:
//   equal lengths, gap n in Z>=0:  Z u (Z + 1/(2(n+1))), period 1
//   unequal lengths, gap in 2Z>=0: (1/2) Z
PeriodicSet1D two_interval_spectrum_1d(const ExactScalar& len1, const ExactScalar& len2,
                                       const ExactScalar& gap);

// Projection line of the parallel-pair construction: perpendicular to
// w - (2k+1) gamma, where gamma is the unit direction of the segments and w
// joins their midpoints. The projected gap is exactly k times the sum of the
// projected lengths.
struct ProjectionLine {
    LineDir line;
    bool exact;  // false when |direction| of the segments left Q[sqrt(2)]
};
ProjectionLine choose_projection_line(const SegmentPiece& s1, const SegmentPiece& s2, int k);

// Line spectrum of two parallel non-collinear segments with equal density:
// project with choose_projection_line, rescale to total length 2 (the gap
// becomes 2k), take the two-interval spectrum, and lift it back along the
// line. The composite scale*unit vector is computed without square roots.
SpectrumSpec parallel_spectrum(const SegmentPiece& s1, const SegmentPiece& s2, int k);

// Alternative single-interval construction: project onto the perpendicular
// of the line joining opposite endpoints; the shadow is one interval and the
// spectrum is its arithmetic progression.
SpectrumSpec parallel_interval_spectrum(const SegmentPiece& s1, const SegmentPiece& s2);

// 1D set placed along a line: t -> t * u with u the unit vector of L.
SpectrumSpec lift_1d_spectrum(const PeriodicSet1D& s, const LineDir& L);
// Same with an explicit step vector (t -> t * step), for exact composite
// scales.
SpectrumSpec lift_1d_scaled(const PeriodicSet1D& s, const Vec& step);

// Orthogonal decomposition R^d = V + V_perp given by an exactly orthonormal
// basis; the first k columns span V.
struct SplitBasis {
    std::vector<Vec> columns;
    int k;

    SplitBasis(std::vector<Vec> cols, int k_);
};

// L + M is a spectrum of mu * nu when L is a spectrum of mu lying in V, M a
// spectrum of nu lying in V_perp, and nu is supported on a translate of
// V_perp. Subspace containment of the spectra is checked exactly; the support
// condition is checked when nu is supplied (mu may be any measure).
SpectrumSpec sumset_spectrum(const SpectrumSpec& L, const SpectrumSpec& M,
                             const SplitBasis& split, const Measure* nu = nullptr);

// Spectrum {0, 1/(nh), ..., (n-1)/(nh)} u of n equally spaced equal-mass
// atoms with spacing h along the axis (n-th roots of unity mask).
SpectrumSpec equal_spaced_atoms_spectrum(int n, const ExactScalar& h, const LineDir& axis);

// A spectrum of T_# mu maps to a spectrum of mu under A^T.
SpectrumSpec pullback_spectrum_affine(const SpectrumSpec& s, const Mat2& A);

}  // namespace segspec

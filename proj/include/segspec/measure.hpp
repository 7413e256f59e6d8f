#pragma once

#include "segspec/geometry.hpp"

#include <complex>
#include <span>
#include <vector>

namespace segspec {

struct AtomPiece {
    Vec at;
    ExactScalar mass;  // > 0
};

// Uniform arc-length piece: density = mass / |to - from| along the segment.
struct SegmentPiece {
    Vec from;
    Vec to;
    ExactScalar mass;  // > 0; stays rational except for split projection pieces

    Vec delta() const { return to - from; }
    ExactScalar length2() const { return norm2(to - from); }
};

// Finite sum of point atoms and weighted segments. Immutable after
// construction; construction canonicalizes piece order, merges coinciding
// pieces and rejects segments that overlap in positive length.
class Measure {
public:
    Measure(int dim, std::vector<AtomPiece> atoms, std::vector<SegmentPiece> segments);

    static Measure atoms_only(int dim, std::vector<AtomPiece> atoms) {
        return Measure(dim, std::move(atoms), {});
    }
    static Measure segments_only(int dim, std::vector<SegmentPiece> segments) {
        return Measure(dim, {}, std::move(segments));
    }

    int dim() const { return dim_; }
    const std::vector<AtomPiece>& atoms() const { return atoms_; }
    const std::vector<SegmentPiece>& segments() const { return segments_; }

    ExactScalar total_mass() const;
    // Same measure scaled to total mass one; returns the applied factor.
    std::pair<Measure, ExactScalar> normalized() const;

private:
    void validate_and_canonicalize();

    int dim_;
    std::vector<AtomPiece> atoms_;
    std::vector<SegmentPiece> segments_;
};

// sin(pi x)/(pi x) with the Taylor branch near zero (exact sinc zeros at
// the nonzero integers matter for every orthogonality test).
double sinc(double x);

// Closed-form Fourier transform evaluator. Caches a float view of the
// measure; safe for concurrent use once built.
class FourierEvaluator {
public:
    explicit FourierEvaluator(const Measure& m);

    std::complex<double> operator()(std::span<const double> xi) const;
    std::complex<double> operator()(const Vec& xi) const;

    int dim() const { return dim_; }
    double total_mass() const { return total_mass_; }

private:
    struct FlatAtom {
        double pos[4];
        double mass;
    };
    struct FlatSegment {
        double mid[4];    // midpoint phase
        double delta[4];  // to - from
        double mass;
    };
    int dim_;
    double total_mass_;
    std::vector<FlatAtom> atoms_;
    std::vector<FlatSegment> segments_;
};

std::complex<double> fourier_eval(const Measure& m, std::span<const double> xi);
std::complex<double> fourier_eval(const Measure& m, const Vec& xi);

// Pushforward under x -> A x + b (dimension 2). Masses are carried along;
// arc-length proportions change unless A is a similarity.
Measure affine_pushforward(const Measure& m, const Mat2& A, const Vec& b);

// Convolution. Only atomic * anything is supported: segment * segment leaves
// the atoms-plus-segments measure class.
Measure convolve(const Measure& m1, const Measure& m2);

// Projection of a planar measure onto the line spanned by `line`.
struct Shadow {
    bool from_atom;       // source piece type
    int source_index;     // index into atoms() or segments()
    bool collapsed;       // segment perpendicular to the line
    ExactScalar lo, hi;   // projected interval (lo == hi for point images)
};

// Multiplicity of the projected segment shadows over the line: counts of
// covering source segments on each open interval between breakpoints.
struct MultiplicityMap {
    std::vector<ExactScalar> breakpoints;
    std::vector<int> counts;  // counts[i] on (breakpoints[i], breakpoints[i+1])

    int max_multiplicity() const;
    // Multiplicity on the open interval around a sample point.
    int multiplicity_at(const ExactScalar& x) const;
};

struct ProjectionResult {
    Measure line_measure;          // 1-dimensional
    std::vector<Shadow> shadows;   // one entry per source piece
    MultiplicityMap multiplicity;  // segment shadows only
    bool exact;                    // false when |direction| left Q[sqrt(2)]
};

ProjectionResult project_to_line(const Measure& m, const LineDir& line);

}  // namespace segspec

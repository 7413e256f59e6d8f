#pragma once

#include "segspec/zeros.hpp"

#include <string>
#include <variant>
#include <vector>

namespace segspec {

// Two non-overlapping segments carrying arc-length (mass proportional to
// length, checked exactly via squared lengths).
struct TwoSegmentInput {
    SegmentPiece seg1, seg2;

    TwoSegmentInput(SegmentPiece s1, SegmentPiece s2);

    Measure measure() const {
        return Measure::segments_only(seg1.from.dim(), {seg1, seg2});
    }
};

enum class Geometry { Collinear, Parallel, NonParallel };

// Collinear pair normalized to len1 + len2 = 2.
struct CollinearForm {
    ExactScalar len1, len2, gap;
    // Step vector mapping normalized 1D spectrum points back to the ambient
    // space: lambda_2d = t * spectrum_step for t in the normalized spectrum.
    Vec spectrum_step = Vec::zero(2);
};

// Parallel non-collinear pair; lengths normalized to T1 + T2 = 2.
struct ParallelForm {
    ExactScalar T1, T2;
    ExactScalar perp_dist_sq;  // squared distance between the supporting lines, normalized
};

struct NormalizedTwoSegments {
    Geometry geometry;
    std::variant<CrossConfig, CollinearForm, ParallelForm> form;
    bool exact = true;
};

struct ClassificationResult {
    Geometry geometry;
    bool spectral = false;
    std::vector<std::string> matched_conditions;
    std::optional<NormalizedTwoSegments> normalized;
    bool exact = true;
};

// Maps the pair to the paper's normal form. Non-parallel pairs go to the
// perpendicular cross (t1, T1, t2, T2) with T1 + T2 = 2 together with the
// affine map that realizes the reduction; collinear/parallel pairs to their
// 1D data. Works in mass-proportional coordinates, so everything stays in
// Q[sqrt(2)] with no square roots.
NormalizedTwoSegments normalize_two_segments(const TwoSegmentInput& input);

// Same normalization for a raw pair (pushforward images of arc-length pairs
// need not carry mass proportional to length; the masses define the measure).
NormalizedTwoSegments normalize_segment_pair(const SegmentPiece& s1, const SegmentPiece& s2);
ClassificationResult classify_segment_pair(const SegmentPiece& s1, const SegmentPiece& s2);

// Spectrality of the normalized cross:
//   T1 == T2:  t1 + t2 in Z \ {-1}  or  t1 - t2 in Z \ {0}
//   T1 != T2:  t1 + t2 in 2Z        or  t1 - t2 - T2 in 2Z
ClassificationResult classify_cross(const CrossConfig& c);

// Spectrality of two collinear intervals (lengths are normalized internally
// so that len1 + len2 = 2): equal lengths need an integer gap, unequal
// lengths an even integer gap.
ClassificationResult classify_collinear(const ExactScalar& len1, const ExactScalar& len2,
                                        const ExactScalar& gap);

// Full decision: trichotomy, then the matching rule. Parallel non-collinear
// pairs are always spectral.
ClassificationResult classify_two_segments(const TwoSegmentInput& input);

enum class BisectorLine { Plus, Minus };  // y = x and y = -x

// Ratio (gap between the projections of the two arms) / (sum of projected
// lengths) on the chosen diagonal. Requires the corresponding congruence.
ExactScalar gap_ratio(const CrossConfig& c, BisectorLine line);

}  // namespace segspec

#pragma once

#include "segspec/measure.hpp"

#include <random>

namespace segspec::testutil {

inline Vec pt(long x, long y) { return Vec(ExactScalar(x), ExactScalar(y)); }
inline Vec pt(ExactScalar x, ExactScalar y) { return Vec(std::move(x), std::move(y)); }
inline Vec pt1(ExactScalar x) { return Vec(std::vector<ExactScalar>{std::move(x)}); }

inline ExactScalar rat(long p, long q = 1) { return ExactScalar(Rational(p, q)); }

// The measure rho for the axis cross [t1, t1+T1] x {0} union {0} x [t2, t2+T2],
// arm masses T1/2 and T2/2 (probability when T1 + T2 = 2).
inline Measure cross_measure(ExactScalar t1, ExactScalar t2, ExactScalar T1, ExactScalar T2) {
    ExactScalar half(Rational(1, 2));
    std::vector<SegmentPiece> segs;
    segs.push_back({pt(t1, 0), pt(t1 + T1, 0), half * T1});
    segs.push_back({pt(0, t2), pt(0, t2 + T2), half * T2});
    return Measure::segments_only(2, std::move(segs));
}

inline Measure unit_cross() { return cross_measure(0, 0, 1, 1); }

inline Measure unit_interval_1d() {
    return Measure::segments_only(
        1, {SegmentPiece{pt1(ExactScalar(0)), pt1(ExactScalar(1)), ExactScalar(1)}});
}

inline ExactScalar random_rational(std::mt19937& rng, int max_abs = 20, int max_den = 8) {
    std::uniform_int_distribution<int> num(-max_abs, max_abs);
    std::uniform_int_distribution<int> den(1, max_den);
    return ExactScalar(Rational(num(rng), den(rng)));
}

}  // namespace segspec::testutil

#include "segspec/classify.hpp"

namespace segspec {

namespace {

// Parameter of x along the line p + t d, exact.
ExactScalar line_param(const Vec& x, const Vec& p, const Vec& d) {
    return dot(x - p, d) / norm2(d);
}

}  // namespace

TwoSegmentInput::TwoSegmentInput(SegmentPiece s1, SegmentPiece s2)
    : seg1(std::move(s1)), seg2(std::move(s2)) {
    if (seg1.from.dim() != seg2.from.dim())
        throw std::invalid_argument("TwoSegmentInput: dimension mismatch");
    // mass1/len1 == mass2/len2, compared via squares to stay in the field.
    if (seg1.mass * seg1.mass * seg2.length2() != seg2.mass * seg2.mass * seg1.length2())
        throw std::invalid_argument("TwoSegmentInput: masses must be proportional to lengths");
    measure();  // runs the overlap / degeneracy validation
}

NormalizedTwoSegments normalize_two_segments(const TwoSegmentInput& input) {
    return normalize_segment_pair(input.seg1, input.seg2);
}

NormalizedTwoSegments normalize_segment_pair(const SegmentPiece& s1, const SegmentPiece& s2) {
    const int dim = s1.from.dim();
    Vec d1 = s1.delta(), d2 = s2.delta();

    // Mass-proportional lengths normalized to T1 + T2 = 2; exact because the
    // input carries arc-length.
    ExactScalar msum = s1.mass + s2.mass;
    ExactScalar T1 = ExactScalar(2) * s1.mass / msum;
    ExactScalar T2 = ExactScalar(2) * s2.mass / msum;

    if (dim == 2 && !cross2(d1, d2).is_zero()) {
        // Supporting lines meet at X = p1 + tau1 d1 = p2 + tau2 d2.
        Vec rhs = s2.from - s1.from;
        ExactScalar denom = cross2(d1, d2);
        ExactScalar tau1 = cross2(rhs, d2) / denom;
        ExactScalar tau2 = cross2(rhs, d1) / denom;
        ExactScalar t1 = -tau1 * T1;
        ExactScalar t2 = -tau2 * T2;
        // A maps d1 -> (T1, 0), d2 -> (0, T2); the pushforward of the pair is
        // then exactly the normalized cross measure.
        Mat2 A = Mat2::from_columns(Vec(T1, 0), Vec(0, T2)) *
                 Mat2::from_columns(d1, d2).inverse();
        Vec X = s1.from + tau1 * d1;
        AffineMap map{A, -A.apply(X)};
        return {Geometry::NonParallel, CrossConfig(t1, t2, T1, T2, map), true};
    }

    const bool collinear =
        dim == 1 ||
        ([&] {
            Vec off = s2.from - s1.from;
            for (int i = 0; i < dim; ++i)
                for (int j = i + 1; j < dim; ++j)
                    if (!(d1[i] * off[j] - d1[j] * off[i]).is_zero()) return false;
            return true;
        })();

    if (collinear) {
        // Everything in units of |d1| along the common line.
        ExactScalar a1 = 0, b1 = 1;
        ExactScalar ta = line_param(s2.from, s1.from, d1);
        ExactScalar tb = line_param(s2.to, s1.from, d1);
        ExactScalar a2 = ta < tb ? ta : tb;
        ExactScalar b2 = ta < tb ? tb : ta;
        ExactScalar gap_tau = a2 > b1 ? a2 - b1 : (a1 > b2 ? a1 - b2 : ExactScalar(0));
        ExactScalar total = (b1 - a1) + (b2 - a2);
        ExactScalar sigma_tau = ExactScalar(2) / total;
        CollinearForm form;
        form.len1 = sigma_tau * (b1 - a1);
        form.len2 = sigma_tau * (b2 - a2);
        form.gap = sigma_tau * gap_tau;
        // sigma_real * unit(d1) without square roots: 2 d1 / (norm2(d1) * total).
        ExactScalar step = ExactScalar(2) / (norm2(d1) * total);
        form.spectrum_step = step * d1;
        return {Geometry::Collinear, std::move(form), true};
    }

    // Parallel, non-collinear.
    ParallelForm form;
    form.T1 = T1;
    form.T2 = T2;
    Vec off = s2.from - s1.from;
    ExactScalar cr = cross2(d1, off);
    ExactScalar h2 = cr * cr / norm2(d1);  // squared distance between the lines
    // Lengths scale by sigma = 2/(L1+L2) and L1+L2 = 2 L1 / T1, so
    // sigma^2 = T1^2 / norm2(d1).
    form.perp_dist_sq = h2 * T1 * T1 / norm2(d1);
    return {Geometry::Parallel, std::move(form), true};
}

ClassificationResult classify_cross(const CrossConfig& c) {
    ClassificationResult r;
    r.geometry = Geometry::NonParallel;
    r.normalized = NormalizedTwoSegments{Geometry::NonParallel, c, true};
    ExactScalar sum = c.t1 + c.t2;
    ExactScalar diff = c.t1 - c.t2;
    if (c.equal_lengths()) {
        if (sum.is_integer() && sum != ExactScalar(-1))
            r.matched_conditions.push_back("t1+t2 in Z\\{-1}");
        if (diff.is_integer() && !diff.is_zero())
            r.matched_conditions.push_back("t1-t2 in Z\\{0}");
    } else {
        if (sum.is_even_integer()) r.matched_conditions.push_back("t1+t2 in 2Z");
        if ((diff - c.T2).is_even_integer())
            r.matched_conditions.push_back("t1-t2-T2 in 2Z");
    }
    r.spectral = !r.matched_conditions.empty();
    return r;
}

ClassificationResult classify_collinear(const ExactScalar& len1, const ExactScalar& len2,
                                        const ExactScalar& gap) {
    if (len1.sign() <= 0 || len2.sign() <= 0)
        throw std::invalid_argument("classify_collinear: lengths must be positive");
    if (gap.sign() < 0) throw std::invalid_argument("classify_collinear: gap must be >= 0");
    ExactScalar sigma = ExactScalar(2) / (len1 + len2);
    ExactScalar l1 = sigma * len1, l2 = sigma * len2, g = sigma * gap;

    ClassificationResult r;
    r.geometry = Geometry::Collinear;
    CollinearForm form;
    form.len1 = l1;
    form.len2 = l2;
    form.gap = g;
    form.spectrum_step = Vec(std::vector<ExactScalar>{sigma});
    r.normalized = NormalizedTwoSegments{Geometry::Collinear, form, true};
    if (l1 == l2) {
        if (g.is_integer()) r.matched_conditions.push_back("gap in Z (equal lengths)");
    } else {
        if (g.is_even_integer()) r.matched_conditions.push_back("gap in 2Z (unequal lengths)");
    }
    r.spectral = !r.matched_conditions.empty();
    return r;
}

ClassificationResult classify_two_segments(const TwoSegmentInput& input) {
    return classify_segment_pair(input.seg1, input.seg2);
}

ClassificationResult classify_segment_pair(const SegmentPiece& s1, const SegmentPiece& s2) {
    NormalizedTwoSegments norm = normalize_segment_pair(s1, s2);
    switch (norm.geometry) {
        case Geometry::NonParallel:
            return classify_cross(std::get<CrossConfig>(norm.form));
        case Geometry::Collinear: {
            const auto& f = std::get<CollinearForm>(norm.form);
            ClassificationResult r = classify_collinear(f.len1, f.len2, f.gap);
            r.normalized = norm;  // keep the ambient spectrum step
            return r;
        }
        case Geometry::Parallel:
            break;
    }
    ClassificationResult r;
    r.geometry = Geometry::Parallel;
    r.spectral = true;
    r.matched_conditions.push_back("parallel segments: always spectral (line spectrum)");
    r.normalized = std::move(norm);
    return r;
}

ExactScalar gap_ratio(const CrossConfig& c, BisectorLine line) {
    ExactScalar half(Rational(1, 2));
    if (line == BisectorLine::Minus) {
        ExactScalar sum = c.t1 + c.t2;
        if (c.equal_lengths()) {
            if (!sum.is_integer() || sum == ExactScalar(-1))
                throw std::domain_error("gap_ratio: t1+t2 not in Z\\{-1}");
        } else if (!sum.is_even_integer()) {
            throw std::domain_error("gap_ratio: t1+t2 not in 2Z");
        }
        return half * ((sum + ExactScalar(1)).abs() - ExactScalar(1));
    }
    ExactScalar diff = c.t1 - c.t2;
    if (c.equal_lengths()) {
        if (!diff.is_integer() || diff.is_zero())
            throw std::domain_error("gap_ratio: t1-t2 not in Z\\{0}");
        return half * (diff.abs() - ExactScalar(1));
    }
    if (!(diff - c.T2).is_even_integer())
        throw std::domain_error("gap_ratio: t1-t2-T2 not in 2Z");
    return half * ((diff - c.T2 + ExactScalar(1)).abs() - ExactScalar(1));
}

}  // namespace segspec

#include "segspec/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace segspec {

namespace {

// Integer solutions of a n^2 + b n + c <= 0 with a > 0 (exact coefficients).
std::optional<std::pair<long long, long long>> quadratic_integer_range(const ExactScalar& a,
                                                                       const ExactScalar& b,
                                                                       const ExactScalar& c) {
    ExactScalar disc = b * b - ExactScalar(4) * a * c;
    if (disc.sign() < 0) return std::nullopt;
    double ad = a.to_double(), bd = b.to_double(), dd = std::sqrt(std::max(0.0, disc.to_double()));
    auto value_ok = [&](long long n) {
        ExactScalar en{Rational(n)};
        return ((a * en + b) * en + c).sign() <= 0;
    };
    long long lo = static_cast<long long>(std::ceil((-bd - dd) / (2 * ad))) - 2;
    long long hi = static_cast<long long>(std::floor((-bd + dd) / (2 * ad))) + 2;
    while (lo <= hi && !value_ok(lo)) ++lo;
    while (lo <= hi && !value_ok(hi)) --hi;
    if (lo > hi) return std::nullopt;
    while (value_ok(lo - 1)) --lo;  // guards against float root error
    while (value_ok(hi + 1)) ++hi;
    return std::make_pair(lo, hi);
}

}  // namespace

SpectrumSpec::SpectrumSpec(int dim, std::vector<Vec> offsets, std::vector<Vec> lattice)
    : dim_(dim), offsets_(std::move(offsets)), lattice_(std::move(lattice)) {
    if (offsets_.empty()) throw std::invalid_argument("SpectrumSpec: need at least one offset");
    for (const auto& o : offsets_)
        if (o.dim() != dim_) throw std::invalid_argument("SpectrumSpec: offset dimension mismatch");
    for (const auto& g : lattice_) {
        if (g.dim() != dim_) throw std::invalid_argument("SpectrumSpec: lattice dimension mismatch");
        if (g.is_zero()) throw std::invalid_argument("SpectrumSpec: zero lattice generator");
    }
    if (rank() > dim_ || rank() > 2)
        throw std::invalid_argument("SpectrumSpec: unsupported lattice rank");
    if (rank() == 2) {
        ExactScalar g11 = dot(lattice_[0], lattice_[0]);
        ExactScalar g12 = dot(lattice_[0], lattice_[1]);
        ExactScalar g22 = dot(lattice_[1], lattice_[1]);
        if ((g11 * g22 - g12 * g12).is_zero())
            throw std::invalid_argument("SpectrumSpec: dependent lattice generators");
    }
    reduce_offsets();
}

void SpectrumSpec::reduce_offsets() {
    for (auto& o : offsets_) {
        if (rank() == 1) {
            const Vec& g = lattice_[0];
            ExactScalar c = dot(o, g) / dot(g, g);
            o = o - ExactScalar(Rational(c.floor())) * g;
        } else if (rank() == 2) {
            const Vec& g1 = lattice_[0];
            const Vec& g2 = lattice_[1];
            ExactScalar g11 = dot(g1, g1), g12 = dot(g1, g2), g22 = dot(g2, g2);
            ExactScalar det = g11 * g22 - g12 * g12;
            ExactScalar r1 = dot(o, g1), r2 = dot(o, g2);
            ExactScalar c1 = (g22 * r1 - g12 * r2) / det;
            ExactScalar c2 = (g11 * r2 - g12 * r1) / det;
            o = o - ExactScalar(Rational(c1.floor())) * g1 - ExactScalar(Rational(c2.floor())) * g2;
        }
    }
    std::sort(offsets_.begin(), offsets_.end());
    for (size_t i = 0; i + 1 < offsets_.size(); ++i)
        if (offsets_[i] == offsets_[i + 1])
            throw std::invalid_argument("SpectrumSpec: offsets not distinct modulo the lattice");
}

bool SpectrumSpec::contains_origin() const {
    Vec zero = Vec::zero(dim_);
    for (const auto& o : offsets_)
        if (o == zero) return true;
    return false;
}

SpectrumSpec SpectrumSpec::translated(const Vec& c) const {
    std::vector<Vec> offs = offsets_;
    for (auto& o : offs) o = o + c;
    return SpectrumSpec(dim_, std::move(offs), lattice_);
}

std::vector<Vec> SpectrumSpec::points_in_ball(const Vec& center, double R) const {
    if (center.dim() != dim_) throw std::invalid_argument("points_in_ball: dimension mismatch");
    if (R <= 0) throw std::invalid_argument("points_in_ball: radius must be positive");
    ExactScalar r2{rational_from_double(R)};
    r2 = r2 * r2;
    std::vector<Vec> points;

    for (const auto& o : offsets_) {
        Vec w = o - center;
        if (rank() == 0) {
            if ((norm2(w) - r2).sign() <= 0) points.push_back(o);
        } else if (rank() == 1) {
            const Vec& g = lattice_[0];
            auto range = quadratic_integer_range(dot(g, g), ExactScalar(2) * dot(w, g),
                                                 norm2(w) - r2);
            if (!range) continue;
            for (long long n = range->first; n <= range->second; ++n)
                points.push_back(o + ExactScalar(Rational(n)) * g);
        } else {
            // Float bounding box from the inverse Gram, then exact filtering
            // column by column.
            const Vec& g1 = lattice_[0];
            const Vec& g2 = lattice_[1];
            double a11 = dot(g1, g1).to_double(), a12 = dot(g1, g2).to_double(),
                   a22 = dot(g2, g2).to_double();
            double det = a11 * a22 - a12 * a12;
            double wn = std::sqrt(norm2(w).to_double());
            double reach = R + wn + 1.0;
            long long b1 = static_cast<long long>(reach * std::sqrt(a22 / det)) + 2;
            for (long long m = -b1; m <= b1; ++m) {
                Vec base = w + ExactScalar(Rational(m)) * g1;
                auto range = quadratic_integer_range(dot(g2, g2), ExactScalar(2) * dot(base, g2),
                                                     norm2(base) - r2);
                if (!range) continue;
                for (long long n = range->first; n <= range->second; ++n)
                    points.push_back(o + ExactScalar(Rational(m)) * g1 +
                                     ExactScalar(Rational(n)) * g2);
            }
        }
    }
    return points;
}

long SpectrumSpec::count_in_ball(const Vec& center, double R) const {
    if (center.dim() != dim_) throw std::invalid_argument("count_in_ball: dimension mismatch");
    if (R <= 0) throw std::invalid_argument("count_in_ball: radius must be positive");
    if (rank() == 2) return static_cast<long>(points_in_ball(center, R).size());
    ExactScalar r2{rational_from_double(R)};
    r2 = r2 * r2;
    long count = 0;
    for (const auto& o : offsets_) {
        Vec w = o - center;
        if (rank() == 0) {
            if ((norm2(w) - r2).sign() <= 0) ++count;
        } else {
            const Vec& g = lattice_[0];
            auto range = quadratic_integer_range(dot(g, g), ExactScalar(2) * dot(w, g),
                                                 norm2(w) - r2);
            if (range) count += static_cast<long>(range->second - range->first + 1);
        }
    }
    return count;
}

PeriodicSet1D::PeriodicSet1D(std::vector<ExactScalar> offs, ExactScalar per)
    : offsets(std::move(offs)), period(std::move(per)) {
    if (period.sign() <= 0) throw std::invalid_argument("PeriodicSet1D: period must be positive");
    if (offsets.empty()) throw std::invalid_argument("PeriodicSet1D: need offsets");
    std::sort(offsets.begin(), offsets.end());
    if (!offsets.front().is_zero())
        throw std::invalid_argument("PeriodicSet1D: offsets must start at 0");
    if (offsets.back() >= period)
        throw std::invalid_argument("PeriodicSet1D: offsets must lie in [0, period)");
}

SpectrumSpec PeriodicSet1D::to_spectrum() const {
    std::vector<Vec> offs;
    offs.reserve(offsets.size());
    for (const auto& o : offsets) offs.push_back(Vec(std::vector<ExactScalar>{o}));
    return SpectrumSpec(1, std::move(offs), {Vec(std::vector<ExactScalar>{period})});
}

std::vector<SpectrumSpec> cross_line_spectrum(const CrossConfig& c) {
    ClassificationResult cls = classify_cross(c);
    if (!cls.spectral)
        throw std::domain_error("cross_line_spectrum: configuration is not spectral");

    std::vector<SpectrumSpec> specs;
    Vec zero = Vec::zero(2);
    if (c.equal_lengths()) {
        ExactScalar sum = c.t1 + c.t2;
        if (sum.is_integer() && sum != ExactScalar(-1)) {
            // alpha = 1/(2(N+1)): then 2(N+1)alpha = 1 is odd, which is exactly
            // the exact membership pattern on the antidiagonal.
            ExactScalar alpha = ExactScalar(1) / (ExactScalar(2) * (sum + ExactScalar(1)));
            specs.push_back(SpectrumSpec(2, {zero, Vec(alpha, -alpha)}, {Vec(1, -1)}));
        }
        ExactScalar diff = c.t1 - c.t2;
        if (diff.is_integer() && !diff.is_zero()) {
            ExactScalar alpha = ExactScalar(1) / (ExactScalar(2) * diff);
            specs.push_back(SpectrumSpec(2, {zero, Vec(alpha, alpha)}, {Vec(1, 1)}));
        }
    } else {
        ExactScalar half(Rational(1, 2));
        if ((c.t1 + c.t2).is_even_integer())
            specs.push_back(SpectrumSpec(2, {zero}, {Vec(half, -half)}));
        if ((c.t1 - c.t2 - c.T2).is_even_integer())
            specs.push_back(SpectrumSpec(2, {zero}, {Vec(half, half)}));
    }
    return specs;
}

PeriodicSet1D two_interval_spectrum_1d(const ExactScalar& len1, const ExactScalar& len2,
                                       const ExactScalar& gap) {
    if (len1 + len2 != ExactScalar(2))
        throw std::invalid_argument("two_interval_spectrum_1d: lengths must be normalized to 2");
    ClassificationResult cls = classify_collinear(len1, len2, gap);
    if (!cls.spectral) throw std::domain_error("two_interval_spectrum_1d: non-spectral gap");
    if (len1 == len2) {
        Int n = numerator(gap.rat());  // gap is a nonnegative integer here
        Rational alpha(1, 2 * (n + 1));
        return PeriodicSet1D({ExactScalar(0), ExactScalar(alpha)}, ExactScalar(1));
    }
    return PeriodicSet1D({ExactScalar(0)}, ExactScalar(Rational(1, 2)));
}

namespace {

void require_parallel_non_collinear(const SegmentPiece& s1, const SegmentPiece& s2) {
    if (s1.from.dim() != 2 || s2.from.dim() != 2)
        throw std::invalid_argument("parallel construction: need dimension 2");
    Vec d1 = s1.delta(), d2 = s2.delta();
    if (!cross2(d1, d2).is_zero())
        throw std::invalid_argument("parallel construction: segments are not parallel");
    if (cross2(d1, s2.from - s1.from).is_zero())
        throw std::invalid_argument("parallel construction: segments are collinear");
}

void require_equal_density(const SegmentPiece& s1, const SegmentPiece& s2) {
    if (s1.mass * s1.mass * s2.length2() != s2.mass * s2.mass * s1.length2())
        throw std::invalid_argument("parallel construction: masses must be arc-length");
}

Vec canonical_sign(Vec v) {
    for (int i = 0; i < v.dim(); ++i) {
        int s = v[i].sign();
        if (s > 0) return v;
        if (s < 0) return -v;
    }
    return v;
}

}  // namespace

// Length ratio |d2|/|d1| of parallel segments, exact: d2 is a rational
// multiple of d1 inside the field.
static ExactScalar parallel_length_ratio(const Vec& d1, const Vec& d2) {
    ExactScalar c = d1[0].is_zero() ? d2[1] / d1[1] : d2[0] / d1[0];
    return c.abs();
}

ProjectionLine choose_projection_line(const SegmentPiece& s1, const SegmentPiece& s2, int k) {
    if (k <= 0) throw std::invalid_argument("choose_projection_line: k must be positive");
    require_parallel_non_collinear(s1, s2);
    ExactScalar half(Rational(1, 2));
    Vec mid1 = half * (s1.from + s1.to);
    Vec mid2 = half * (s2.from + s2.to);
    Vec w = mid2 - mid1;
    // Gap = k * (sum of projected lengths) needs v perpendicular to
    // w - (2k+1) * ((L1+L2)/2) * gamma with gamma the unit direction; in terms
    // of d1 the scale is (1 + L2/L1)/2, which stays in the field.
    ExactScalar scale = half * (ExactScalar(1) + parallel_length_ratio(s1.delta(), s2.delta()));
    Vec v = rot90(w - ExactScalar(2 * k + 1) * scale * s1.delta());
    return {LineDir(canonical_sign(std::move(v))), true};
}

SpectrumSpec parallel_spectrum(const SegmentPiece& s1, const SegmentPiece& s2, int k) {
    require_parallel_non_collinear(s1, s2);
    require_equal_density(s1, s2);
    ProjectionLine pl = choose_projection_line(s1, s2, k);
    const Vec& v = pl.line.direction;

    // Composite scale-times-unit vector: with gamma = d1/L1 and sigma = 2 /
    // (projected total length), sigma * v/|v| = (2 m1/(m1+m2)) * v / |<d1,v>|.
    // No square roots enter, so axis-friendly inputs stay exact.
    ExactScalar absdot = dot(s1.delta(), v).abs();
    ExactScalar step = ExactScalar(2) * s1.mass / ((s1.mass + s2.mass) * absdot);
    Vec sigma_u = step * v;

    // After rescaling to total length 2 the projected gap is exactly 2k.
    ExactScalar msum = s1.mass + s2.mass;
    PeriodicSet1D normalized =
        two_interval_spectrum_1d(ExactScalar(2) * s1.mass / msum,
                                 ExactScalar(2) * s2.mass / msum, ExactScalar(2 * k));
    return lift_1d_scaled(normalized, sigma_u);
}

SpectrumSpec parallel_interval_spectrum(const SegmentPiece& s1, const SegmentPiece& s2) {
    require_parallel_non_collinear(s1, s2);
    require_equal_density(s1, s2);
    Vec d1 = s1.delta();

    auto low_high = [&](const SegmentPiece& s) {
        ExactScalar pf = dot(s.from, d1), pt_ = dot(s.to, d1);
        return pf < pt_ ? std::make_pair(s.from, s.to) : std::make_pair(s.to, s.from);
    };
    auto [lo1, hi1] = low_high(s1);
    auto [lo2, hi2] = low_high(s2);

    for (auto [a, b] : {std::make_pair(lo1, hi2), std::make_pair(hi1, lo2)}) {
        Vec u = rot90(b - a);
        ExactScalar p1a = dot(s1.from, u), p1b = dot(s1.to, u);
        ExactScalar p2a = dot(s2.from, u), p2b = dot(s2.to, u);
        ExactScalar i1lo = p1a < p1b ? p1a : p1b, i1hi = p1a < p1b ? p1b : p1a;
        ExactScalar i2lo = p2a < p2b ? p2a : p2b, i2hi = p2a < p2b ? p2b : p2a;
        if (!(i1hi <= i2lo || i2hi <= i1lo)) continue;  // interiors overlap
        if (!(i1hi == i2lo || i2hi == i1lo)) continue;  // not a single interval
        ExactScalar step = s1.mass / ((s1.mass + s2.mass) * dot(d1, u).abs());
        return SpectrumSpec(2, {Vec::zero(2)}, {canonical_sign(step * u)});
    }
    throw std::logic_error("parallel_interval_spectrum: no single-interval projection found");
}

SpectrumSpec lift_1d_spectrum(const PeriodicSet1D& s, const LineDir& L) {
    return lift_1d_scaled(s, unit_direction(L.direction).u);
}

SpectrumSpec lift_1d_scaled(const PeriodicSet1D& s, const Vec& step) {
    std::vector<Vec> offs;
    offs.reserve(s.offsets.size());
    for (const auto& t : s.offsets) offs.push_back(t * step);
    return SpectrumSpec(step.dim(), std::move(offs), {s.period * step});
}

SplitBasis::SplitBasis(std::vector<Vec> cols, int k_) : columns(std::move(cols)), k(k_) {
    if (columns.empty()) throw std::invalid_argument("SplitBasis: empty basis");
    int d = columns[0].dim();
    if (static_cast<int>(columns.size()) != d)
        throw std::invalid_argument("SplitBasis: need a full basis");
    if (k < 1 || k >= d) throw std::invalid_argument("SplitBasis: k out of range");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= i; ++j) {
            ExactScalar want = i == j ? 1 : 0;
            if (dot(columns[i], columns[j]) != want)
                throw std::invalid_argument("SplitBasis: columns are not exactly orthonormal");
        }
}

namespace {

bool in_block_span(const Vec& v, const SplitBasis& split, bool first_block) {
    for (int j = 0; j < static_cast<int>(split.columns.size()); ++j) {
        bool inside = first_block ? j < split.k : j >= split.k;
        if (!inside && !dot(v, split.columns[j]).is_zero()) return false;
    }
    return true;
}

}  // namespace

SpectrumSpec sumset_spectrum(const SpectrumSpec& L, const SpectrumSpec& M,
                             const SplitBasis& split, const Measure* nu) {
    if (L.dim() != M.dim() || L.dim() != static_cast<int>(split.columns.size()))
        throw std::invalid_argument("sumset_spectrum: dimension mismatch");
    for (const auto& o : L.offsets())
        if (!in_block_span(o, split, true))
            throw std::invalid_argument("sumset_spectrum: L is not contained in V");
    for (const auto& g : L.lattice())
        if (!in_block_span(g, split, true))
            throw std::invalid_argument("sumset_spectrum: L is not contained in V");
    for (const auto& o : M.offsets())
        if (!in_block_span(o, split, false))
            throw std::invalid_argument("sumset_spectrum: M is not contained in V_perp");
    for (const auto& g : M.lattice())
        if (!in_block_span(g, split, false))
            throw std::invalid_argument("sumset_spectrum: M is not contained in V_perp");
    if (nu) {
        // nu must live on a translate of V_perp (translations do not change
        // spectra, so a translate is as good as the subspace itself).
        std::optional<Vec> ref;
        auto check = [&](const Vec& p) {
            if (!ref) {
                ref = p;
                return;
            }
            if (!in_block_span(p - *ref, split, false))
                throw std::invalid_argument(
                    "sumset_spectrum: nu is not supported on a translate of V_perp");
        };
        for (const auto& a : nu->atoms()) check(a.at);
        for (const auto& s : nu->segments()) {
            check(s.from);
            check(s.to);
        }
    }

    std::vector<Vec> offsets;
    offsets.reserve(L.offsets().size() * M.offsets().size());
    for (const auto& a : L.offsets())
        for (const auto& b : M.offsets()) offsets.push_back(a + b);
    std::vector<Vec> lattice = L.lattice();
    lattice.insert(lattice.end(), M.lattice().begin(), M.lattice().end());
    return SpectrumSpec(L.dim(), std::move(offsets), std::move(lattice));
}

SpectrumSpec equal_spaced_atoms_spectrum(int n, const ExactScalar& h, const LineDir& axis) {
    if (n < 1) throw std::invalid_argument("equal_spaced_atoms_spectrum: n must be >= 1");
    if (h.is_zero()) throw std::invalid_argument("equal_spaced_atoms_spectrum: spacing is zero");
    UnitDir u = unit_direction(axis.direction);
    std::vector<Vec> offs;
    offs.reserve(n);
    for (int j = 0; j < n; ++j)
        offs.push_back((ExactScalar(j) / (ExactScalar(n) * h)) * u.u);
    return SpectrumSpec(axis.direction.dim(), std::move(offs), {});
}

SpectrumSpec pullback_spectrum_affine(const SpectrumSpec& s, const Mat2& A) {
    if (s.dim() != 2) throw std::invalid_argument("pullback_spectrum_affine: need dimension 2");
    if (A.det().is_zero()) throw std::domain_error("pullback_spectrum_affine: singular matrix");
    Mat2 At = A.transpose();
    std::vector<Vec> offs;
    offs.reserve(s.offsets().size());
    for (const auto& o : s.offsets()) offs.push_back(At.apply(o));
    std::vector<Vec> lat;
    lat.reserve(s.lattice().size());
    for (const auto& g : s.lattice()) lat.push_back(At.apply(g));
    return SpectrumSpec(2, std::move(offs), std::move(lat));
}

}  // namespace segspec

#include "segspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace segspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool segments_parallel(const SegmentPiece& a, const SegmentPiece& b) {
    Vec da = a.delta(), db = b.delta();
    for (int i = 0; i < da.dim(); ++i)
        for (int j = i + 1; j < da.dim(); ++j)
            if (!(da[i] * db[j] - da[j] * db[i]).is_zero()) return false;
    return true;
}

bool points_collinear_with(const SegmentPiece& a, const Vec& p) {
    Vec da = a.delta(), dp = p - a.from;
    for (int i = 0; i < da.dim(); ++i)
        for (int j = i + 1; j < da.dim(); ++j)
            if (!(da[i] * dp[j] - da[j] * dp[i]).is_zero()) return false;
    return true;
}

// Positive-length intersection of two collinear segments.
bool positive_overlap(const SegmentPiece& a, const SegmentPiece& b) {
    ExactScalar dd = norm2(a.delta());
    ExactScalar t0 = dot(b.from - a.from, a.delta()) / dd;
    ExactScalar t1 = dot(b.to - a.from, a.delta()) / dd;
    ExactScalar lo = t0 < t1 ? t0 : t1;
    ExactScalar hi = t0 < t1 ? t1 : t0;
    ExactScalar inter_lo = lo < ExactScalar(0) ? ExactScalar(0) : lo;
    ExactScalar inter_hi = hi < ExactScalar(1) ? hi : ExactScalar(1);
    return inter_lo < inter_hi;
}

Vec canonical_lo(const SegmentPiece& s) { return s.from < s.to ? s.from : s.to; }
Vec canonical_hi(const SegmentPiece& s) { return s.from < s.to ? s.to : s.from; }

}  // namespace

Measure::Measure(int dim, std::vector<AtomPiece> atoms, std::vector<SegmentPiece> segments)
    : dim_(dim), atoms_(std::move(atoms)), segments_(std::move(segments)) {
    validate_and_canonicalize();
}

void Measure::validate_and_canonicalize() {
    if (dim_ < 1 || dim_ > 4) throw std::invalid_argument("Measure: dimension must be 1..4");
    for (const auto& a : atoms_) {
        if (a.at.dim() != dim_) throw std::invalid_argument("Measure: atom dimension mismatch");
        if (a.mass.sign() <= 0) throw std::invalid_argument("Measure: atom mass must be positive");
    }
    for (const auto& s : segments_) {
        if (s.from.dim() != dim_ || s.to.dim() != dim_)
            throw std::invalid_argument("Measure: segment dimension mismatch");
        if (s.from == s.to) throw std::invalid_argument("Measure: zero-length segment");
        if (s.mass.sign() <= 0)
            throw std::invalid_argument("Measure: segment mass must be positive");
    }
    if (atoms_.empty() && segments_.empty())
        throw std::invalid_argument("Measure: empty measure");

    // Canonical order, then merge coinciding pieces by adding masses.
    std::sort(atoms_.begin(), atoms_.end(),
              [](const AtomPiece& a, const AtomPiece& b) { return a.at < b.at; });
    std::vector<AtomPiece> merged_atoms;
    for (auto& a : atoms_) {
        if (!merged_atoms.empty() && merged_atoms.back().at == a.at)
            merged_atoms.back().mass += a.mass;
        else
            merged_atoms.push_back(std::move(a));
    }
    atoms_ = std::move(merged_atoms);

    std::sort(segments_.begin(), segments_.end(), [](const SegmentPiece& a, const SegmentPiece& b) {
        Vec alo = canonical_lo(a), blo = canonical_lo(b);
        if (alo < blo) return true;
        if (blo < alo) return false;
        return canonical_hi(a) < canonical_hi(b);
    });
    std::vector<SegmentPiece> merged_segments;
    for (auto& s : segments_) {
        if (!merged_segments.empty() &&
            canonical_lo(merged_segments.back()) == canonical_lo(s) &&
            canonical_hi(merged_segments.back()) == canonical_hi(s)) {
            merged_segments.back().mass += s.mass;
        } else {
            merged_segments.push_back(std::move(s));
        }
    }
    segments_ = std::move(merged_segments);

    // Distinct segments may intersect in at most finitely many points, so a
    // shared piece of positive length is rejected.
    for (size_t i = 0; i < segments_.size(); ++i) {
        for (size_t j = i + 1; j < segments_.size(); ++j) {
            const auto& a = segments_[i];
            const auto& b = segments_[j];
            if (!segments_parallel(a, b) || !points_collinear_with(a, b.from)) continue;
            if (positive_overlap(a, b))
                throw std::invalid_argument("Measure: segments overlap in positive length");
        }
    }
}

ExactScalar Measure::total_mass() const {
    ExactScalar t = 0;
    for (const auto& a : atoms_) t += a.mass;
    for (const auto& s : segments_) t += s.mass;
    return t;
}

std::pair<Measure, ExactScalar> Measure::normalized() const {
    ExactScalar factor = total_mass();
    Measure m = *this;
    for (auto& a : m.atoms_) a.mass = a.mass / factor;
    for (auto& s : m.segments_) s.mass = s.mass / factor;
    return {std::move(m), factor};
}

double sinc(double x) {
    double px = std::numbers::pi * x;
    if (std::abs(x) < 1e-8) {
        double p2 = px * px;
        return 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
    }
    return std::sin(px) / px;
}

FourierEvaluator::FourierEvaluator(const Measure& m)
    : dim_(m.dim()), total_mass_(m.total_mass().to_double()) {
    atoms_.reserve(m.atoms().size());
    for (const auto& a : m.atoms()) {
        FlatAtom fa{};
        auto p = a.at.to_doubles();
        std::copy(p.begin(), p.end(), fa.pos);
        fa.mass = a.mass.to_double();
        atoms_.push_back(fa);
    }
    segments_.reserve(m.segments().size());
    for (const auto& s : m.segments()) {
        FlatSegment fs{};
        auto f = s.from.to_doubles();
        auto t = s.to.to_doubles();
        for (int i = 0; i < dim_; ++i) {
            fs.mid[i] = 0.5 * (f[i] + t[i]);
            fs.delta[i] = t[i] - f[i];
        }
        fs.mass = s.mass.to_double();
        segments_.push_back(fs);
    }
}

std::complex<double> FourierEvaluator::operator()(std::span<const double> xi) const {
    if (static_cast<int>(xi.size()) != dim_)
        throw std::invalid_argument("fourier_eval: dimension mismatch");
    std::complex<double> acc{0.0, 0.0};
    for (const auto& a : atoms_) {
        double phase = 0.0;
        for (int i = 0; i < dim_; ++i) phase += xi[i] * a.pos[i];
        acc += a.mass * std::polar(1.0, -kTwoPi * phase);
    }
    for (const auto& s : segments_) {
        // mass * e^{-2 pi i <xi, mid>} * sinc(<xi, to - from>)
        double phase = 0.0, arg = 0.0;
        for (int i = 0; i < dim_; ++i) {
            phase += xi[i] * s.mid[i];
            arg += xi[i] * s.delta[i];
        }
        acc += s.mass * sinc(arg) * std::polar(1.0, -kTwoPi * phase);
    }
    return acc;
}

std::complex<double> FourierEvaluator::operator()(const Vec& xi) const {
    auto d = xi.to_doubles();
    return (*this)(std::span<const double>(d));
}

std::complex<double> fourier_eval(const Measure& m, std::span<const double> xi) {
    return FourierEvaluator(m)(xi);
}

std::complex<double> fourier_eval(const Measure& m, const Vec& xi) {
    return FourierEvaluator(m)(xi);
}

Measure affine_pushforward(const Measure& m, const Mat2& A, const Vec& b) {
    if (m.dim() != 2) throw std::invalid_argument("affine_pushforward: need dimension 2");
    if (A.det().is_zero()) throw std::domain_error("affine_pushforward: singular matrix");
    std::vector<AtomPiece> atoms;
    atoms.reserve(m.atoms().size());
    for (const auto& a : m.atoms()) atoms.push_back({A.apply(a.at) + b, a.mass});
    std::vector<SegmentPiece> segments;
    segments.reserve(m.segments().size());
    for (const auto& s : m.segments())
        segments.push_back({A.apply(s.from) + b, A.apply(s.to) + b, s.mass});
    return Measure(2, std::move(atoms), std::move(segments));
}

Measure convolve(const Measure& m1, const Measure& m2) {
    if (m1.dim() != m2.dim()) throw std::invalid_argument("convolve: dimension mismatch");
    const Measure* atomic = nullptr;
    const Measure* other = nullptr;
    if (m1.segments().empty()) {
        atomic = &m1;
        other = &m2;
    } else if (m2.segments().empty()) {
        atomic = &m2;
        other = &m1;
    } else {
        throw std::invalid_argument(
            "convolve: segment*segment is unsupported (leaves the segment-measure class)");
    }
    std::vector<AtomPiece> atoms;
    std::vector<SegmentPiece> segments;
    for (const auto& a : atomic->atoms()) {
        for (const auto& b : other->atoms()) atoms.push_back({a.at + b.at, a.mass * b.mass});
        for (const auto& s : other->segments())
            segments.push_back({a.at + s.from, a.at + s.to, a.mass * s.mass});
    }
    return Measure(atomic->dim(), std::move(atoms), std::move(segments));
}

int MultiplicityMap::max_multiplicity() const {
    int mx = 0;
    for (int c : counts) mx = std::max(mx, c);
    return mx;
}

int MultiplicityMap::multiplicity_at(const ExactScalar& x) const {
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i] < x && x < breakpoints[i + 1]) return counts[i];
    return 0;
}

UnitDir unit_direction(const Vec& v) {
    if (v.is_zero()) throw std::invalid_argument("unit_direction: zero vector");
    if (auto len = try_sqrt(norm2(v))) {
        Vec u = v;
        for (int i = 0; i < v.dim(); ++i) u[i] = v[i] / *len;
        return {u, true};
    }
    double len = std::sqrt(norm2(v).to_double());
    Vec u = v;
    for (int i = 0; i < v.dim(); ++i)
        u[i] = ExactScalar(rational_from_double(v[i].to_double() / len));
    return {u, false};
}

ProjectionResult project_to_line(const Measure& m, const LineDir& line) {
    if (m.dim() != 2) throw std::invalid_argument("project_to_line: need dimension 2");
    UnitDir ud = unit_direction(line.direction);

    std::vector<Shadow> shadows;
    std::vector<AtomPiece> atoms1d;
    struct RawPiece {
        ExactScalar lo, hi;
        ExactScalar density;  // mass per unit projected length
    };
    std::vector<RawPiece> raw;

    for (size_t i = 0; i < m.atoms().size(); ++i) {
        const auto& a = m.atoms()[i];
        ExactScalar x = dot(a.at, ud.u);
        shadows.push_back({true, static_cast<int>(i), false, x, x});
        atoms1d.push_back({Vec(std::vector<ExactScalar>{x}), a.mass});
    }
    for (size_t i = 0; i < m.segments().size(); ++i) {
        const auto& s = m.segments()[i];
        ExactScalar a = dot(s.from, ud.u);
        ExactScalar b = dot(s.to, ud.u);
        if (a == b) {
            // Perpendicular to the line: the whole mass lands on one point.
            shadows.push_back({false, static_cast<int>(i), true, a, a});
            atoms1d.push_back({Vec(std::vector<ExactScalar>{a}), s.mass});
            continue;
        }
        ExactScalar lo = a < b ? a : b;
        ExactScalar hi = a < b ? b : a;
        shadows.push_back({false, static_cast<int>(i), false, lo, hi});
        raw.push_back({lo, hi, s.mass / (hi - lo)});
    }

    // Split everything at the union of shadow endpoints. Between consecutive
    // breakpoints each raw piece contributes a constant density, so coinciding
    // split pieces merge into valid uniform segments.
    std::vector<ExactScalar> breaks;
    for (const auto& p : raw) {
        breaks.push_back(p.lo);
        breaks.push_back(p.hi);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<SegmentPiece> segs1d;
    std::vector<int> counts;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        const ExactScalar& lo = breaks[i];
        const ExactScalar& hi = breaks[i + 1];
        ExactScalar density = 0;
        int cover = 0;
        for (const auto& p : raw) {
            if (p.lo <= lo && hi <= p.hi) {
                density += p.density;
                ++cover;
            }
        }
        counts.push_back(cover);
        if (cover > 0) {
            segs1d.push_back({Vec(std::vector<ExactScalar>{lo}),
                              Vec(std::vector<ExactScalar>{hi}), density * (hi - lo)});
        }
    }

    MultiplicityMap mult{std::move(breaks), std::move(counts)};
    Measure line_measure(1, std::move(atoms1d), std::move(segs1d));
    return {std::move(line_measure), std::move(shadows), std::move(mult), ud.exact};
}

}  // namespace segspec

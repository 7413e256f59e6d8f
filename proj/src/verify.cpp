#include "segspec/verify.hpp"

#include "segspec/zeros.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <thread>

namespace segspec {

namespace {

int env_threads() {
    if (const char* v = std::getenv("SEGSPEC_THREADS")) {
        int n = std::atoi(v);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

// Deterministic parallel loop: every index writes only its own slots.
void parallel_for(long n, const std::function<void(long)>& body) {
    int threads = env_threads();
    if (threads <= 1 || n < 4) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Integer solutions of a n^2 + b n + c <= 0 with a > 0.
std::optional<std::pair<long long, long long>> quad_range(const ExactScalar& a,
                                                          const ExactScalar& b,
                                                          const ExactScalar& c) {
    ExactScalar disc = b * b - ExactScalar(4) * a * c;
    if (disc.sign() < 0) return std::nullopt;
    double ad = a.to_double(), bd = b.to_double(), dd = std::sqrt(std::max(0.0, disc.to_double()));
    auto ok = [&](long long n) {
        ExactScalar en{Rational(n)};
        return ((a * en + b) * en + c).sign() <= 0;
    };
    long long lo = static_cast<long long>(std::ceil((-bd - dd) / (2 * ad))) - 2;
    long long hi = static_cast<long long>(std::floor((-bd + dd) / (2 * ad))) + 2;
    while (lo <= hi && !ok(lo)) ++lo;
    while (lo <= hi && !ok(hi)) --hi;
    if (lo > hi) return std::nullopt;
    while (ok(lo - 1)) --lo;
    while (ok(hi + 1)) ++hi;
    return std::make_pair(lo, hi);
}

struct DiffItem {
    Vec diff, wa, wb;
};

// Distinct nonzero differences of the spectrum points in B(0, radius), each
// with one witness pair. Rank-1 spectra are enumerated structurally (the
// coefficient sets are integer intervals), so huge point sets stay cheap.
std::vector<DiffItem> distinct_differences(const SpectrumSpec& s, double radius,
                                           long* points_out) {
    Vec zero = Vec::zero(s.dim());
    std::vector<DiffItem> items;

    if (s.rank() == 1) {
        const Vec& g = s.lattice()[0];
        ExactScalar r2{rational_from_double(radius)};
        r2 = r2 * r2;
        ExactScalar gg = dot(g, g);
        struct Range {
            long long lo = 0, hi = -1;
        };
        std::vector<Range> ranges(s.offsets().size());
        long points = 0;
        for (size_t i = 0; i < s.offsets().size(); ++i) {
            const Vec& o = s.offsets()[i];
            auto rg = quad_range(gg, ExactScalar(2) * dot(o, g), norm2(o) - r2);
            if (rg) {
                ranges[i] = {rg->first, rg->second};
                points += rg->second - rg->first + 1;
            }
        }
        if (points_out) *points_out = points;

        // Group offset pairs by the difference reduced mod g, so duplicates
        // are integer collisions inside one group.
        struct Group {
            Vec base;                       // reduced base
            std::set<long long> emitted;    // lattice coefficients
        };
        std::vector<Group> groups;
        const auto& offs = s.offsets();
        for (size_t i = 0; i < offs.size(); ++i) {
            if (ranges[i].lo > ranges[i].hi) continue;
            for (size_t j = 0; j < offs.size(); ++j) {
                if (ranges[j].lo > ranges[j].hi) continue;
                Vec base = offs[i] - offs[j];
                ExactScalar t = dot(base, g) / gg;
                long long shift = static_cast<long long>(t.floor().convert_to<long long>());
                Vec base_red = base - ExactScalar(Rational(shift)) * g;
                Group* grp = nullptr;
                for (auto& cand : groups)
                    if (cand.base == base_red) {
                        grp = &cand;
                        break;
                    }
                if (!grp) {
                    groups.push_back({base_red, {}});
                    grp = &groups.back();
                }
                bool base_is_zero = base_red.is_zero();
                for (long long c = ranges[i].lo - ranges[j].hi; c <= ranges[i].hi - ranges[j].lo;
                     ++c) {
                    long long cprime = c + shift;
                    if (base_is_zero && cprime == 0) continue;
                    if (!grp->emitted.insert(cprime).second) continue;
                    long long n = std::max(ranges[i].lo, ranges[j].lo + c);
                    Vec wa = offs[i] + ExactScalar(Rational(n)) * g;
                    Vec wb = offs[j] + ExactScalar(Rational(n - c)) * g;
                    items.push_back(
                        {base_red + ExactScalar(Rational(cprime)) * g, std::move(wa), std::move(wb)});
                }
            }
        }
        return items;
    }

    std::vector<Vec> pts = s.points_in_ball(zero, radius);
    if (points_out) *points_out = static_cast<long>(pts.size());
    std::set<Vec> seen;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            Vec d = pts[i] - pts[j];
            if (seen.insert(d).second) items.push_back({std::move(d), pts[i], pts[j]});
        }
    return items;
}

}  // namespace

VerificationReport check_orthogonality(const Measure& m, const SpectrumSpec& s, double radius,
                                       double tol) {
    if (radius <= 0) throw std::invalid_argument("check_orthogonality: radius must be positive");
    if (tol <= 0) throw std::invalid_argument("check_orthogonality: tol must be positive");
    if (m.dim() != s.dim()) throw std::invalid_argument("check_orthogonality: dimension mismatch");

    VerificationReport rep;
    rep.tol = tol;
    rep.radius = radius;
    auto [prob, factor] = m.normalized();
    rep.normalization_factor = factor;
    FourierEvaluator F(prob);
    std::optional<CrossConfig> cross = as_cross_config(prob);
    ExactScalar inv_sigma{1};
    if (cross && cross->provenance) inv_sigma = ExactScalar(1) / cross->provenance->A.a();

    std::vector<DiffItem> diffs = distinct_differences(s, radius, &rep.points_enumerated);
    rep.differences_checked = static_cast<long>(diffs.size());

    std::vector<char> bad(diffs.size(), 0);
    std::vector<double> vals(diffs.size(), 0.0);
    parallel_for(static_cast<long>(diffs.size()), [&](long i) {
        const DiffItem& d = diffs[i];
        if (cross) {
            auto mem = cross_zero_membership(*cross, inv_sigma * d.diff, tol);
            vals[i] = mem.value;
            bad[i] = !mem.member;
        } else {
            double v = std::abs(F(d.diff));
            vals[i] = v;
            bad[i] = v > tol;
        }
    });
    for (size_t i = 0; i < diffs.size(); ++i)
        if (bad[i]) rep.violations.push_back({diffs[i].wa, diffs[i].wb, vals[i]});
    rep.verdict = rep.violations.empty() ? Verdict::Pass : Verdict::Fail;
    return rep;
}

std::vector<std::vector<double>> unit_grid(int dim, int n) {
    if (dim < 1 || dim > 2 || n < 1) throw std::invalid_argument("unit_grid: bad arguments");
    std::vector<std::vector<double>> xs;
    if (dim == 1) {
        for (int i = 0; i < n; ++i) xs.push_back({(i + 0.5) / n});
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) xs.push_back({(i + 0.5) / n, (j + 0.5) / n});
    }
    return xs;
}

VerificationReport completeness_curve(const Measure& m, const SpectrumSpec& s,
                                      const std::vector<std::vector<double>>& xs,
                                      std::vector<double> radii, bool orthogonality_passed) {
    if (xs.empty() || radii.empty())
        throw std::invalid_argument("completeness_curve: need samples and radii");
    std::sort(radii.begin(), radii.end());
    VerificationReport rep;
    rep.radius = radii.back();
    auto [prob, factor] = m.normalized();
    rep.normalization_factor = factor;
    FourierEvaluator F(prob);

    // Deterministic order: points sorted by |lambda| with cached keys (the
    // exact comparison only breaks float ties).
    std::vector<Vec> pts = s.points_in_ball(Vec::zero(s.dim()), radii.back());
    rep.points_enumerated = static_cast<long>(pts.size());
    std::vector<std::vector<double>> coords;
    coords.reserve(pts.size());
    std::vector<double> norms;
    norms.reserve(pts.size());
    for (const auto& p : pts) {
        coords.push_back(p.to_doubles());
        double n2 = 0.0;
        for (double c : coords.back()) n2 += c * c;
        norms.push_back(std::sqrt(n2));
    }
    std::vector<size_t> order(pts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (std::abs(norms[a] - norms[b]) > 1e-12) return norms[a] < norms[b];
        if (coords[a] != coords[b]) return coords[a] < coords[b];
        return pts[a] < pts[b];
    });
    {
        std::vector<std::vector<double>> coords2(coords.size());
        std::vector<double> norms2(norms.size());
        for (size_t i = 0; i < order.size(); ++i) {
            coords2[i] = std::move(coords[order[i]]);
            norms2[i] = norms[order[i]];
        }
        coords = std::move(coords2);
        norms = std::move(norms2);
    }

    rep.completeness_samples.resize(xs.size() * radii.size());
    parallel_for(static_cast<long>(xs.size()), [&](long xi) {
        const auto& x = xs[xi];
        double sum = 0.0;
        size_t pi = 0;
        std::vector<double> arg(x.size());
        for (size_t ri = 0; ri < radii.size(); ++ri) {
            double R = radii[ri];
            for (; pi < coords.size() && norms[pi] <= R + 1e-12; ++pi) {
                for (size_t k = 0; k < x.size(); ++k) arg[k] = x[k] - coords[pi][k];
                double v = std::abs(F(std::span<const double>(arg)));
                sum += v * v;
            }
            rep.completeness_samples[xi * radii.size() + ri] = {x, R, sum};
        }
    });

    rep.bessel_max = 0.0;
    for (const auto& cs : rep.completeness_samples)
        rep.bessel_max = std::max(rep.bessel_max, cs.sum);

    const double bessel_cap = 1.0 + 1e-9;
    if (rep.bessel_max > bessel_cap) {
        rep.verdict = Verdict::Fail;
        rep.note = "Bessel bound violated";
        return rep;
    }
    if (!orthogonality_passed) {
        rep.verdict = Verdict::Inconclusive;
        rep.note = "diagnostic only: orthogonality did not pass";
        return rep;
    }

    // Fit C0 at the smallest radius; the truncation gap decays like C0/R for a
    // genuine spectrum, while an incomplete system plateaus.
    double c0 = 1.0;
    for (size_t xi = 0; xi < xs.size(); ++xi) {
        double s_first = rep.completeness_samples[xi * radii.size()].sum;
        c0 = std::max(c0, (1.0 - s_first) * radii.front());
    }
    bool all_pass = true, plateau = false;
    for (size_t xi = 0; xi < xs.size(); ++xi) {
        double s_last = rep.completeness_samples[(xi + 1) * radii.size() - 1].sum;
        double gap_last = 1.0 - s_last;
        if (gap_last > 2.0 * c0 / radii.back() + 1e-9) all_pass = false;
        if (radii.size() >= 2 && gap_last > 0.02) {
            double s_prev = rep.completeness_samples[(xi + 1) * radii.size() - 2].sum;
            if ((1.0 - s_prev) <= gap_last * 1.3) plateau = true;
        }
    }
    rep.verdict = all_pass ? Verdict::Pass : (plateau ? Verdict::Fail : Verdict::Inconclusive);
    if (plateau) rep.note = "completeness plateau below one";
    return rep;
}

TilingCheck check_tiling_1d(const PeriodicSet1D& s, const ExactScalar& T,
                            const ExactScalar& target, int grid, double tail_target) {
    if (T.sign() <= 0) throw std::invalid_argument("check_tiling_1d: T must be positive");
    if (grid < 1) throw std::invalid_argument("check_tiling_1d: grid must be positive");
    const ExactScalar& p = s.period;
    const double pd = p.to_double();
    const double Td = T.to_double();
    const double target_d = target.to_double();
    TilingCheck out;
    out.closed_form = (T * p).is_integer();

    long K = 0;
    if (!out.closed_form) {
        double mcount = static_cast<double>(s.offsets.size());
        double denom = std::numbers::pi * std::numbers::pi * pd * pd * tail_target;
        K = 1 + static_cast<long>(std::ceil(2.0 * mcount / denom));
        out.tail_bound = 2.0 * mcount /
                         (std::numbers::pi * std::numbers::pi * pd * pd * static_cast<double>(K - 1));
    }

    double max_dev = 0.0;
    bool pass = true;
    for (int gi = 0; gi < grid; ++gi) {
        ExactScalar x = p * ExactScalar(Rational(2 * gi + 1, 2 * grid));
        double sum = 0.0;
        double dev = 0.0;
        if (out.closed_form) {
            // T*p integral: sin^2(pi T y) is n-independent and the lattice sum
            // of 1/(pi(y - np))^2 collapses to 1/(p sin(pi y/p))^2.
            for (const auto& a : s.offsets) {
                ExactScalar y = x - a;
                if ((y / p).is_integer()) {
                    sum += Td * Td;
                    continue;
                }
                double yd = y.to_double();
                double num = std::sin(std::numbers::pi * Td * yd);
                double den = pd * std::sin(std::numbers::pi * yd / pd);
                sum += num * num / (den * den);
            }
            dev = std::abs(sum - target_d);
        } else {
            for (const auto& a : s.offsets) {
                double base = (x - a).to_double();
                for (long k = -K; k <= K; ++k) {
                    double v = Td * sinc(Td * (base - static_cast<double>(k) * pd));
                    sum += v * v;
                }
            }
            // The exact value lies in [sum, sum + tail_bound].
            if (target_d < sum) dev = sum - target_d;
            if (target_d > sum + out.tail_bound) dev = target_d - (sum + out.tail_bound);
        }
        max_dev = std::max(max_dev, dev);
        if (dev > 1e-9 * std::max(1.0, std::abs(target_d))) pass = false;
    }
    out.max_deviation = max_dev;
    out.pass = pass;
    return out;
}

PeriodicSet1D canonical_period(std::vector<ExactScalar> offsets, const ExactScalar& T,
                               const ExactScalar& w) {
    if (T.sign() <= 0 || w.sign() <= 0)
        throw std::invalid_argument("canonical_period: T and w must be positive");
    if (offsets.empty()) throw std::invalid_argument("canonical_period: need offsets");
    ExactScalar m{Rational(static_cast<long>(offsets.size()))};
    ExactScalar period = m * T / (ExactScalar(2) * w);
    for (auto& o : offsets) {
        ExactScalar q = o / period;
        o = o - ExactScalar(Rational(q.floor())) * period;
    }
    return PeriodicSet1D(std::move(offsets), period);
}

TilerClassification classify_periodic_tiler(std::vector<ExactScalar> offsets,
                                            const ExactScalar& T, double tol) {
    std::sort(offsets.begin(), offsets.end());
    if (offsets.empty() || !offsets.front().is_zero())
        throw std::invalid_argument("classify_periodic_tiler: offsets must start at 0");
    if (T < ExactScalar(1))
        throw std::invalid_argument("classify_periodic_tiler: requires T >= 1");
    TilerClassification out;
    if (offsets.size() % 2 != 0) {
        out.form = TilerForm::OutOfScopeOddCount;
        return out;
    }
    const int m = static_cast<int>(offsets.size()) / 2;
    for (const auto& o : offsets)
        if (o.sign() < 0 || o >= ExactScalar(m))
            throw std::invalid_argument("classify_periodic_tiler: offsets must lie in [0, m)");

    const bool strict = T > ExactScalar(1);
    std::vector<std::complex<double>> roots;
    roots.reserve(offsets.size());
    for (const auto& o : offsets)
        roots.push_back(std::polar(1.0, 2.0 * std::numbers::pi * o.to_double() / m));

    std::vector<std::complex<double>> power(2 * m + 1);
    for (int k = 1; k <= 2 * m; ++k) {
        std::complex<double> pk{0.0, 0.0};
        for (const auto& u : roots) pk += std::pow(u, k);
        power[k] = pk;
    }
    const int k_max = strict ? m : m - 1;
    bool vanish = true;
    for (int k = 1; k <= k_max; ++k) {
        out.power_sum_magnitudes.push_back(std::abs(power[k]));
        if (std::abs(power[k]) > tol) vanish = false;
    }
    if (!vanish) {
        out.form = TilerForm::Reject;
        return out;
    }

    if (strict) {
        for (int j = 0; j < 2 * m; ++j) {
            if (offsets[j] != ExactScalar(Rational(j, 2))) {
                out.form = TilerForm::Reject;
                return out;
            }
        }
        out.form = TilerForm::HalfIntegers;
        out.alpha = ExactScalar(Rational(1, 2));
    } else {
        ExactScalar alpha = offsets.size() > 1 ? offsets[1] : ExactScalar(0);
        if (m >= 1 && (alpha.sign() <= 0 || alpha >= ExactScalar(1))) {
            out.form = TilerForm::Reject;
            return out;
        }
        for (int j = 0; j < m; ++j) {
            if (offsets[2 * j] != ExactScalar(j) || offsets[2 * j + 1] != ExactScalar(j) + alpha) {
                out.form = TilerForm::Reject;
                return out;
            }
        }
        out.form = TilerForm::TwoOffsetsPlusZ;
        out.alpha = alpha;
    }

    // Independent cross-check: rebuild the elementary symmetric functions via
    // the Newton identities and confirm the roots satisfy
    // x^{2m} + (-1)^m e_m x^m + e_{2m} = 0.
    std::vector<std::complex<double>> e(2 * m + 1);
    e[0] = 1.0;
    for (int k = 1; k <= 2 * m; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int i = 1; i <= k; ++i) {
            double sgn = (i % 2 == 1) ? 1.0 : -1.0;
            acc += sgn * e[k - i] * power[i];
        }
        e[k] = acc / static_cast<double>(k);
    }
    double msign = (m % 2 == 0) ? 1.0 : -1.0;
    bool consistent = true;
    for (const auto& u : roots) {
        std::complex<double> val = std::pow(u, 2 * m) + msign * e[m] * std::pow(u, m) + e[2 * m];
        if (std::abs(val) > 1e-8) consistent = false;
    }
    out.newton_consistent = consistent;
    return out;
}

namespace {

struct ShadowIv {
    ExactScalar lo, hi;
};

// Exact shadows of all segments along w; nullopt when a segment collapses.
std::optional<std::vector<ShadowIv>> segment_shadows(const Measure& m, const Vec& w) {
    std::vector<ShadowIv> out;
    out.reserve(m.segments().size());
    for (const auto& seg : m.segments()) {
        ExactScalar a = dot(seg.from, w), b = dot(seg.to, w);
        if (a == b) return std::nullopt;
        out.push_back(a < b ? ShadowIv{a, b} : ShadowIv{b, a});
    }
    return out;
}

}  // namespace

bool projection_injective_ae(const Measure& m, const Vec& direction) {
    if (m.dim() != 2) throw std::invalid_argument("projection_injective_ae: need dimension 2");
    if (!m.atoms().empty()) throw std::invalid_argument("projection_injective_ae: segments only");
    if (direction.is_zero()) throw std::invalid_argument("projection_injective_ae: zero direction");
    auto shadows = segment_shadows(m, direction);
    if (!shadows) return false;  // a collapsed segment sends positive mass to one point
    for (size_t i = 0; i < shadows->size(); ++i)
        for (size_t j = i + 1; j < shadows->size(); ++j) {
            const auto& a = (*shadows)[i];
            const auto& b = (*shadows)[j];
            ExactScalar lo = a.lo > b.lo ? a.lo : b.lo;
            ExactScalar hi = a.hi < b.hi ? a.hi : b.hi;
            if (lo < hi) return false;
        }
    return true;
}

bool AngleIntervalSet::empty() const {
    if (!arcs.empty()) return false;
    for (const auto& c : critical)
        if (c.injective) return false;
    return true;
}

namespace {

// Canonical projective representative: first nonzero coordinate scaled to 1.
Vec projective_canonical(const Vec& v) {
    for (int i = 0; i < v.dim(); ++i)
        if (!v[i].is_zero()) {
            Vec r = v;
            ExactScalar c = v[i];
            for (int j = 0; j < v.dim(); ++j) r[j] = v[j] / c;
            return r;
        }
    throw std::invalid_argument("projective_canonical: zero vector");
}

double angle_mod_pi(const Vec& v) {
    double th = std::atan2(v[1].to_double(), v[0].to_double());
    if (th < 0) th += std::numbers::pi;
    if (th >= std::numbers::pi) th -= std::numbers::pi;
    return th;
}

// Rationalized direction at angle theta, verified (exactly) to lie strictly
// between a and b counterclockwise. theta may exceed pi for wrapped gaps.
Vec direction_between(const Vec& a, const Vec& b, double theta) {
    for (long den : {1L << 12, 1L << 20, 1L << 30}) {
        Vec u(ExactScalar(Rational(std::llround(std::cos(theta) * static_cast<double>(den)), den)),
              ExactScalar(Rational(std::llround(std::sin(theta) * static_cast<double>(den)), den)));
        if (u.is_zero()) continue;
        if (cross2(a, u).sign() > 0 && cross2(u, b).sign() > 0) return u;
    }
    throw std::logic_error("direction_between: rationalization failed");
}

}  // namespace

AngleIntervalSet injectivity_scan(const Measure& m) {
    if (m.dim() != 2) throw std::invalid_argument("injectivity_scan: need dimension 2");
    if (!m.atoms().empty()) throw std::invalid_argument("injectivity_scan: segments only");

    // Critical directions are the perpendiculars of endpoint differences: the
    // shadow endpoints of two support points collide exactly there. Between
    // consecutive critical directions the overlap pattern is constant.
    std::vector<Vec> endpoints;
    for (const auto& s : m.segments()) {
        endpoints.push_back(s.from);
        endpoints.push_back(s.to);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

    std::vector<Vec> dirs;
    for (size_t i = 0; i < endpoints.size(); ++i)
        for (size_t j = i + 1; j < endpoints.size(); ++j)
            dirs.push_back(projective_canonical(rot90(endpoints[i] - endpoints[j])));
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

    // Upper-half-plane representatives ordered by angle (exact tie-break).
    for (auto& d : dirs)
        if (d[1].sign() < 0 || (d[1].is_zero() && d[0].sign() < 0)) d = -d;
    std::sort(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) {
        double ta = angle_mod_pi(a), tb = angle_mod_pi(b);
        if (std::abs(ta - tb) > 1e-9) return ta < tb;
        return cross2(a, b).sign() > 0;
    });

    AngleIntervalSet out;
    const int n = static_cast<int>(dirs.size());
    for (const auto& d : dirs)
        out.critical.push_back({angle_mod_pi(d), d, projection_injective_ae(m, d)});

    std::vector<bool> gap_injective(n, false);
    std::vector<Vec> gap_sample(n, Vec::zero(2));
    for (int i = 0; i < n; ++i) {
        double a = out.critical[i].theta;
        double b = (i + 1 < n) ? out.critical[i + 1].theta
                               : out.critical[0].theta + std::numbers::pi;
        Vec hi = (i + 1 < n) ? dirs[i + 1] : -dirs[0];
        Vec u = direction_between(dirs[i], hi, 0.5 * (a + b));
        gap_sample[i] = u;
        gap_injective[i] = projection_injective_ae(m, u);
    }

    // Maximal runs of injective gaps joined through injective critical angles.
    auto connects = [&](int gap_index) {  // gap i-1 joins gap i through critical i
        int prev = (gap_index + n - 1) % n;
        return gap_injective[prev] && out.critical[gap_index].injective;
    };
    std::vector<bool> used(n, false);
    for (int start = 0; start < n; ++start) {
        if (used[start] || !gap_injective[start]) continue;
        if (connects(start)) continue;  // middle of a run; it is picked up at its head
        int len = 1;
        used[start] = true;
        while (len < n) {
            int nxt = (start + len) % n;
            if (!gap_injective[nxt] || !out.critical[nxt].injective || used[nxt]) break;
            used[nxt] = true;
            ++len;
        }
        double begin_theta = out.critical[start].theta;
        int end_index = start + len;  // un-wrapped
        double end_theta = out.critical[end_index % n].theta +
                           std::numbers::pi * static_cast<double>(end_index / n);
        out.arcs.push_back({begin_theta, end_theta, gap_sample[start]});
    }
    // A measure with a segment always has that segment's collapse direction
    // non-injective, so a full-circle arc cannot occur; if every gap was
    // injective and connected we would have missed it above.
    bool any_started = !out.arcs.empty();
    if (!any_started && n > 0 && gap_injective[0]) {
        bool all = true;
        for (int i = 0; i < n; ++i)
            if (!gap_injective[i] || !out.critical[i].injective) all = false;
        if (all) throw std::logic_error("injectivity_scan: unexpected full-circle arc");
    }
    return out;
}

namespace {

// Gap/length ratios of the sorted shadows when the direction is injective and
// the projected lengths agree; nullopt otherwise.
std::optional<std::vector<ExactScalar>> gap_ratios_at(const Measure& m, const Vec& u) {
    auto shadows = segment_shadows(m, u);
    if (!shadows) return std::nullopt;
    std::sort(shadows->begin(), shadows->end(),
              [](const ShadowIv& a, const ShadowIv& b) { return a.lo < b.lo; });
    for (size_t i = 0; i + 1 < shadows->size(); ++i)
        if ((*shadows)[i + 1].lo < (*shadows)[i].hi) return std::nullopt;
    ExactScalar len = (*shadows)[0].hi - (*shadows)[0].lo;
    for (const auto& sh : *shadows)
        if (sh.hi - sh.lo != len) return std::nullopt;
    std::vector<ExactScalar> ratios;
    for (size_t i = 0; i + 1 < shadows->size(); ++i)
        ratios.push_back(((*shadows)[i + 1].lo - (*shadows)[i].hi) / len);
    return ratios;
}

void require_equal_density_all(const Measure& m) {
    const auto& segs = m.segments();
    for (size_t i = 1; i < segs.size(); ++i) {
        if (segs[0].mass * segs[0].mass * segs[i].length2() !=
            segs[i].mass * segs[i].mass * segs[0].length2())
            throw std::invalid_argument("line_spectrum_feasibility: equal density required");
    }
}

bool all_nonneg_integers(const std::vector<ExactScalar>& rs) {
    for (const auto& r : rs)
        if (!r.is_integer() || r.sign() < 0) return false;
    return true;
}

}  // namespace

FeasibilityReport line_spectrum_feasibility(const Measure& m, int max_gap_integer) {
    if (m.dim() != 2) throw std::invalid_argument("line_spectrum_feasibility: need dimension 2");
    if (!m.atoms().empty())
        throw std::invalid_argument("line_spectrum_feasibility: segments only");
    require_equal_density_all(m);
    FeasibilityReport rep;
    const auto& segs = m.segments();

    if (segs.size() == 1) {
        rep.status = FeasibilityStatus::Feasible;
        rep.directions.push_back({projective_canonical(segs[0].delta()), {}});
        return rep;
    }

    AngleIntervalSet scan = injectivity_scan(m);
    if (scan.empty()) {
        rep.status = FeasibilityStatus::NoInjectiveDirection;
        rep.obstruction = "no direction projects the support injectively";
        return rep;
    }

    if (segs.size() == 2) {
        ClassificationResult cls = classify_segment_pair(segs[0], segs[1]);
        if (cls.geometry == Geometry::NonParallel) {
            if (!cls.spectral) {
                rep.status = FeasibilityStatus::NoneFound;
                rep.obstruction = "projections onto the angle bisectors are not spectral";
                return rep;
            }
            const auto& c = std::get<CrossConfig>(cls.normalized->form);
            Mat2 At = c.provenance->A.transpose();
            ExactScalar sum = c.t1 + c.t2, diff = c.t1 - c.t2;
            bool minus_ok = c.equal_lengths() ? (sum.is_integer() && sum != ExactScalar(-1))
                                              : sum.is_even_integer();
            bool plus_ok = c.equal_lengths() ? (diff.is_integer() && !diff.is_zero())
                                             : (diff - c.T2).is_even_integer();
            if (minus_ok)
                rep.directions.push_back({projective_canonical(At.apply(Vec(1, -1))),
                                          {gap_ratio(c, BisectorLine::Minus)}});
            if (plus_ok)
                rep.directions.push_back({projective_canonical(At.apply(Vec(1, 1))),
                                          {gap_ratio(c, BisectorLine::Plus)}});
            rep.status = FeasibilityStatus::Feasible;
            return rep;
        }
        if (cls.geometry == Geometry::Collinear) {
            if (cls.spectral) {
                const auto& f = std::get<CollinearForm>(cls.normalized->form);
                rep.status = FeasibilityStatus::Feasible;
                rep.directions.push_back(
                    {projective_canonical(segs[0].delta()), {f.gap / ExactScalar(2)}});
            } else {
                rep.status = FeasibilityStatus::NoneFound;
                rep.obstruction = "collinear gap fails the integrality rule";
            }
            return rep;
        }
        // Parallel non-collinear: one direction per admissible normalized gap
        // n (any integer when the lengths agree, even integers otherwise).
        // The perpendicularity target carries the exact length scale
        // (1 + L2/L1)/2 so that n really is the gap in total-length-2 units.
        ExactScalar half(Rational(1, 2));
        Vec d1 = segs[0].delta(), d2 = segs[1].delta();
        ExactScalar ratio = d1[0].is_zero() ? (d2[1] / d1[1]).abs() : (d2[0] / d1[0]).abs();
        ExactScalar scale = half * (ExactScalar(1) + ratio) ;
        Vec w = half * (segs[1].from + segs[1].to) - half * (segs[0].from + segs[0].to);
        bool equal_len = segs[0].mass == segs[1].mass;
        for (int nn = 0; nn <= max_gap_integer; ++nn) {
            if (!equal_len && nn % 2 != 0) continue;
            Vec v = rot90(w - ExactScalar(nn + 1) * scale * d1);
            if (v.is_zero()) continue;
            if (!projection_injective_ae(m, v)) continue;
            rep.directions.push_back({projective_canonical(v), {ExactScalar(Rational(nn, 2))}});
        }
        rep.status = rep.directions.empty() ? FeasibilityStatus::NoneFound
                                            : FeasibilityStatus::Feasible;
        return rep;
    }

    // Three or more segments.
    bool all_parallel = true;
    for (size_t i = 1; i < segs.size(); ++i)
        if (!cross2(segs[0].delta(), segs[i].delta()).is_zero()) all_parallel = false;

    if (all_parallel) {
        bool equal_lengths = true;
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].mass != segs[0].mass) equal_lengths = false;
        if (!equal_lengths) {
            rep.status = FeasibilityStatus::Unsupported;
            rep.obstruction = "three or more parallel segments of unequal length";
            return rep;
        }
        Vec d = segs[0].delta();
        bool all_killed = !scan.arcs.empty();
        for (const auto& arc : scan.arcs) {
            // The shadow order is constant inside the arc; gaps are linear in
            // the direction.
            const Vec& u0 = arc.sample_direction;
            auto low_point = [&](size_t i) {
                return dot(segs[i].from, d) < dot(segs[i].to, d) ? segs[i].from : segs[i].to;
            };
            std::vector<size_t> order(segs.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                return dot(low_point(a), u0) < dot(low_point(b), u0);
            });
            std::vector<Vec> deltas;
            for (size_t i = 0; i + 1 < order.size(); ++i)
                deltas.push_back(low_point(order[i + 1]) - low_point(order[i]));

            // Direction-free invariant: when a difference of consecutive gap
            // vectors is parallel to the segments, the corresponding gap-ratio
            // difference is the constant c; a non-integer c rules the whole
            // arc out.
            std::optional<ExactScalar> killer;
            for (size_t i = 0; i < deltas.size() && !killer; ++i)
                for (size_t j = i + 1; j < deltas.size() && !killer; ++j) {
                    Vec dd = deltas[j] - deltas[i];
                    if (dd.is_zero() || !cross2(dd, d).is_zero()) continue;
                    ExactScalar c = d[0].is_zero() ? dd[1] / d[1] : dd[0] / d[0];
                    if (!c.is_integer()) killer = c.abs();
                }
            if (killer) {
                if (!rep.certificate) rep.certificate = killer;
                continue;
            }
            all_killed = false;
            // Solve gap_1(u)/len(u) = n for each candidate integer.
            for (int nn = 0; nn <= max_gap_integer; ++nn) {
                for (int sgn : {1, -1}) {
                    Vec v = rot90(deltas[0] - ExactScalar(sgn * (nn + 1)) * d);
                    if (v.is_zero()) continue;
                    auto ratios = gap_ratios_at(m, v);
                    if (ratios && all_nonneg_integers(*ratios))
                        rep.directions.push_back({projective_canonical(v), *ratios});
                }
            }
        }
        for (const auto& c : scan.critical) {
            if (!c.injective) continue;
            auto ratios = gap_ratios_at(m, c.direction);
            if (ratios && all_nonneg_integers(*ratios))
                rep.directions.push_back({c.direction, *ratios});
        }
        if (!rep.directions.empty()) {
            rep.status = FeasibilityStatus::Feasible;
            return rep;
        }
        if (all_killed && rep.certificate) {
            rep.status = FeasibilityStatus::IncommensurableGaps;
            rep.obstruction =
                "gap-ratio difference is a constant non-integer on every injective arc";
            return rep;
        }
        rep.status = FeasibilityStatus::NoneFound;
        rep.obstruction = "no integral gap configuration within the search bound";
        return rep;
    }

    // Mixed directions: equal projected density leaves finitely many candidate
    // directions, perpendicular to |d_j| d_i -+ |d_i| d_j for each pair.
    std::vector<Vec> candidates;
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            Vec di = segs[i].delta(), dj = segs[j].delta();
            if (cross2(di, dj).is_zero()) continue;
            auto li = try_sqrt(norm2(di)), lj = try_sqrt(norm2(dj));
            Vec a = Vec::zero(2), b = Vec::zero(2);
            if (li && lj) {
                a = *lj * di + *li * dj;
                b = *lj * di - *li * dj;
            } else {
                double lid = std::sqrt(norm2(di).to_double());
                double ljd = std::sqrt(norm2(dj).to_double());
                auto scale_approx = [&](const Vec& v, double c) {
                    return Vec(ExactScalar(rational_from_double(v[0].to_double() * c)),
                               ExactScalar(rational_from_double(v[1].to_double() * c)));
                };
                a = scale_approx(di, ljd) + scale_approx(dj, lid);
                b = scale_approx(di, ljd) - scale_approx(dj, lid);
            }
            for (const Vec* v : {&a, &b})
                if (!v->is_zero()) candidates.push_back(projective_canonical(rot90(*v)));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& u : candidates) {
        bool density_ok = true;
        for (size_t i = 1; i < segs.size() && density_ok; ++i) {
            ExactScalar p0 = dot(segs[0].delta(), u), pii = dot(segs[i].delta(), u);
            if (p0 * p0 * norm2(segs[i].delta()) != pii * pii * norm2(segs[0].delta()))
                density_ok = false;
        }
        if (!density_ok) continue;
        if (!projection_injective_ae(m, u)) continue;
        auto ratios = gap_ratios_at(m, u);
        if (ratios && all_nonneg_integers(*ratios)) rep.directions.push_back({u, *ratios});
    }
    rep.status =
        rep.directions.empty() ? FeasibilityStatus::NoneFound : FeasibilityStatus::Feasible;
    if (rep.directions.empty()) rep.obstruction = "no equal-density direction with integral gaps";
    return rep;
}

}  // namespace segspec

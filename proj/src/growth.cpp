#include "segspec/growth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <thread>

namespace segspec {

namespace {

void parallel_rows(long n, const std::function<void(long)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    int threads = hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
    if (const char* v = std::getenv("SEGSPEC_THREADS")) {
        int k = std::atoi(v);
        if (k >= 1) threads = k;
    }
    if (threads <= 1 || n < 4) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

std::pair<double, double> least_squares(const std::vector<double>& x,
                                        const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw std::domain_error("least_squares: degenerate regression");
    double slope = (n * sxy - sx * sy) / denom;
    return {slope, (sy - slope * sx) / n};
}

// Parameter cuts of a segment at every dyadic grid crossing of level `scale`.
std::vector<ExactScalar> grid_cuts(const SegmentPiece& s, const ExactScalar& scale, int dim) {
    std::vector<ExactScalar> cuts{ExactScalar(0), ExactScalar(1)};
    for (int i = 0; i < dim; ++i) {
        ExactScalar a = s.from[i] * scale, b = s.to[i] * scale;
        if (a == b) continue;
        ExactScalar lo = a < b ? a : b, hi = a < b ? b : a;
        for (Int k = lo.floor() + 1; ExactScalar(Rational(k)) <= hi; ++k) {
            ExactScalar t = (ExactScalar(Rational(k)) - a) / (b - a);
            if (t.sign() > 0 && t < ExactScalar(1)) cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

long count_in_ball(const SpectrumSpec& s, const Vec& center, double R) {
    return s.count_in_ball(center, R);
}

GrowthProfile growth_profile(const SpectrumSpec& s, double rmax, const std::vector<Vec>& centers,
                             int steps) {
    if (rmax < 1.0) throw std::invalid_argument("growth_profile: rmax must be >= 1");
    if (steps < 2) throw std::invalid_argument("growth_profile: need at least two radii");
    std::vector<Vec> cs = centers;
    if (cs.empty()) cs.push_back(Vec::zero(s.dim()));

    std::vector<double> radii;
    for (int i = 0; i < steps; ++i)
        radii.push_back(std::exp(std::log(rmax) * static_cast<double>(i) / (steps - 1)));

    GrowthProfile out;
    std::vector<double> first_counts;
    for (const auto& c : cs) {
        for (double R : radii) {
            long cnt = s.count_in_ball(c, R);
            out.samples.push_back({c.to_doubles(), R, cnt});
            if (&c == &cs.front()) first_counts.push_back(static_cast<double>(cnt));
            out.max_ratio = std::max(out.max_ratio, static_cast<double>(cnt) / R);
        }
    }
    auto [slope, intercept] = least_squares(radii, first_counts);
    out.slope = slope;
    out.intercept = intercept;

    // Ratio drift across the top decade of radii at the first center.
    double lo_ratio = 0.0, hi_ratio = 0.0;
    for (size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < rmax / 10.0) continue;
        double ratio = first_counts[i] / radii[i];
        if (lo_ratio == 0.0) lo_ratio = ratio;
        hi_ratio = ratio;
    }
    out.superlinear = lo_ratio > 0.0 && hi_ratio > 1.1 * lo_ratio;
    return out;
}

double fourier_energy(const Measure& m, double R, double grid_step) {
    if (R <= 0) throw std::invalid_argument("fourier_energy: R must be positive");
    if (grid_step <= 0 || grid_step > 0.1)
        throw std::invalid_argument("fourier_energy: grid_step must be in (0, 0.1]");
    FourierEvaluator F(m);
    const double h = grid_step;
    if (m.dim() == 1) {
        long n = static_cast<long>(std::floor(R / h)) + 1;
        double sum = 0.0;
        for (long i = -n; i <= n; ++i) {
            double t = (static_cast<double>(i) + 0.5) * h;
            if (std::abs(t) >= R) continue;
            double v = std::abs(F(std::span<const double>(&t, 1)));
            sum += v * v;
        }
        return sum * h;
    }
    long n = static_cast<long>(std::floor(R / h)) + 1;
    std::vector<double> row_sums(2 * n + 1, 0.0);
    parallel_rows(2 * n + 1, [&](long row) {
        long i = row - n;
        double x = (static_cast<double>(i) + 0.5) * h;
        if (x * x >= R * R) return;
        double sum = 0.0;
        double arg[2];
        double ymax = std::sqrt(R * R - x * x);
        long jmax = static_cast<long>(std::floor(ymax / h)) + 1;
        for (long j = -jmax; j <= jmax; ++j) {
            double y = (static_cast<double>(j) + 0.5) * h;
            if (x * x + y * y >= R * R) continue;
            arg[0] = x;
            arg[1] = y;
            double v = std::abs(F(std::span<const double>(arg, 2)));
            sum += v * v;
        }
        row_sums[row] = sum;
    });
    double total = 0.0;
    for (double v : row_sums) total += v;
    return total * h * h;
}

double default_energy_step(const Measure& m) {
    std::vector<Vec> pts;
    for (const auto& a : m.atoms()) pts.push_back(a.at);
    for (const auto& s : m.segments()) {
        pts.push_back(s.from);
        pts.push_back(s.to);
    }
    double diam = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            diam = std::max(diam, std::sqrt(norm2(pts[i] - pts[j]).to_double()));
    if (diam <= 0.0) return 0.05;
    return std::min(0.05, 1.0 / (4.0 * diam));
}

LevEstimate lev_exponent_estimate(const Measure& m, const std::vector<double>& radii,
                                  double grid_step) {
    if (radii.size() < 3)
        throw std::invalid_argument("lev_exponent_estimate: need at least three radii");
    std::vector<double> lx, ly, energies;
    for (double R : radii) {
        double e = fourier_energy(m, R, grid_step);
        if (e <= 0) throw std::domain_error("lev_exponent_estimate: vanishing energy");
        energies.push_back(e);
        lx.push_back(std::log(R));
        ly.push_back(std::log(e));
    }
    auto [slope, intercept] = least_squares(lx, ly);
    (void)intercept;
    LevEstimate out;
    out.slope = slope;
    out.alpha = static_cast<double>(m.dim()) - slope;
    out.saturated = energies.back() / energies.front() < 1.1;
    return out;
}

DyadicMasses dyadic_masses(const Measure& m, int level) {
    if (level < 0 || level > 40) throw std::invalid_argument("dyadic_masses: level out of range");
    auto [prob, factor] = m.normalized();
    (void)factor;
    ExactScalar scale{Rational(Int(1) << level)};
    DyadicMasses out;

    auto cell_of = [&](const Vec& p) {
        std::vector<long long> idx(p.dim());
        for (int i = 0; i < p.dim(); ++i)
            idx[i] = (p[i] * scale).floor().convert_to<long long>();
        return idx;
    };
    auto add = [&](std::vector<long long> idx, const ExactScalar& mass) {
        auto it = out.find(idx);
        if (it == out.end())
            out.emplace(std::move(idx), mass);
        else
            it->second += mass;
    };

    for (const auto& a : prob.atoms()) add(cell_of(a.at), a.mass);

    for (const auto& s : prob.segments()) {
        // Each open piece between grid crossings lies in one half-open cell,
        // identified by its midpoint.
        std::vector<ExactScalar> cuts = grid_cuts(s, scale, prob.dim());
        ExactScalar half(Rational(1, 2));
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            ExactScalar tm = half * (cuts[i] + cuts[i + 1]);
            Vec mid = s.from + tm * (s.to - s.from);
            add(cell_of(mid), (cuts[i + 1] - cuts[i]) * s.mass);
        }
    }
    return out;
}

double dyadic_entropy(const DyadicMasses& masses) {
    double h = 0.0;
    for (const auto& [idx, mass] : masses) {
        double p = mass.to_double();
        if (p > 0) h -= p * std::log2(p);
    }
    return h;
}

namespace {

// Occupied cells rescaled to the unit cube and normalized to probability,
// deduplicated up to translation (|FT| is translation invariant).
std::vector<Measure> rescaled_cells(const Measure& prob, int level) {
    ExactScalar scale{Rational(Int(1) << level)};
    std::map<std::string, std::vector<SegmentPiece>> by_cell;

    for (const auto& s : prob.segments()) {
        std::vector<ExactScalar> cuts = grid_cuts(s, scale, prob.dim());
        ExactScalar half(Rational(1, 2));
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            ExactScalar tm = half * (cuts[i] + cuts[i + 1]);
            Vec mid = s.from + tm * (s.to - s.from);
            std::vector<ExactScalar> corner(prob.dim());
            std::string cell_key;
            for (int c = 0; c < prob.dim(); ++c) {
                corner[c] = ExactScalar(Rational((mid[c] * scale).floor()));
                cell_key += corner[c].str() + ";";
            }
            Vec from = s.from + cuts[i] * (s.to - s.from);
            Vec to = s.from + cuts[i + 1] * (s.to - s.from);
            Vec rf = Vec::zero(prob.dim()), rt = Vec::zero(prob.dim());
            for (int c = 0; c < prob.dim(); ++c) {
                rf[c] = from[c] * scale - corner[c];
                rt[c] = to[c] * scale - corner[c];
            }
            by_cell[cell_key].push_back({rf, rt, (cuts[i + 1] - cuts[i]) * s.mass});
        }
    }

    std::map<std::string, Measure> deduped;
    for (auto& [cell_key, pieces] : by_cell) {
        Measure cell = Measure::segments_only(prob.dim(), pieces);
        auto [cprob, cf] = cell.normalized();
        (void)cf;
        Vec anchor = cprob.segments().front().from;
        std::string shape_key;
        for (const auto& sp : cprob.segments()) {
            Vec f = sp.from - anchor, t2 = sp.to - anchor;
            for (int c = 0; c < cprob.dim(); ++c)
                shape_key += f[c].str() + "," + t2[c].str() + ",";
            shape_key += sp.mass.str() + "|";
        }
        deduped.emplace(std::move(shape_key), std::move(cprob));
    }
    std::vector<Measure> out;
    out.reserve(deduped.size());
    for (auto& [k, v] : deduped) out.push_back(std::move(v));
    return out;
}

double min_cell_transform_on_ball(const std::vector<Measure>& cells, double delta) {
    double worst = 1e300;
    for (const auto& cell : cells) {
        FourierEvaluator F(cell);
        for (int dir = 0; dir < 16; ++dir) {
            double th = std::numbers::pi * dir / 8.0;
            for (double frac : {0.35, 0.7, 1.0}) {
                double arg[2] = {delta * frac * std::cos(th), delta * frac * std::sin(th)};
                worst = std::min(worst, std::abs(F(std::span<const double>(arg, cell.dim()))));
                if (cell.dim() == 1) break;
            }
        }
    }
    return worst;
}

}  // namespace

EntropyBoundReport entropy_bound_check(const Measure& m, const SpectrumSpec& s,
                                       const std::vector<double>& hs, double epsilon,
                                       unsigned seed) {
    if (epsilon <= 0.0 || epsilon >= 1.0)
        throw std::invalid_argument("entropy_bound_check: epsilon must be in (0,1)");
    if (hs.empty()) throw std::invalid_argument("entropy_bound_check: need radii");
    auto [prob, factor] = m.normalized();
    (void)factor;

    EntropyBoundReport rep;
    rep.epsilon = epsilon;

    std::vector<double> hs_sorted = hs;
    std::sort(hs_sorted.begin(), hs_sorted.end());

    // varrho depends on delta and delta is probed at the levels varrho
    // selects; iterate to a fixed point (a couple of rounds in practice).
    int varrho = 1;
    double delta = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        int max_level = 0;
        for (double h : hs_sorted) {
            int nh = static_cast<int>(std::ceil(std::log2(std::max(1.0, h))));
            max_level = std::max(max_level, nh + varrho);
        }
        auto cells = rescaled_cells(prob, std::min(max_level, 12));
        double lo = 0.0, hi = 2.0;
        for (int it2 = 0; it2 < 40; ++it2) {
            double mid = 0.5 * (lo + hi);
            if (min_cell_transform_on_ball(cells, mid) > epsilon)
                lo = mid;
            else
                hi = mid;
        }
        delta = lo;
        int new_varrho = 0;
        while (std::pow(2.0, -new_varrho) >= delta && new_varrho < 30) ++new_varrho;
        if (new_varrho == varrho) break;
        varrho = new_varrho;
    }
    rep.delta = delta;
    rep.varrho = varrho;

    // Sample centers: origin, shifts along the lattice direction, random spots.
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<Vec> centers{Vec::zero(s.dim())};
    if (s.rank() >= 1) {
        const Vec& g = s.lattice()[0];
        for (int j = 1; j <= 15; ++j) centers.push_back(ExactScalar(Rational(j, 8)) * g);
    }
    for (int j = 0; j < 8; ++j) {
        std::vector<ExactScalar> coords;
        for (int c = 0; c < s.dim(); ++c)
            coords.push_back(ExactScalar(rational_from_double(unif(rng))));
        centers.push_back(Vec(std::move(coords)));
    }

    bool holds = true;
    for (double h : hs_sorted) {
        int nh = static_cast<int>(std::ceil(std::log2(std::max(1.0, h))));
        int level = std::min(nh + varrho, 12);
        double H = dyadic_entropy(dyadic_masses(prob, level));
        long max_count = 0;
        for (const auto& c : centers) max_count = std::max(max_count, s.count_in_ball(c, h));
        EntropyBoundRow row{h, level, max_count, H, 0.0};
        if (rep.rows.empty()) {
            rep.fitted_c = static_cast<double>(max_count) / std::pow(2.0, H);
            if (rep.fitted_c <= 0) rep.fitted_c = 1.0;
        }
        row.bound = rep.fitted_c * std::pow(2.0, H);
        if (static_cast<double>(max_count) > row.bound * (1.0 + 1e-9)) holds = false;
        rep.rows.push_back(row);
    }
    rep.holds = holds;
    return rep;
}

AhlforsEstimate ahlfors_estimate(const Measure& m, double s_exp, int samples, unsigned seed) {
    if (s_exp < 0) throw std::invalid_argument("ahlfors_estimate: exponent must be >= 0");
    if (samples < 1) throw std::invalid_argument("ahlfors_estimate: need samples");
    auto [prob, factor] = m.normalized();
    (void)factor;

    std::vector<Vec> pts;
    for (const auto& a : prob.atoms()) pts.push_back(a.at);
    for (const auto& sp : prob.segments()) {
        pts.push_back(sp.from);
        pts.push_back(sp.to);
    }
    double diam = 0.0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            diam = std::max(diam, std::sqrt(norm2(pts[i] - pts[j]).to_double()));
    if (diam <= 0.0) diam = 1.0;

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<double> weights;
    double total = 0.0;
    for (const auto& a : prob.atoms()) {
        weights.push_back(a.mass.to_double());
        total += weights.back();
    }
    for (const auto& sp : prob.segments()) {
        weights.push_back(sp.mass.to_double());
        total += weights.back();
    }

    auto ball_mass = [&](const std::vector<double>& x, double r) {
        double acc = 0.0;
        for (const auto& a : prob.atoms()) {
            auto p = a.at.to_doubles();
            double d2 = 0.0;
            for (size_t c = 0; c < p.size(); ++c) d2 += (p[c] - x[c]) * (p[c] - x[c]);
            if (d2 <= r * r) acc += a.mass.to_double();
        }
        for (const auto& sp : prob.segments()) {
            auto f = sp.from.to_doubles();
            auto t = sp.to.to_doubles();
            double aa = 0.0, bb = 0.0, cc = 0.0;
            for (size_t c = 0; c < f.size(); ++c) {
                double d = t[c] - f[c], w = f[c] - x[c];
                aa += d * d;
                bb += 2 * d * w;
                cc += w * w;
            }
            cc -= r * r;
            double disc = bb * bb - 4 * aa * cc;
            if (disc <= 0) continue;
            double sq = std::sqrt(disc);
            double t0 = std::max(0.0, (-bb - sq) / (2 * aa));
            double t1 = std::min(1.0, (-bb + sq) / (2 * aa));
            if (t1 > t0) acc += (t1 - t0) * sp.mass.to_double();
        }
        return acc;
    };

    AhlforsEstimate out{1e300, 0.0};
    for (int it = 0; it < samples; ++it) {
        double pick = unif(rng) * total;
        std::vector<double> x;
        size_t idx = 0;
        for (; idx + 1 < weights.size() && pick > weights[idx]; ++idx) pick -= weights[idx];
        if (idx < prob.atoms().size()) {
            x = prob.atoms()[idx].at.to_doubles();
        } else {
            const auto& sp = prob.segments()[idx - prob.atoms().size()];
            double tpar = unif(rng);
            auto f = sp.from.to_doubles();
            auto t = sp.to.to_doubles();
            for (size_t c = 0; c < f.size(); ++c) x.push_back(f[c] + tpar * (t[c] - f[c]));
        }
        double r = (diam / 4096.0) * std::pow(2048.0, unif(rng));
        double mu = ball_mass(x, r);
        if (mu <= 0.0) continue;
        double ratio = s_exp == 0.0 ? mu : mu / std::pow(r, s_exp);
        out.c_min = std::min(out.c_min, ratio);
        out.c_max = std::max(out.c_max, ratio);
    }
    return out;
}

}  // namespace segspec

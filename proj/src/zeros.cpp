#include "segspec/zeros.hpp"

#include <cmath>

namespace segspec {

CrossConfig::CrossConfig(ExactScalar t1_, ExactScalar t2_, ExactScalar T1_, ExactScalar T2_,
                         std::optional<AffineMap> prov)
    : t1(std::move(t1_)), t2(std::move(t2_)), T1(std::move(T1_)), T2(std::move(T2_)),
      provenance(std::move(prov)) {
    if (T1.sign() <= 0 || T2.sign() <= 0)
        throw std::invalid_argument("CrossConfig: T1, T2 must be positive");
    if (T1 + T2 != ExactScalar(2))
        throw std::invalid_argument("CrossConfig: T1 + T2 must equal 2");
}

ExactScalar CrossConfig::T_of(const ExactScalar& l1, const ExactScalar& l2) const {
    return l1 * (ExactScalar(2) * t1 + T1) - l2 * (ExactScalar(2) * t2 + T2);
}

Measure CrossConfig::measure() const {
    ExactScalar half(Rational(1, 2));
    std::vector<SegmentPiece> segs;
    segs.push_back({Vec(t1, 0), Vec(t1 + T1, 0), half * T1});
    segs.push_back({Vec(0, t2), Vec(0, t2 + T2), half * T2});
    return Measure::segments_only(2, std::move(segs));
}

ZeroMembership cross_zero_membership(const CrossConfig& c, const Vec& lambda, double tol) {
    if (lambda.dim() != 2) throw std::invalid_argument("cross_zero_membership: need dim 2");
    if (lambda.is_zero())
        throw std::invalid_argument(
            "cross_zero_membership: 0 is never a zero of a positive measure");

    const ExactScalar& l1 = lambda[0];
    const ExactScalar& l2 = lambda[1];
    const bool x_sinc_zero = !l1.is_zero() && (c.T1 * l1).is_integer();
    const bool y_sinc_zero = !l2.is_zero() && (c.T2 * l2).is_integer();

    if (x_sinc_zero && y_sinc_zero)
        return {true, ZeroBranch::Z1, Certificate::Exact, 0.0};

    const double value = std::abs(fourier_eval(c.measure(), lambda));

    // Z2 requires T(lambda) in Z: with both sinc terms real, the phase
    // e^{pi i T} must be +-1 for the sum to vanish.
    ExactScalar T = c.T_of(l1, l2);
    if (!T.is_integer()) {
        return {false, ZeroBranch::None, Certificate::Exact, value};
    }
    const bool t_odd = T.is_odd_integer();

    // Exactly one sinc factor vanishes: the other term is provably nonzero.
    if (x_sinc_zero != y_sinc_zero)
        return {false, ZeroBranch::None, Certificate::Exact, value};

    // Diagonal symmetry: for l2 = +-l1 both terms reduce to sines of
    // pi T1 l1 and pi T2 l1 over the same denominator.
    if (!l1.is_zero() && (l2 == l1 || l2 == -l1)) {
        if (c.equal_lengths()) {
            // expr = [(-1)^T + 1] sin(pi T1 l1)/(pi l1)
            if (t_odd) return {true, ZeroBranch::Z2, Certificate::Exact, 0.0};
            return {false, ZeroBranch::None, Certificate::Exact, value};
        }
        ExactScalar two_l1 = l1 + l1;  // (T1 + T2) l1
        if (two_l1.is_integer()) {
            // 2 l1 even: sin(pi T2 l1) = -sin(pi T1 l1); expr vanishes iff T even.
            // 2 l1 odd:  sin(pi T2 l1) = +sin(pi T1 l1); expr vanishes iff T odd.
            bool vanishes = two_l1.is_even_integer() ? !t_odd : t_odd;
            if (vanishes) return {true, ZeroBranch::Z2, Certificate::Exact, 0.0};
            return {false, ZeroBranch::None, Certificate::Exact, value};
        }
    }

    bool member = value <= tol;
    return {member, member ? ZeroBranch::Z2 : ZeroBranch::None, Certificate::Numeric, value};
}

bool numeric_zero_test(const Measure& m, std::span<const double> xi, double tol) {
    if (tol <= 0) throw std::invalid_argument("numeric_zero_test: tol must be positive");
    return std::abs(fourier_eval(m, xi)) <= tol;
}

bool numeric_zero_test(const FourierEvaluator& F, std::span<const double> xi, double tol) {
    if (tol <= 0) throw std::invalid_argument("numeric_zero_test: tol must be positive");
    return std::abs(F(xi)) <= tol;
}

std::optional<CrossConfig> as_cross_config(const Measure& m) {
    if (m.dim() != 2 || !m.atoms().empty() || m.segments().size() != 2) return std::nullopt;

    const SegmentPiece* on_x = nullptr;
    const SegmentPiece* on_y = nullptr;
    for (const auto& s : m.segments()) {
        if (s.from[1].is_zero() && s.to[1].is_zero())
            on_x = &s;
        else if (s.from[0].is_zero() && s.to[0].is_zero())
            on_y = &s;
    }
    if (!on_x || !on_y) return std::nullopt;

    ExactScalar a1 = on_x->from[0] < on_x->to[0] ? on_x->from[0] : on_x->to[0];
    ExactScalar b1 = on_x->from[0] < on_x->to[0] ? on_x->to[0] : on_x->from[0];
    ExactScalar a2 = on_y->from[1] < on_y->to[1] ? on_y->from[1] : on_y->to[1];
    ExactScalar b2 = on_y->from[1] < on_y->to[1] ? on_y->to[1] : on_y->from[1];
    ExactScalar L1 = b1 - a1, L2 = b2 - a2;

    // Equal density along both arms, checked without square roots.
    if (on_x->mass * L2 != on_y->mass * L1) return std::nullopt;

    ExactScalar sigma = ExactScalar(2) / (L1 + L2);
    AffineMap scale{Mat2(sigma, 0, 0, sigma), Vec::zero(2)};
    return CrossConfig(sigma * a1, sigma * a2, sigma * L1, sigma * L2, scale);
}

}  // namespace segspec

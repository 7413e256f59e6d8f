#pragma once

#include "segspec/measure.hpp"

#include <optional>

namespace segspec {

// Normalized two-segment parameters: the measure
//   rho = (1/2) L_[t1, t1+T1] x delta_0 + (1/2) delta_0 x L_[t2, t2+T2]
// with T1 + T2 = 2. `provenance` records the affine map that produced the
// normalization from a general non-parallel pair, when there was one.
struct CrossConfig {
    ExactScalar t1, t2, T1, T2;
    std::optional<AffineMap> provenance;

    CrossConfig(ExactScalar t1_, ExactScalar t2_, ExactScalar T1_, ExactScalar T2_,
                std::optional<AffineMap> prov = std::nullopt);

    bool equal_lengths() const { return T1 == T2; }

    // T(l1, l2) = l1 (2 t1 + T1) - l2 (2 t2 + T2)
    ExactScalar T_of(const ExactScalar& l1, const ExactScalar& l2) const;

    Measure measure() const;
};

enum class ZeroBranch { None, Z1, Z2 };
enum class Certificate { Exact, Numeric };

struct ZeroMembership {
    bool member = false;
    ZeroBranch branch = ZeroBranch::None;
    Certificate certificate = Certificate::Numeric;
    double value = 0.0;  // |rho^(lambda)|, the achieved transform magnitude
};

// Membership of lambda in the zero set Z(rho^) = Z1 union Z2 with
//   Z1 = (Z\{0})/T1 x (Z\{0})/T2,
//   Z2 = { T(lambda) in Z and (-1)^T sin(pi T1 l1)/(pi l1) + sin(pi T2 l2)/(pi l2) = 0 },
// using the continuous extension sin(pi T x)/(pi x) -> T at x = 0.
// Certificates are exact for the symbolic vanishing patterns (integer sinc
// zeros; the +-diagonal cancellations); otherwise numeric against tol.
ZeroMembership cross_zero_membership(const CrossConfig& c, const Vec& lambda,
                                     double tol = 1e-10);

// |fourier_eval(m, xi)| <= tol
bool numeric_zero_test(const Measure& m, std::span<const double> xi, double tol);
bool numeric_zero_test(const FourierEvaluator& F, std::span<const double> xi, double tol);

// Recognizes a measure of the normalized cross form (two perpendicular
// axis-aligned segments with T1 + T2 = 2 and density 1/2), for the exact
// orthogonality fast path.
std::optional<CrossConfig> as_cross_config(const Measure& m);

}  // namespace segspec

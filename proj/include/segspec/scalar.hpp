#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace segspec {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact element of the field Q[sqrt(2)], stored as rat + sq2*sqrt(2).
// Representation is unique: the value is zero iff both coefficients are zero.
// All geometry and all arithmetic spectrality conditions run on this type so
// that integrality tests are never at the mercy of floating point.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long v) : rat_(v) {}  // NOLINT: implicit by design
    explicit ExactScalar(Rational r) : rat_(std::move(r)) {}
    ExactScalar(Rational r, Rational s) : rat_(std::move(r)), sq2_(std::move(s)) {}

    static ExactScalar sqrt2() { return ExactScalar(Rational(0), Rational(1)); }
    static ExactScalar from_rational(const Rational& r) { return ExactScalar(r); }

    const Rational& rat() const { return rat_; }
    const Rational& sq2() const { return sq2_; }

    bool is_zero() const { return rat_ == 0 && sq2_ == 0; }
    bool is_rational() const { return sq2_ == 0; }

    ExactScalar operator-() const { return ExactScalar(-rat_, -sq2_); }

    ExactScalar& operator+=(const ExactScalar& o) {
        rat_ += o.rat_;
        sq2_ += o.sq2_;
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) {
        rat_ -= o.rat_;
        sq2_ -= o.sq2_;
        return *this;
    }
    ExactScalar& operator*=(const ExactScalar& o) {
        // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s,  s^2 = 2
        Rational a = rat_, b = sq2_;
        rat_ = a * o.rat_ + 2 * b * o.sq2_;
        sq2_ = a * o.sq2_ + b * o.rat_;
        return *this;
    }
    ExactScalar& operator/=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.rat_ == b.rat_ && a.sq2_ == b.sq2_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    // Galois conjugate a - b sqrt(2); the field norm is x * conj(x) = a^2 - 2 b^2.
    ExactScalar conj() const { return ExactScalar(rat_, -sq2_); }

    // Exact sign of rat + sq2*sqrt(2):  -1, 0 or +1.
    int sign() const;

    friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
        return (a - b).sign() < 0;
    }
    friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return b < a; }
    friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return !(b < a); }
    friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return !(a < b); }

    ExactScalar abs() const { return sign() < 0 ? -*this : *this; }

    double to_double() const;

    // Integrality predicates used by every spectrality condition.
    bool is_integer() const { return sq2_ == 0 && denominator(rat_) == 1; }
    bool is_even_integer() const { return is_integer() && numerator(rat_) % 2 == 0; }
    bool is_odd_integer() const { return is_integer() && numerator(rat_) % 2 != 0; }

    // Representative of x mod q in [0, q), q > 0 rational. Empty when x is
    // irrational (the residue would leave Q).
    std::optional<Rational> residue_mod(const Rational& q) const;

    // Largest integer <= value; exact also for irrational values.
    Int floor() const;

    std::string str() const;

private:
    Rational rat_{0};
    Rational sq2_{0};
};

inline ExactScalar operator*(const Rational& r, const ExactScalar& x) {
    return ExactScalar(r) * x;
}

// floor(p/q) as an integer (division rounding toward -infinity).
Int rational_floor(const Rational& r);

// Exact rational equal to the double (every finite double is a rational).
Rational rational_from_double(double x);

// Nonnegative square root within Q[sqrt(2)], when one exists.
std::optional<ExactScalar> try_sqrt(const ExactScalar& x);

// Parses "p/q", "p", or the compact forms "a+b*sqrt2" / "b*sqrt2" / "sqrt2".
Rational parse_rational(const std::string& text);
ExactScalar parse_scalar(const std::string& text);

std::string rational_str(const Rational& r);

}  // namespace segspec

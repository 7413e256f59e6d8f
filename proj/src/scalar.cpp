#include "segspec/scalar.hpp"

#include <cmath>
#include <limits>

namespace segspec {

namespace {

int sign_of(const Rational& r) {
    if (r == 0) return 0;
    return r < 0 ? -1 : 1;
}

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Int n = numerator(r), d = denominator(r);
    Int sn = boost::multiprecision::sqrt(n);
    Int sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
}

}  // namespace

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    if (o.is_zero()) throw std::domain_error("ExactScalar: division by zero");
    // 1/(c + d s) = (c - d s) / (c^2 - 2 d^2); the norm is nonzero for o != 0
    // because sqrt(2) is irrational.
    Rational norm = o.rat_ * o.rat_ - 2 * o.sq2_ * o.sq2_;
    ExactScalar num = *this * o.conj();
    rat_ = num.rat_ / norm;
    sq2_ = num.sq2_ / norm;
    return *this;
}

int ExactScalar::sign() const {
    int sr = sign_of(rat_), ss = sign_of(sq2_);
    if (ss == 0) return sr;
    if (sr == 0) return ss;
    if (sr == ss) return sr;
    // Opposite signs: compare |rat| with |sq2|*sqrt(2) via squares.
    Rational lhs = rat_ * rat_, rhs = 2 * sq2_ * sq2_;
    if (lhs == rhs) return 0;  // cannot happen (sqrt(2) irrational), kept for safety
    return (lhs > rhs) ? sr : ss;
}

double ExactScalar::to_double() const {
    static const double kSqrt2 = std::sqrt(2.0);
    return rat_.convert_to<double>() + sq2_.convert_to<double>() * kSqrt2;
}

std::optional<Rational> ExactScalar::residue_mod(const Rational& q) const {
    if (q <= 0) throw std::invalid_argument("residue_mod: modulus must be positive");
    if (sq2_ != 0) return std::nullopt;
    Rational r = rat_ - q * Rational(rational_floor(rat_ / q));
    return r;
}

Int ExactScalar::floor() const {
    if (sq2_ == 0) return rational_floor(rat_);
    // Start from the double estimate, then fix up with exact comparisons.
    Int n = Int(std::floor(to_double()));
    while (*this < ExactScalar(Rational(n))) --n;
    while (*this >= ExactScalar(Rational(n + 1))) ++n;
    return n;
}

std::string ExactScalar::str() const {
    if (sq2_ == 0) return rational_str(rat_);
    std::string s;
    if (rat_ != 0) s += rational_str(rat_);
    if (sq2_ > 0 && rat_ != 0) s += "+";
    if (sq2_ == -1)
        s += "-";
    else if (sq2_ != 1)
        s += rational_str(sq2_) + "*";
    s += "sqrt2";
    return s;
}

Int rational_floor(const Rational& r) {
    Int n = numerator(r), d = denominator(r);  // d > 0
    Int q = n / d;                             // truncates toward zero
    if (n < 0 && q * d != n) --q;
    return q;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    Int num = Int(std::ldexp(m, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0) {
        r *= Rational(Int(1) << exp);
    } else if (exp < 0) {
        r /= Rational(Int(1) << (-exp));
    }
    return r;
}

std::optional<ExactScalar> try_sqrt(const ExactScalar& x) {
    if (x.sign() < 0) return std::nullopt;
    if (x.is_zero()) return ExactScalar(0);
    const Rational& a = x.rat();
    const Rational& b = x.sq2();
    if (b == 0) {
        // Either sqrt(a) rational, or sqrt(a) = d*sqrt(2) with d = sqrt(a/2).
        if (auto c = rational_sqrt(a)) return ExactScalar(*c);
        if (auto d = rational_sqrt(a / 2)) return ExactScalar(Rational(0), *d);
        return std::nullopt;
    }
    // Want (c + d s)^2 = a + b s: c^2 + 2 d^2 = a, 2 c d = b.  Then c^2 solves
    // 2 z^2 - 2 a z + b^2 = 0, z = (a +- sqrt(a^2 - 2 b^2))/2.
    Rational disc = a * a - 2 * b * b;
    auto sd = rational_sqrt(disc);
    if (!sd) return std::nullopt;
    for (int pick : {0, 1}) {
        Rational z = pick == 0 ? Rational((a + *sd) / 2) : Rational((a - *sd) / 2);
        auto c = rational_sqrt(z);
        if (!c || *c == 0) continue;
        Rational d = b / (2 * *c);
        ExactScalar root(*c, d);
        if (root * root == x) return root.sign() >= 0 ? root : -root;
    }
    return std::nullopt;
}

Rational parse_rational(const std::string& raw) {
    std::string text = (!raw.empty() && raw[0] == '+') ? raw.substr(1) : raw;
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: bad token '" + raw + "'");
    }
}

ExactScalar parse_scalar(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.empty()) throw std::invalid_argument("parse_scalar: empty token");

    // Split an optional trailing sqrt2 term off: [rat][(+|-)coef*sqrt2]
    auto pos = text.find("sqrt2");
    if (pos == std::string::npos) return ExactScalar(parse_rational(text));

    std::string head = text.substr(0, pos);
    if (text.size() != pos + 5)
        throw std::invalid_argument("parse_scalar: trailing characters in '" + raw + "'");

    // head is "", "-", "coef*", or "rat(+|-)coef*" where coef may be empty.
    Rational rat_part(0), coef(1);
    if (!head.empty()) {
        size_t term = std::string::npos;  // start of the sqrt2 coefficient
        for (size_t i = head.size(); i-- > 1;) {
            if ((head[i - 1] != '/' && head[i - 1] != '*') &&
                (head[i] == '+' || head[i] == '-')) {
                term = i;
                break;
            }
        }
        std::string coef_text;
        if (term == std::string::npos) {
            coef_text = head;
        } else {
            rat_part = parse_rational(head.substr(0, term));
            coef_text = head.substr(term);
        }
        if (!coef_text.empty() && coef_text.back() == '*') coef_text.pop_back();
        if (coef_text.empty() || coef_text == "+")
            coef = 1;
        else if (coef_text == "-")
            coef = -1;
        else
            coef = parse_rational(coef_text);
    }
    return ExactScalar(rat_part, coef);
}

std::string rational_str(const Rational& r) {
    std::string s = numerator(r).convert_to<std::string>();
    if (denominator(r) != 1) s += "/" + denominator(r).convert_to<std::string>();
    return s;
}

}  // namespace segspec

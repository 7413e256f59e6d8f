#pragma once

#include "segspec/scalar.hpp"

#include <vector>

namespace segspec {

// Exact point / vector in R^d, d in {1,...,4}. Dimensions above 2 only occur
// inside sumset bookkeeping.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::vector<ExactScalar> coords) : coords_(std::move(coords)) {
        if (coords_.empty() || coords_.size() > 4)
            throw std::invalid_argument("Vec: dimension must be 1..4");
    }
    Vec(ExactScalar x, ExactScalar y) : coords_{std::move(x), std::move(y)} {}
    static Vec zero(int dim) { return Vec(std::vector<ExactScalar>(dim)); }

    int dim() const { return static_cast<int>(coords_.size()); }
    const ExactScalar& operator[](int i) const { return coords_[i]; }
    ExactScalar& operator[](int i) { return coords_[i]; }
    const std::vector<ExactScalar>& coords() const { return coords_; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    Vec operator-() const {
        Vec r = *this;
        for (auto& c : r.coords_) c = -c;
        return r;
    }
    friend Vec operator+(Vec a, const Vec& b) {
        check_dims(a, b);
        for (int i = 0; i < a.dim(); ++i) a.coords_[i] += b[i];
        return a;
    }
    friend Vec operator-(Vec a, const Vec& b) {
        check_dims(a, b);
        for (int i = 0; i < a.dim(); ++i) a.coords_[i] -= b[i];
        return a;
    }
    friend Vec operator*(const ExactScalar& s, Vec v) {
        for (auto& c : v.coords_) c = s * c;
        return v;
    }
    friend bool operator==(const Vec& a, const Vec& b) { return a.coords_ == b.coords_; }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
    friend bool operator<(const Vec& a, const Vec& b) {  // lexicographic, exact
        check_dims(a, b);
        for (int i = 0; i < a.dim(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return false;
    }

    std::vector<double> to_doubles() const {
        std::vector<double> r;
        r.reserve(coords_.size());
        for (const auto& c : coords_) r.push_back(c.to_double());
        return r;
    }

private:
    static void check_dims(const Vec& a, const Vec& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("Vec: dimension mismatch");
    }
    std::vector<ExactScalar> coords_;
};

inline ExactScalar dot(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
    ExactScalar s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline ExactScalar norm2(const Vec& a) { return dot(a, a); }

// z-component of the 2D cross product; zero iff a, b are parallel.
inline ExactScalar cross2(const Vec& a, const Vec& b) {
    if (a.dim() != 2 || b.dim() != 2) throw std::invalid_argument("cross2: need dim 2");
    return a[0] * b[1] - a[1] * b[0];
}

inline Vec rot90(const Vec& a) { return Vec(-a[1], a[0]); }

// Direction spanning a line through the origin; never zero, not normalized.
struct LineDir {
    Vec direction;
    explicit LineDir(Vec d) : direction(std::move(d)) {
        if (direction.is_zero()) throw std::invalid_argument("LineDir: zero direction");
    }
};

class Mat2 {
public:
    Mat2() = default;
    Mat2(ExactScalar a, ExactScalar b, ExactScalar c, ExactScalar d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    static Mat2 identity() { return Mat2(1, 0, 0, 1); }
    // Matrix with the given columns.
    static Mat2 from_columns(const Vec& u, const Vec& v) {
        return Mat2(u[0], v[0], u[1], v[1]);
    }

    ExactScalar det() const { return a_ * d_ - b_ * c_; }
    Mat2 transpose() const { return Mat2(a_, c_, b_, d_); }
    Mat2 inverse() const {
        ExactScalar dt = det();
        if (dt.is_zero()) throw std::domain_error("Mat2: singular matrix");
        return Mat2(d_ / dt, -b_ / dt, -c_ / dt, a_ / dt);
    }

    Vec apply(const Vec& v) const {
        if (v.dim() != 2) throw std::invalid_argument("Mat2: need dim 2 vector");
        return Vec(a_ * v[0] + b_ * v[1], c_ * v[0] + d_ * v[1]);
    }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return Mat2(m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
                    m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_);
    }
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a_ == n.a_ && m.b_ == n.b_ && m.c_ == n.c_ && m.d_ == n.d_;
    }

    const ExactScalar& a() const { return a_; }
    const ExactScalar& b() const { return b_; }
    const ExactScalar& c() const { return c_; }
    const ExactScalar& d() const { return d_; }

private:
    ExactScalar a_{1}, b_{0}, c_{0}, d_{1};
};

// x -> A x + b
struct AffineMap {
    Mat2 A;
    Vec b = Vec::zero(2);

    Vec apply(const Vec& v) const { return A.apply(v) + b; }
    AffineMap inverse() const {
        Mat2 inv = A.inverse();
        return AffineMap{inv, -inv.apply(b)};
    }
};

// Unit vector along v, exact when |v| lies in Q[sqrt(2)].
struct UnitDir {
    Vec u;           // exact unit coordinates when exact, rationalized doubles otherwise
    bool exact;
};
UnitDir unit_direction(const Vec& v);

}  // namespace segspec

#ifndef SPECINV_DDREAL_HPP
#define SPECINV_DDREAL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace specinv {

/// Double-double arithmetic: an unevaluated sum hi + lo of two doubles giving
/// roughly 106 bits of significand (eps ~ 4.9e-32) at hardware speed.
/// Classic error-free transformations (Dekker/Knuth); products use std::fma.
struct DDReal {
    double hi = 0, lo = 0;

    DDReal() = default;
    DDReal(double h) : hi(h), lo(0) {}
    DDReal(int v) : hi(v), lo(0) {}
    DDReal(long v) : hi(double(v)), lo(0) {}
    DDReal(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }

    static DDReal two_sum(double a, double b) {
        double s = a + b;
        double bb = s - a;
        double err = (a - (s - bb)) + (b - bb);
        return {s, err};
    }
    static DDReal quick_two_sum(double a, double b) {
        double s = a + b;
        return {s, b - (s - a)};
    }
    static DDReal two_prod(double a, double b) {
        double p = a * b;
        return {p, std::fma(a, b, -p)};
    }
    static DDReal renorm(double h, double l) { return quick_two_sum(h, l); }

    friend DDReal operator+(const DDReal& a, const DDReal& b) {
        DDReal s = two_sum(a.hi, b.hi);
        double l = s.lo + a.lo + b.lo;
        return renorm(s.hi, l);
    }
    friend DDReal operator-(const DDReal& a, const DDReal& b) {
        DDReal s = two_sum(a.hi, -b.hi);
        double l = s.lo + a.lo - b.lo;
        return renorm(s.hi, l);
    }
    DDReal operator-() const { return {-hi, -lo}; }
    friend DDReal operator*(const DDReal& a, const DDReal& b) {
        DDReal p = two_prod(a.hi, b.hi);
        double l = p.lo + a.hi * b.lo + a.lo * b.hi;
        return renorm(p.hi, l);
    }
    friend DDReal operator/(const DDReal& a, const DDReal& b) {
        double q1 = a.hi / b.hi;
        DDReal r = a - DDReal(q1) * b;
        double q2 = r.hi / b.hi;
        r = r - DDReal(q2) * b;
        double q3 = r.hi / b.hi;
        DDReal q = quick_two_sum(q1, q2);
        return q + DDReal(q3);
    }

    DDReal& operator+=(const DDReal& o) { return *this = *this + o; }
    DDReal& operator-=(const DDReal& o) { return *this = *this - o; }
    DDReal& operator*=(const DDReal& o) { return *this = *this * o; }
    DDReal& operator/=(const DDReal& o) { return *this = *this / o; }

    friend bool operator==(const DDReal& a, const DDReal& b) {
        return a.hi == b.hi && a.lo == b.lo;
    }
    friend bool operator!=(const DDReal& a, const DDReal& b) { return !(a == b); }
    friend bool operator<(const DDReal& a, const DDReal& b) {
        return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
    }
    friend bool operator>(const DDReal& a, const DDReal& b) { return b < a; }
    friend bool operator<=(const DDReal& a, const DDReal& b) { return !(b < a); }
    friend bool operator>=(const DDReal& a, const DDReal& b) { return !(a < b); }
};

inline DDReal abs(const DDReal& a) { return a.hi < 0 ? -a : a; }
inline DDReal fabs(const DDReal& a) { return abs(a); }

inline DDReal sqrt(const DDReal& a) {
    if (a.hi == 0 && a.lo == 0) return DDReal(0);
    // one Newton step in dd from the double estimate: y + (a - y^2) / (2y)
    double y0 = std::sqrt(a.hi);
    DDReal y(y0);
    return y + (a - y * y) / (DDReal(2) * y);
}

inline DDReal ldexp(const DDReal& a, int e) {
    return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)};
}

inline DDReal exp(const DDReal& a) {
    // range-reduce by ln 2, Taylor on |r| <= ln2/2, rescale by 2^k
    if (a.hi < -745.0) return DDReal(0);
    if (a.hi > 709.0) return DDReal(std::numeric_limits<double>::infinity());
    static const DDReal ln2(6.931471805599453e-01, 2.3190468138462996e-17);
    static const auto invfact = [] {
        std::array<DDReal, 27> t;
        DDReal f(1);
        t[0] = DDReal(1);
        for (int n = 1; n <= 26; ++n) {
            f = f * DDReal(n);
            t[n] = DDReal(1) / f;
        }
        return t;
    }();
    int k = int(std::nearbyint(a.hi / ln2.hi));
    DDReal r = a - DDReal(k) * ln2;
    DDReal rp = r, sum = DDReal(1) + r;
    for (int n = 2; n <= 26; ++n) {
        rp = rp * r;
        DDReal term = rp * invfact[n];
        sum += term;
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    return ldexp(sum, k);
}

inline DDReal log(const DDReal& a) {
    // Newton on exp: y + a*exp(-y) - 1
    DDReal y(std::log(a.hi));
    for (int i = 0; i < 2; ++i) y = y + a * exp(-y) - DDReal(1);
    return y;
}

inline DDReal pow_int(DDReal a, int p) {
    bool inv = p < 0;
    if (inv) p = -p;
    DDReal r(1);
    while (p) {
        if (p & 1) r *= a;
        a *= a;
        p >>= 1;
    }
    return inv ? DDReal(1) / r : r;
}

inline bool isnan(const DDReal& a) { return std::isnan(a.hi) || std::isnan(a.lo); }

}  // namespace specinv

namespace std {
template <>
struct numeric_limits<specinv::DDReal> {
    static constexpr bool is_specialized = true;
    static constexpr bool is_signed = true;
    static constexpr bool is_integer = false;
    static constexpr bool is_exact = false;
    static constexpr int digits = 104;
    static constexpr int digits10 = 31;
    static specinv::DDReal epsilon() { return {4.93038065763132e-32, 0.0}; }
    static specinv::DDReal min() { return {numeric_limits<double>::min(), 0.0}; }
    static specinv::DDReal max() { return {numeric_limits<double>::max(), 0.0}; }
    static specinv::DDReal infinity() { return {numeric_limits<double>::infinity(), 0.0}; }
    static specinv::DDReal quiet_NaN() { return {numeric_limits<double>::quiet_NaN(), 0.0}; }
};
}  // namespace std

#endif

#ifndef SPECINV_RATIONAL_HPP
#define SPECINV_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace specinv {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Gaussian rational a + b*i with exact components.
struct GaussRat {
    Rat re{0};
    Rat im{0};

    GaussRat() = default;
    GaussRat(long v) : re(v) {}
    GaussRat(Rat r) : re(std::move(r)) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }
    static GaussRat frac(long p, long q) { return GaussRat(Rat(p, q)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { a += b; return a; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { a -= b; return a; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GaussRat: division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }
    GaussRat& operator/=(const GaussRat& o) { *this = *this / o; return *this; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    /// i^k for any integer k.
    static GaussRat i_pow(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return GaussRat(1);
            case 1: return i();
            case 2: return GaussRat(-1);
            default: return -i();
        }
    }
};

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

/// Deterministic rendering: "1", "-1/8", "i", "-i", "2/3*i", "1/2+1/3*i", "1/2-i".
inline std::string gauss_str(const GaussRat& c) {
    auto im_part = [](const Rat& v) -> std::string {
        if (v == 1) return "i";
        if (v == -1) return "-i";
        return rat_str(v) + "*i";
    };
    if (c.im == 0) return rat_str(c.re);
    if (c.re == 0) return im_part(c.im);
    std::string s = rat_str(c.re);
    if (c.im > 0) s += "+";
    s += im_part(c.im);
    return s;
}

/// Parse the format produced by gauss_str.
inline GaussRat gauss_parse(const std::string& s) {
    // split into real/imag parts at a top-level +/- that is not leading
    auto parse_rat = [](const std::string& t) -> Rat {
        if (t.empty()) throw std::invalid_argument("empty rational");
        return Rat(t);
    };
    auto parse_part = [&](std::string t, GaussRat& out) {
        bool neg = false;
        if (!t.empty() && (t[0] == '+' || t[0] == '-')) { neg = t[0] == '-'; t = t.substr(1); }
        Rat v;
        bool imag = false;
        if (t == "i") { v = 1; imag = true; }
        else if (t.size() > 2 && t.substr(t.size() - 2) == "*i") { v = parse_rat(t.substr(0, t.size() - 2)); imag = true; }
        else v = parse_rat(t);
        if (neg) v = -v;
        if (imag) out.im += v; else out.re += v;
    };
    GaussRat out;
    size_t start = 0;
    for (size_t i = 1; i <= s.size(); ++i) {
        if (i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/')) {
            parse_part(s.substr(start, i - start), out);
            start = i;
        }
    }
    return out;
}

}  // namespace specinv

#endif

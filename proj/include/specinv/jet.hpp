#ifndef SPECINV_JET_HPP
#define SPECINV_JET_HPP

#include <array>
#include <cmath>
#include <stdexcept>

namespace specinv {

/// Truncated Taylor series (forward-mode jet) in one variable.
/// c[k] is the k-th Taylor coefficient; derivative k is c[k] * k!.
/// The scalar type is a template parameter so the same evaluation code can
/// run in double or extended precision.
template <class T>
struct JetT {
    static constexpr int MaxLen = 16;

    int n = 1;  // number of coefficients
    std::array<T, MaxLen> c{};

    static JetT con(const T& v, int order) {
        JetT j;
        j.n = order + 1;
        j.c[0] = v;
        return j;
    }
    static JetT var(const T& x, int order) {
        JetT j = con(x, order);
        if (j.n > 1) j.c[1] = T(1);
        return j;
    }

    T value() const { return c[0]; }
    T derivative(int k) const {
        if (k >= n) return T(0);
        T f(1);
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }

    friend JetT operator+(const JetT& a, const JetT& b) {
        JetT r = a;
        for (int i = 0; i < b.n; ++i) r.c[i] += b.c[i];
        r.n = std::max(a.n, b.n);
        return r;
    }
    friend JetT operator-(const JetT& a, const JetT& b) {
        JetT r = a;
        for (int i = 0; i < b.n; ++i) r.c[i] -= b.c[i];
        r.n = std::max(a.n, b.n);
        return r;
    }
    JetT operator-() const {
        JetT r = *this;
        for (int i = 0; i < n; ++i) r.c[i] = -r.c[i];
        return r;
    }
    friend JetT operator*(const JetT& a, const JetT& b) {
        JetT r;
        r.n = std::max(a.n, b.n);
        for (int k = 0; k < r.n; ++k) {
            T s(0);
            for (int i = 0; i <= k; ++i)
                if (i < a.n && k - i < b.n) s += a.c[i] * b.c[k - i];
            r.c[k] = s;
        }
        return r;
    }
    friend JetT operator/(const JetT& a, const JetT& b) {
        if (b.c[0] == 0) throw std::domain_error("Jet: division by zero constant term");
        JetT r;
        r.n = std::max(a.n, b.n);
        T inv = T(1) / b.c[0];
        for (int k = 0; k < r.n; ++k) {
            T s = k < a.n ? a.c[k] : T(0);
            for (int j = 1; j <= k; ++j)
                if (j < b.n) s -= b.c[j] * r.c[k - j];
            r.c[k] = s * inv;
        }
        return r;
    }

    friend JetT operator+(const JetT& a, const T& v) { JetT r = a; r.c[0] += v; return r; }
    friend JetT operator+(const T& v, const JetT& a) { return a + v; }
    friend JetT operator-(const JetT& a, const T& v) { JetT r = a; r.c[0] -= v; return r; }
    friend JetT operator-(const T& v, const JetT& a) { return (-a) + v; }
    friend JetT operator*(const JetT& a, const T& v) {
        JetT r = a;
        for (int i = 0; i < r.n; ++i) r.c[i] *= v;
        return r;
    }
    friend JetT operator*(const T& v, const JetT& a) { return a * v; }
    friend JetT operator/(const JetT& a, const T& v) { return a * (T(1) / v); }
    friend JetT operator/(const T& v, const JetT& a) { return con(v, a.n - 1) / a; }
};

template <class T>
inline JetT<T> exp(const JetT<T>& a) {
    using std::exp;
    JetT<T> r;
    r.n = a.n;
    r.c[0] = exp(a.c[0]);
    for (int k = 1; k < r.n; ++k) {
        T s(0);
        for (int j = 1; j <= k; ++j)
            if (j < a.n) s += T(j) * a.c[j] * r.c[k - j];
        r.c[k] = s * (T(1) / T(k));
    }
    return r;
}

template <class T>
inline JetT<T> sqrt(const JetT<T>& a) {
    using std::sqrt;
    if (a.c[0] <= 0) throw std::domain_error("Jet: sqrt of non-positive constant term");
    JetT<T> r;
    r.n = a.n;
    r.c[0] = sqrt(a.c[0]);
    T inv = T(1) / (T(2) * r.c[0]);
    for (int k = 1; k < r.n; ++k) {
        T s = k < a.n ? a.c[k] : T(0);
        for (int j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
        r.c[k] = s * inv;
    }
    return r;
}

template <class T>
inline JetT<T> pow_int(const JetT<T>& a, int p) {
    JetT<T> r = JetT<T>::con(T(1), a.n - 1);
    for (int i = 0; i < p; ++i) r = r * a;
    return r;
}

using Jet = JetT<double>;

}  // namespace specinv

#endif

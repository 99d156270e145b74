#ifndef SPECINV_POTENTIAL_HPP
#define SPECINV_POTENTIAL_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "specinv/jet.hpp"

namespace specinv {

/// Closed-form 1-D potential with exact derivatives via Taylor arithmetic.
class PotentialSpec {
  public:
    enum class Form { polynomial, gaussian_sum, double_well, spliced, zoll_asym };

    Form form = Form::polynomial;
    std::vector<double> coeffs;        // polynomial coefficients c0 + c1 x + ...
    struct Gaussian { double amp, center, width; };
    std::vector<Gaussian> gaussians;   // amp * exp(-width (x-center)^2)
    std::vector<int> bits;             // spliced: one bit per swap cell (2k+1, 2k+2)
    double bump_height = 0.15;
    double epsilon = 0.0;              // zoll_asym branch asymmetry
    double L = 8.0;                    // domain halfwidth
    double cap = 1.0;                  // energy cap a

    static PotentialSpec harmonic(double L = 4.0, double cap = 1.0) {
        PotentialSpec p;
        p.coeffs = {0.0, 0.0, 0.5};
        p.L = L;
        p.cap = cap;
        return p;
    }
    static PotentialSpec quartic(double L = 1.8, double cap = 0.5) {
        PotentialSpec p;
        p.coeffs = {0.0, 0.0, 0.5, 0.0, 0.25};
        p.L = L;
        p.cap = cap;
        return p;
    }
    static PotentialSpec asym_cubic(double L = 1.0, double cap = 0.6) {
        PotentialSpec p;
        p.coeffs = {0.0, 0.0, 1.0, -0.2};
        p.L = L;
        p.cap = cap;
        return p;
    }
    static PotentialSpec polynomial(std::vector<double> c, double L, double cap) {
        PotentialSpec p;
        p.coeffs = std::move(c);
        p.L = L;
        p.cap = cap;
        return p;
    }
    static PotentialSpec gaussian_sum(std::vector<Gaussian> g, double L, double cap) {
        PotentialSpec p;
        p.form = Form::gaussian_sum;
        p.gaussians = std::move(g);
        p.L = L;
        p.cap = cap;
        return p;
    }
    static PotentialSpec double_well(double L = 2.2, double cap = 0.2) {
        PotentialSpec p;
        p.form = Form::double_well;
        p.L = L;
        p.cap = cap;
        return p;
    }
    static PotentialSpec spliced(std::vector<int> bits, double L = 10.0, double cap = 3.0) {
        PotentialSpec p;
        p.form = Form::spliced;
        p.bits = std::move(bits);
        p.L = L;
        p.cap = cap;
        return p;
    }
    static PotentialSpec zoll_asym(double eps, double L = 4.0, double cap = 2.0) {
        PotentialSpec p;
        p.form = Form::zoll_asym;
        p.epsilon = eps;
        p.L = L;
        p.cap = cap;
        return p;
    }

    double value(double x) const { return eval(Jet::var(x, 0)).value(); }

    /// Checks V >= 0 on [-L, L] and that the sublevel set {V <= cap} stays
    /// away from the boundary (sampled); throws std::domain_error otherwise.
    void validate() const {
        const int n = 2000;
        for (int i = 0; i <= n; ++i) {
            double x = -L + 2.0 * L * i / n;
            double v = value(x);
            if (v < -1e-12)
                throw std::domain_error("PotentialSpec: negative potential value");
            if (std::abs(x) > 0.9 * L && v <= cap)
                throw std::domain_error(
                    "PotentialSpec: sublevel set {V <= cap} reaches the domain boundary");
        }
    }

    /// out[k] = V^(k)(x) for k = 0..order (order <= 14); T selects precision.
    template <class T = double>
    void jets(const T& x, int order, T* out) const {
        JetT<T> j = eval(JetT<T>::var(x, order));
        for (int k = 0; k <= order; ++k) out[k] = j.derivative(k);
    }
    double derivative(double x, int k) const {
        return eval(Jet::var(x, k)).derivative(k);
    }

  private:
    template <class T>
    JetT<T> eval(const JetT<T>& x) const {
        int ord = x.n - 1;
        switch (form) {
            case Form::polynomial: {
                JetT<T> p = JetT<T>::con(T(0), ord);
                for (size_t i = coeffs.size(); i-- > 0;) p = p * x + T(coeffs[i]);
                return p;
            }
            case Form::gaussian_sum: {
                JetT<T> p = JetT<T>::con(T(0), ord);
                for (const auto& g : gaussians) {
                    JetT<T> d = x - T(g.center);
                    p = p + T(g.amp) * exp(T(-g.width) * (d * d));
                }
                return p;
            }
            case Form::double_well: {
                JetT<T> q = x * x - T(1);
                return (q * q) * T(0.25);
            }
            case Form::spliced: {
                JetT<T> p = (x * x) * T(0.5);
                double xv = static_cast<double>(x.value());
                for (size_t k = 0; k < bits.size(); ++k) {
                    double lo = 2.0 * k + 1.0, hi = 2.0 * k + 2.0;
                    // bump lives on the positive cell for bit 0, mirrored for bit 1
                    double sgn = bits[k] ? -1.0 : 1.0;
                    double xa = sgn * xv;
                    if (xa > lo && xa < hi) {
                        JetT<T> u = (x * T(sgn) - T(lo)) / T(hi - lo);
                        // exp(4) normalizes the bump peak (at u = 1/2) to bump_height
                        p = p + T(bump_height) * exp(T(4) - T(1) / (u * (T(1) - u)));
                    }
                }
                return p;
            }
            case Form::zoll_asym: {
                // branch profiles f1(s) = sqrt(2s) + eps*s (x > 0),
                // f2(s) = sqrt(2s) - eps*s (x < 0); both invert to the single
                // analytic expression V = w^2/2, w = (sqrt(1+2 eps x)-1)/eps
                double e = epsilon;
                if (e == 0.0) return (x * x) * T(0.5);
                JetT<T> w = (sqrt(T(1) + T(2.0 * e) * x) - T(1)) / T(e);
                return (w * w) * T(0.5);
            }
        }
        throw std::logic_error("PotentialSpec: unknown form");
    }
};

/// Radial profile W(s), s = |x|^2, as a polynomial in s; used by the
/// 2-D radial electric/magnetic oracles.
struct RadialPoly {
    std::vector<double> c;  // W(s) = c0 + c1 s + c2 s^2 + ...

    double eval(double s) const {
        double p = 0;
        for (size_t i = c.size(); i-- > 0;) p = p * s + c[i];
        return p;
    }
    double d1(double s) const {
        double p = 0;
        for (size_t i = c.size(); i-- > 1;) p = p * s + i * c[i];
        return p;
    }
    double d2(double s) const {
        double p = 0;
        for (size_t i = c.size(); i-- > 2;) p = p * s + i * (i - 1.0) * c[i];
        return p;
    }
};

}  // namespace specinv

#endif

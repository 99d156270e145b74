#ifndef SPECINV_QUADRATURE_HPP
#define SPECINV_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace specinv {

namespace gk {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr double xk[8] = {
    0.0,
    0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
    0.7415311855993944, 0.8648644233597691, 0.9491079123427585,
    0.9914553711208126};
inline constexpr double wk[8] = {
    0.2094821410847278,
    0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
    0.1406532597155259, 0.1047900103222502, 0.0630920926299786,
    0.0229353220105292};
inline constexpr double wg[4] = {
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

}  // namespace gk

struct QuadResult {
    double value = 0;
    double error = 0;
    long evals = 0;
};

template <class F>
inline void gk15(const F& f, double a, double b, double& val, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = gk::wk[0] * fc;
    double resg = gk::wg[0] * fc;
    for (int i = 1; i < 8; ++i) {
        double v = f(c - h * gk::xk[i]) + f(c + h * gk::xk[i]);
        resk += gk::wk[i] * v;
        if (i % 2 == 0) resg += gk::wg[i / 2] * v;
    }
    val = resk * h;
    err = std::abs((resk - resg) * h);
}

/// Adaptive bisection Gauss-Kronrod integration to absolute tolerance, with
/// a relative floor so panels whose error is at roundoff level for their own
/// magnitude are accepted rather than refined forever.
template <class F>
inline QuadResult integrate(const F& f, double a, double b, double abstol,
                            int maxdepth = 30) {
    QuadResult out;
    double scale = 0;  // running magnitude estimate for the relative floor
    std::function<void(double, double, double, int)> rec =
        [&](double lo, double hi, double tol, int depth) {
            double v, e;
            gk15(f, lo, hi, v, e);
            out.evals += 15;
            scale = std::max(scale, std::abs(v));
            if (e <= std::max(tol, 1e-14 * scale) || depth >= maxdepth) {
                out.value += v;
                out.error += e;
                return;
            }
            double mid = 0.5 * (lo + hi);
            rec(lo, mid, 0.5 * tol, depth + 1);
            rec(mid, hi, 0.5 * tol, depth + 1);
        };
    if (a == b) return out;
    rec(a, b, abstol, 0);
    double floor = std::max(16 * abstol, 1e-11 * std::max(scale, std::abs(out.value)));
    if (out.error > std::max(floor, 1e-300))
        throw std::runtime_error("integrate: quadrature failed to converge");
    return out;
}

/// Gauss-Legendre nodes and weights of order N on [-1, 1], computed to the
/// working precision of Real by Newton iteration on the Legendre recurrence
/// (tabulated double constants are not accurate enough for extended types).
template <class Real, int N = 15>
struct GaussLegendreTable {
    std::array<Real, N> x{}, w{};

    GaussLegendreTable() {
        using std::abs;
        using std::cos;
        const Real eps = std::numeric_limits<Real>::epsilon();
        for (int i = 0; i < N; ++i) {
            Real t = Real(std::cos(M_PI * (i + 0.75) / (N + 0.5)));
            Real dp(1);
            for (int it = 0; it < 200; ++it) {
                Real p0(1), p1 = t;
                for (int k = 2; k <= N; ++k) {
                    Real p2 = (Real(2 * k - 1) * t * p1 - Real(k - 1) * p0) / Real(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = Real(N) * (t * p1 - p0) / (t * t - Real(1));
                Real dt = p1 / dp;
                t -= dt;
                if (abs(dt) <= Real(4) * eps * (Real(1) + abs(t))) break;
            }
            x[i] = t;
            w[i] = Real(2) / ((Real(1) - t * t) * dp * dp);
        }
    }

    static const GaussLegendreTable& get() {
        static const GaussLegendreTable tab;
        return tab;
    }
};

/// Adaptive bisection integration for an arbitrary scalar type.  Error per
/// panel is estimated by comparing the whole-panel rule against the sum of
/// the two half panels; a floor relative to the running magnitude prevents
/// refining past the roundoff of the working precision.
template <class Real, class F>
inline Real integrate_mp(const F& f, Real a, Real b, Real abstol, int maxdepth = 36) {
    using std::abs;
    const auto& tab = GaussLegendreTable<Real, 15>::get();
    auto panel = [&](Real lo, Real hi) {
        Real c = (lo + hi) / Real(2), h = (hi - lo) / Real(2);
        Real s(0);
        for (int i = 0; i < 15; ++i) s += tab.w[i] * f(c + h * tab.x[i]);
        return s * h;
    };
    const Real eps = std::numeric_limits<Real>::epsilon();
    Real total(0), errsum(0), scale(0);
    std::function<void(Real, Real, Real, Real, int)> rec =
        [&](Real lo, Real hi, Real whole, Real tol, int depth) {
            Real mid = (lo + hi) / Real(2);
            Real left = panel(lo, mid), right = panel(mid, hi);
            Real two = left + right;
            Real err = abs(whole - two);
            if (abs(two) > scale) scale = abs(two);
            Real floor = Real(64) * eps * scale;
            if (err <= tol || err <= floor || depth >= maxdepth) {
                total += two;
                errsum += err;
                return;
            }
            rec(lo, mid, left, tol / Real(2), depth + 1);
            rec(mid, hi, right, tol / Real(2), depth + 1);
        };
    if (a == b) return Real(0);
    rec(a, b, panel(a, b), abstol, 0);
    Real allow = abstol * Real(64);
    Real rel = Real(1e6) * eps * (scale + abs(total));
    if (rel > allow) allow = rel;
    if (errsum > allow)
        throw std::runtime_error("integrate_mp: quadrature failed to converge");
    return total;
}

/// Composite fixed-panel Gauss-Legendre 10-point rule (for oscillatory
/// integrands where the panel count is chosen from the known frequency).
template <class F>
inline double gauss10_panels(const F& f, double a, double b, int panels) {
    static const double x[5] = {0.1488743389816312, 0.4333953941292472,
                                0.6794095682990244, 0.8650633666889845,
                                0.9739065285171717};
    static const double w[5] = {0.2955242247147529, 0.2692667193099963,
                                0.2190863625159820, 0.1494513491505806,
                                0.0666713443086881};
    double total = 0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, c = lo + 0.5 * h, hh = 0.5 * h;
        double s = 0;
        for (int i = 0; i < 5; ++i)
            s += w[i] * (f(c - hh * x[i]) + f(c + hh * x[i]));
        total += s * hh;
    }
    return total;
}

}  // namespace specinv

#endif

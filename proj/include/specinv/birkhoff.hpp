#ifndef SPECINV_BIRKHOFF_HPP
#define SPECINV_BIRKHOFF_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "specinv/curve.hpp"
#include "specinv/phasequad.hpp"
#include "specinv/quadrature.hpp"
#include "specinv/schrod1d.hpp"
#include "specinv/testfunction.hpp"

namespace specinv {

/// Leading canonical form H0 (action s -> energy) and its empirical inverse
/// K per hbar (energy t -> action), mutual inverses up to O(hbar^2).
struct CanonicalForm {
    SampledCurve H0;  // s -> H0(s)
    SampledCurve K;   // t -> K(t)
};

/// Leading-order canonical form from the area function: H0(s) = lambda
/// exactly when s = A(lambda) / (2 pi); inverted by monotone interpolation.
/// Requires a single well with V'' > 0 on the sublevel set (checked by
/// sampling), which makes A strictly increasing and smooth.
inline SampledCurve hqb0_from_area(const PotentialSpec& V,
                                   const std::vector<double>& s_grid) {
    double x1 = right_turning(V, V.cap), x2 = left_turning(V, V.cap);
    for (int i = 0; i <= 200; ++i) {
        double x = x2 + (x1 - x2) * i / 200.0;
        if (!(V.derivative(x, 2) > 0))
            throw std::domain_error("hqb0_from_area: V'' <= 0 on the sublevel set");
    }
    const int n = 400;
    std::vector<double> lam(n + 1), act(n + 1);
    for (int i = 0; i <= n; ++i) {
        lam[i] = V.cap * i / double(n);
        act[i] = i == 0 ? 0.0 : area(V, lam[i]) / (2 * M_PI);
    }
    Pchip inv(SampledCurve(act, lam, "lambda(action)"));
    std::vector<double> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        if (s < 0 || s > act.back())
            throw std::invalid_argument("hqb0_from_area: s outside the action range");
        out.push_back(s == 0 ? 0.0 : inv.eval(s));
    }
    return SampledCurve(s_grid, out, "H0");
}

/// Empirical canonical coordinate from eigenvalue data: the n-th eigenvalue
/// sits at action hbar (n + 1/2), so K(lambda_n) = hbar (n + 1/2) inverts the
/// canonical form on the spectrum's abscissae.
inline SampledCurve k_from_spectrum(const Spectrum& s) {
    if (!s.converged)
        throw std::invalid_argument("k_from_spectrum: spectrum not converged");
    if (s.eigenvalues.empty()) return SampledCurve();
    std::vector<double> y(s.eigenvalues.size());
    for (size_t n = 0; n < y.size(); ++n) y[n] = s.hbar * (n + 0.5);
    return SampledCurve(s.eigenvalues, y, "K");
}

/// Residual of the spectral-measure identity: the normalized trace should
/// equal (1/hbar) int f(t) K'(t) dt.  Returns |sum_n f(lambda_n) - integral|;
/// callers compare against |sum_n f(lambda_n)|.
inline double verify_measure_identity(const Spectrum& s, const TestFunction& f,
                                      const SampledCurve& K) {
    double trace = 0;
    for (double lam : s.eigenvalues) trace += f.value(lam);
    double integral = 0;
    if (K.size() >= 2) {
        SampledCurve Ke = K;
        if (Ke.x.front() > 0) {
            // the action coordinate vanishes at the well bottom; without this
            // anchor the integral misses the [0, lambda_0] segment
            Ke.x.insert(Ke.x.begin(), 0.0);
            Ke.y.insert(Ke.y.begin(), 0.0);
        }
        Pchip interp(Ke);
        double hi = std::min(Ke.x.back(), f.support_end());
        // integrate interval by interval: the monotone interpolant's derivative
        // is only piecewise smooth at the knots
        for (size_t i = 0; i + 1 < Ke.size(); ++i) {
            double a = Ke.x[i], b = std::min(Ke.x[i + 1], hi);
            if (a >= b) continue;
            integral += gauss10_panels(
                [&](double t) { return f.value(t) * interp.derivative(t); }, a, b, 1);
        }
    }
    return std::abs(trace - integral / s.hbar);
}

}  // namespace specinv

#endif

#ifndef SPECINV_ABELINV_HPP
#define SPECINV_ABELINV_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "specinv/curve.hpp"
#include "specinv/potential.hpp"

namespace specinv {

/// Abel fractional integral (J^a g)(l) = (1/Gamma(a)) int_0^l (l-t)^{a-1} g(t) dt,
/// computed by product integration: g is replaced by a piecewise-cubic local
/// interpolant and each piece is integrated against the kernel exactly via
/// monomial kernel moments.  Output on g's grid.
inline SampledCurve abel_J(double a, const SampledCurve& g) {
    if (a <= 0) throw std::invalid_argument("abel_J: order must be positive");
    if (g.x.front() < -1e-12 || g.x.front() > 1e-12)
        throw std::invalid_argument("abel_J: grid must start at 0");
    size_t n = g.size();
    // local cubic through the 4 knots nearest each interval (Newton form about
    // x_i); local interpolation avoids the boundary layer a natural spline
    // second-derivative condition would introduce at the endpoints
    std::vector<std::array<double, 4>> cub(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        size_t i0 = i == 0 ? 0 : (i + 2 < n ? i - 1 : n - 4);
        double t[4], y[4];
        for (int k = 0; k < 4; ++k) {
            t[k] = g.x[i0 + k] - g.x[i];
            y[k] = g.y[i0 + k];
        }
        double dd[4] = {y[0], y[1], y[2], y[3]};  // divided differences
        for (int lvl = 1; lvl < 4; ++lvl)
            for (int k = 3; k >= lvl; --k)
                dd[k] = (dd[k] - dd[k - 1]) / (t[k] - t[k - lvl]);
        // expand Newton form dd0 + dd1 (u-t0) + dd2 (u-t0)(u-t1) + ... in u
        std::array<double, 4> c = {dd[3], 0, 0, 0};
        for (int lvl = 2; lvl >= 0; --lvl) {
            for (int k = 3; k > 0; --k) c[k] = c[k - 1] - t[lvl] * c[k];
            c[0] = dd[lvl] - t[lvl] * c[0];
        }
        cub[i] = c;
    }
    std::vector<double> out(n, 0.0);
    double inv_gamma = 1.0 / std::tgamma(a);
    for (size_t j = 1; j < n; ++j) {
        double lam = g.x[j];
        double acc = 0;
        for (size_t i = 0; i < j; ++i) {
            double xi = g.x[i], h = g.x[i + 1] - g.x[i];
            const auto& c = cub[i];
            double d = lam - xi;
            // moments M_k = int_0^h (d-w)^{a-1} w^k dw
            double M[4];
            if (h <= 0.5 * d) {
                // (1 - w/d)^{a-1} binomial series: geometric decay in h/d, no
                // cancellation (a difference recurrence loses (d/h)^k digits)
                double pref = std::pow(d, a - 1);
                for (int k = 0; k < 4; ++k) {
                    double b = 1.0, q = 1.0, s = 0;
                    for (int j = 0; j < 64; ++j) {
                        double term = b * q / (k + j + 1);
                        s += term;
                        if (std::abs(term) < 1e-17 * std::abs(s)) break;
                        b *= (j + 1 - a) / (j + 1);
                        q *= h / d;
                    }
                    M[k] = pref * std::pow(h, k + 1) * s;
                }
            } else {
                double T[4][4];
                for (int m = 0; m < 4; ++m) {
                    double p = a + m;
                    T[m][0] = (std::pow(d, p) - std::pow(d - h, p)) / p;
                }
                for (int k = 1; k < 4; ++k)
                    for (int m = 0; m + k < 4; ++m)
                        T[m][k] = d * T[m][k - 1] - T[m + 1][k - 1];
                for (int k = 0; k < 4; ++k) M[k] = T[0][k];
            }
            for (int k = 0; k < 4; ++k) acc += c[k] * M[k];
        }
        out[j] = inv_gamma * acc;
    }
    return SampledCurve(g.x, out, "J^a");
}

/// Inverts C(l) = int_0^l sqrt(l-s) h(s) ds for h: apply J^{1/2}, which turns C
/// into Gamma(3/2) J^2 h, then differentiate twice (smoothing-spline fit, GCV
/// penalty) and divide by Gamma(3/2) = sqrt(pi)/2.  If noise_estimate is given
/// it receives the residual sum of squares of the smoothing fit.
inline SampledCurve abel_invert_halfstep(const SampledCurve& curve,
                                         double* noise_estimate = nullptr) {
    SampledCurve half = abel_J(0.5, curve);
    size_t n = half.size();
    // A linear part of the input maps to a t^{3/2} cusp of J^{1/2}: its second
    // derivative is unbounded at 0 and a spline fit cannot follow it.  Fit the
    // leading small-t behavior, peel the cusp off, differentiate the smooth
    // remainder, and add the cusp's second derivative back in closed form.
    size_t m = std::min<size_t>(40, n / 4);
    double xm = half.x[m];
    Eigen::MatrixXd Bm(m, 4);
    Eigen::VectorXd yv(m);
    for (size_t i = 0; i < m; ++i) {
        double xi = half.x[i + 1] / xm;
        Bm(i, 0) = std::pow(xi, 1.5);
        Bm(i, 1) = xi * xi;
        Bm(i, 2) = std::pow(xi, 2.5);
        Bm(i, 3) = xi * xi * xi;
        yv(i) = half.y[i + 1];
    }
    Eigen::Vector4d cf = Bm.colPivHouseholderQr().solve(yv);
    double c32 = cf(0) / std::pow(xm, 1.5);  // t^{3/2} cusp
    double c52 = cf(2) / std::pow(xm, 2.5);  // t^{5/2} cusp
    for (size_t i = 0; i < n; ++i) {
        double t = half.x[i];
        half.y[i] -= c32 * std::pow(t, 1.5) + c52 * std::pow(t, 2.5);
    }
    SmoothingSpline fit(half);
    if (noise_estimate) *noise_estimate = fit.residual_ss();
    std::vector<double> out;
    out.reserve(n);
    double scale = 2.0 / std::sqrt(M_PI);
    for (double t : half.x)
        out.push_back(scale *
                      (fit.derivative2(t) +
                       (t > 0 ? 0.75 * c32 / std::sqrt(t) + 3.75 * c52 * std::sqrt(t)
                              : 0.0)));
    out[0] = out[1];  // the grid origin is outside the usable range anyway
    return SampledCurve(half.x, out, "halfstep-inverse");
}

/// Derivatives of the two inverse branches of a well, f1' > f2' > 0, with the
/// integrated profiles f_i(0) = 0.
struct WellProfilePair {
    SampledCurve f1_prime, f2_prime;  // on s in (0, lambda_max]
    SampledCurve f1, f2;              // integrated, f_i(0) = 0
};

namespace detail {

/// Integrates a branch derivative p(s) ~ c/sqrt(s) + smooth from 0: substitute
/// s = u^2 so the integrand w(u) = 2 u p(u^2) is analytic at 0, then integrate
/// the local cubic through the 4 nearest samples on each u-cell (the startup
/// cell [0, u_1] extrapolates the first cubic, so no trapezoid startup error).
inline SampledCurve integrate_branch(const SampledCurve& p, const char* name) {
    size_t n = p.size();
    std::vector<double> u(n), w(n);
    for (size_t i = 0; i < n; ++i) {
        u[i] = std::sqrt(p.x[i]);
        w[i] = 2 * u[i] * p.y[i];
    }
    std::vector<double> F(n);
    double acc = 0;
    for (size_t i = 0; i < n; ++i) {
        double a = i == 0 ? 0.0 : u[i - 1], b = u[i];
        size_t idx[4];
        if (i == 0) {
            // extrapolating down to 0: spread the fit points over [u_0, 2 u_0]
            // so the extrapolation distance matches the fit window (a cubic
            // through 4 adjacent samples would amplify noise by (u_0/h)^3)
            size_t prev = 0;
            for (int k = 0; k < 4; ++k) {
                double target = u[0] * (1.0 + k / 3.0);
                size_t j = std::lower_bound(u.begin(), u.end(), target) - u.begin();
                if (j >= n) j = n - 1;
                if (k > 0 && j <= prev) j = prev + 1 < n ? prev + 1 : n - 1;
                idx[k] = prev = j;
            }
        } else {
            size_t i0 = i < 2 ? 0 : (i + 2 <= n ? i - 2 : n - 4);
            for (int k = 0; k < 4; ++k) idx[k] = i0 + k;
        }
        double t[4], dd[4];
        for (int k = 0; k < 4; ++k) {
            t[k] = u[idx[k]] - a;
            dd[k] = w[idx[k]];
        }
        for (int lvl = 1; lvl < 4; ++lvl)
            for (int k = 3; k >= lvl; --k)
                dd[k] = (dd[k] - dd[k - 1]) / (t[k] - t[k - lvl]);
        double c[4] = {dd[3], 0, 0, 0};
        for (int lvl = 2; lvl >= 0; --lvl) {
            for (int k = 3; k > 0; --k) c[k] = c[k - 1] - t[lvl] * c[k];
            c[0] = dd[lvl] - t[lvl] * c[0];
        }
        double h = b - a, hp = h;
        for (int k = 0; k < 4; ++k) {
            acc += c[k] * hp / (k + 1);
            hp *= h;
        }
        F[i] = acc;
    }
    return SampledCurve(p.x, F, name);
}

/// Core of the well reconstructions: from sum S = p1 + p2 and reciprocal sum
/// R = 1/p1 + 1/p2 recover the ordered branch-derivative pair (p1 >= p2) as
/// roots of z^2 - S z + S/R.  s_cut and s_top drop the grid edges, where the
/// 1/sqrt(s) singularity (bottom) and the natural-spline boundary layer of the
/// differentiation step (top) make the transform unusable.
inline WellProfilePair branch_pair(const SampledCurve& S, const SampledCurve& R,
                                   double s_cut, double s_top) {
    std::vector<double> s, p1, p2;
    for (size_t i = 0; i < S.size(); ++i) {
        if (S.x[i] < s_cut || S.x[i] > s_top) continue;
        double sv = S.y[i], rv = R.y[i];
        if (!(sv > 0) || !(rv > 0))
            throw std::domain_error("recover_well: transformed curves not positive");
        double disc = sv * sv - 4 * sv / rv;
        if (disc < 0) {
            if (disc < -1e-2 * sv * sv)
                throw std::domain_error(
                    "recover_well: negative discriminant beyond tolerance "
                    "(asymmetry hypothesis violated or noisy input)");
            disc = 0;
        }
        double root = std::sqrt(disc);
        s.push_back(S.x[i]);
        p1.push_back(0.5 * (sv + root));
        p2.push_back(0.5 * (sv - root));
    }
    WellProfilePair out;
    out.f1_prime = SampledCurve(s, p1, "f1'");
    out.f2_prime = SampledCurve(s, p2, "f2'");
    out.f1 = integrate_branch(out.f1_prime, "f1");
    out.f2 = integrate_branch(out.f2_prime, "f2");
    return out;
}

/// Second derivative at every grid point from a local quartic through the 5
/// nearest samples (one-sided near the ends); unlike a natural spline this has
/// no endpoint boundary layer.
inline std::vector<double> local_second_derivative(const SampledCurve& g) {
    size_t n = g.size();
    if (n < 5) throw std::invalid_argument("local_second_derivative: need >= 5 points");
    std::vector<double> out(n);
    for (size_t i = 0; i < n; ++i) {
        size_t i0 = i < 2 ? 0 : (i + 2 < n ? i - 2 : n - 5);
        double t[5], dd[5];
        for (int k = 0; k < 5; ++k) {
            t[k] = g.x[i0 + k] - g.x[i];
            dd[k] = g.y[i0 + k];
        }
        for (int lvl = 1; lvl < 5; ++lvl)
            for (int k = 4; k >= lvl; --k)
                dd[k] = (dd[k] - dd[k - 1]) / (t[k] - t[k - lvl]);
        double c[5] = {dd[4], 0, 0, 0, 0};
        for (int lvl = 3; lvl >= 0; --lvl) {
            for (int k = 4; k > 0; --k) c[k] = c[k - 1] - t[lvl] * c[k];
            c[0] = dd[lvl] - t[lvl] * c[0];
        }
        out[i] = 2 * c[2];
    }
    return out;
}

/// V samples on one branch: abscissae x = x0 + sign * f(s), values s.
inline SampledCurve branch_potential(const SampledCurve& f, double x0, double sign,
                                     const char* name) {
    size_t n = f.size();
    std::vector<double> x(n), v(n);
    for (size_t i = 0; i < n; ++i) {
        size_t j = sign > 0 ? i : n - 1 - i;
        x[i] = x0 + sign * f.y[j];
        v[i] = f.x[j];
    }
    return SampledCurve(x, v, name);
}

}  // namespace detail

struct WellRecovery {
    WellProfilePair profiles;
    SampledCurve V_right;  // x > 0 branch, x ascending
    SampledCurve V_left;   // x < 0 branch, x ascending
    double noise_estimate = 0;
};

/// Single-well reconstruction from the two sublevel invariants
///   area(l)   = 2 sqrt2 int_0^l sqrt(l-s) (f1' + f2') ds
///   gradsq(l) = 2 sqrt2 int_0^l sqrt(l-s) (1/f1' + 1/f2') ds,
/// where x = f1(s) and x = -f2(s) invert s = V(x) on the two branches.
/// Returns the branch pair (f1' > f2') and V resampled on both branches.
inline WellRecovery recover_well(const SampledCurve& area_curve,
                                 const SampledCurve& gradsq_curve,
                                 double s_cut_fraction = 0.02,
                                 double s_top_fraction = 0.97) {
    double n1 = 0, n2 = 0;
    SampledCurve S = abel_invert_halfstep(area_curve, &n1);
    SampledCurve R = abel_invert_halfstep(gradsq_curve, &n2);
    double c = 1.0 / (2 * std::sqrt(2.0));
    for (auto& v : S.y) v *= c;
    for (auto& v : R.y) v *= c;
    double s_cut = s_cut_fraction * area_curve.x.back();
    double s_top = s_top_fraction * area_curve.x.back();
    WellRecovery out;
    out.profiles = detail::branch_pair(S, R, s_cut, s_top);
    out.V_right = detail::branch_potential(out.profiles.f1, 0.0, +1.0, "V right");
    out.V_left = detail::branch_potential(out.profiles.f2, 0.0, -1.0, "V left");
    out.noise_estimate = std::max(n1, n2);
    return out;
}

struct DoubleWellRecovery {
    WellProfilePair profiles;  // f1 = inner branch, f2 = outer branch of one well
    SampledCurve V_inner;      // x in (a - f1(l_max), a), ascending
    SampledCurve V_outer;      // x in (a, a + f2(l_max)), ascending
    double noise_estimate = 0;
};

/// Symmetric double well V(x) = V(-x) with minima at +-separation, for energies
/// below the barrier: each invariant is twice the single-well contribution, so
/// halving the curves reduces to the single-well machinery.  The inner branch
/// (toward the barrier) is the softer one and carries the larger derivative.
inline DoubleWellRecovery recover_double_well(const SampledCurve& area_curve,
                                              const SampledCurve& gradsq_curve,
                                              double separation,
                                              double s_cut_fraction = 0.02,
                                              double s_top_fraction = 0.97) {
    SampledCurve A = area_curve, G = gradsq_curve;
    for (auto& v : A.y) v *= 0.5;
    for (auto& v : G.y) v *= 0.5;
    double n1 = 0, n2 = 0;
    SampledCurve S = abel_invert_halfstep(A, &n1);
    SampledCurve R = abel_invert_halfstep(G, &n2);
    double c = 1.0 / (2 * std::sqrt(2.0));
    for (auto& v : S.y) v *= c;
    for (auto& v : R.y) v *= c;
    double s_cut = s_cut_fraction * area_curve.x.back();
    double s_top = s_top_fraction * area_curve.x.back();
    DoubleWellRecovery out;
    out.profiles = detail::branch_pair(S, R, s_cut, s_top);
    out.V_inner =
        detail::branch_potential(out.profiles.f1, separation, -1.0, "V inner");
    out.V_outer =
        detail::branch_potential(out.profiles.f2, separation, +1.0, "V outer");
    out.noise_estimate = std::max(n1, n2);
    return out;
}

struct MagneticRecovery {
    SampledCurve V;  // s -> V(s), s = |x|^2
    SampledCurve B;  // s -> B(s)
};

/// 2-D radial electric + magnetic recovery from the section 9 curves
///   I_l  = pi^2 int_0^l (l - x) f'(x) dx          (f = inverse of V)
///   II_l = pi^2 int_0^l (l - x) H(f(x)) f'(x) dx, H(s) = B^2 - 4 s V'' - 2 V'.
/// f' = I''/pi^2 integrates to f, V = f^{-1}; H follows from II''/(pi^2 f'),
/// and B = sqrt(H + 4 s V'' + 2 V') with V derivatives from the spline fit.
inline MagneticRecovery recover_magnetic_radial(const SampledCurve& I_curve,
                                                const SampledCurve& II_curve) {
    size_t n = I_curve.size();
    std::vector<double> lam = I_curve.x, fp(n), f(n);
    std::vector<double> Ipp = detail::local_second_derivative(I_curve);
    std::vector<double> IIpp = detail::local_second_derivative(II_curve);
    double pi2 = M_PI * M_PI;
    for (size_t i = 0; i < n; ++i) {
        fp[i] = Ipp[i] / pi2;
        if (!(fp[i] > 0))
            throw std::domain_error("recover_magnetic_radial: f not increasing");
    }
    double acc = 0;
    for (size_t i = 1; i < n; ++i) {
        acc += 0.5 * (fp[i - 1] + fp[i]) * (lam[i] - lam[i - 1]);
        f[i] = acc;
    }
    // V on the recovered s-grid (skip s = 0 where H needs f' from a one-sided fit)
    std::vector<double> s(f.begin() + 1, f.end());
    std::vector<double> vs(lam.begin() + 1, lam.end());
    SampledCurve V(s, vs, "V");
    CubicSpline Vsp(V);
    std::vector<double> b(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        double H = IIpp[i + 1] / (pi2 * fp[i + 1]);
        double rad = H + 4 * s[i] * Vsp.derivative2(s[i]) + 2 * Vsp.derivative(s[i]);
        if (rad < 0) {
            if (rad < -1e-3 * (1 + std::abs(H)))
                throw std::domain_error(
                    "recover_magnetic_radial: negative radicand for B^2");
            rad = 0;
        }
        b[i] = std::sqrt(rad);
    }
    return {V, SampledCurve(s, b, "B")};
}

/// Builds a member of the isospectral family: the base well (x^2/2 with one
/// smooth bump per swap cell (2k+1, 2k+2)) with each cell's bump reflected or
/// not according to the bit string.  The base must be even on the kept cells
/// and strictly larger on the positive side of each swap cell; this is checked
/// by sampling.
inline PotentialSpec make_isospectral_family(const PotentialSpec& base,
                                             const std::vector<int>& bits) {
    if (base.form != PotentialSpec::Form::spliced)
        throw std::invalid_argument("make_isospectral_family: base must be spliced");
    for (int b : base.bits)
        if (b != 0)
            throw std::invalid_argument(
                "make_isospectral_family: base must have all-zero bits");
    if (bits.size() > base.bits.size())
        throw std::invalid_argument("make_isospectral_family: too many bits");
    // sampling check of the structural hypotheses
    size_t ncells = base.bits.size();
    for (size_t k = 0; k < ncells; ++k) {
        for (int i = 1; i < 32; ++i) {
            double x = 2.0 * k + i / 32.0;  // kept cell [2k, 2k+1]
            if (std::abs(base.value(x) - base.value(-x)) > 1e-12)
                throw std::domain_error(
                    "make_isospectral_family: base not even on a kept cell");
            double xs = 2.0 * k + 1.0 + i / 32.0;  // swap cell (2k+1, 2k+2)
            if (!(base.value(xs) > base.value(-xs)))
                throw std::domain_error(
                    "make_isospectral_family: base not asymmetric on a swap cell");
        }
    }
    PotentialSpec out = base;
    for (size_t k = 0; k < bits.size(); ++k) out.bits[k] = bits[k] ? 1 : 0;
    return out;
}

}  // namespace specinv

#endif

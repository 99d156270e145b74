#ifndef SPECINV_PHASEQUAD_HPP
#define SPECINV_PHASEQUAD_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "specinv/curve.hpp"
#include "specinv/invariants.hpp"
#include "specinv/potential.hpp"
#include "specinv/quadrature.hpp"
#include "specinv/testfunction.hpp"

namespace specinv {

// ---- turning points ----

inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double flo = g(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-13 * (1 + std::abs(mid))) return mid;
        double fm = g(mid);
        if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Right turning point x1 > xref with V(x1) = lambda (V increasing there).
inline double right_turning(const PotentialSpec& V, double lambda, double xref = 0.0) {
    double lo = xref, hi = xref;
    double step = 1e-3;
    while (V.value(hi) < lambda) {
        lo = hi;
        hi += step;
        step *= 1.5;
        if (hi > V.L) { hi = V.L; if (V.value(hi) < lambda) throw std::runtime_error("right_turning: bracket failure"); break; }
    }
    return bisect([&](double x) { return V.value(x) - lambda; }, lo, hi);
}

inline double left_turning(const PotentialSpec& V, double lambda, double xref = 0.0) {
    double lo = xref, hi = xref;
    double step = 1e-3;
    while (V.value(lo) < lambda) {
        hi = lo;
        lo -= step;
        step *= 1.5;
        if (lo < -V.L) { lo = -V.L; if (V.value(lo) < lambda) throw std::runtime_error("left_turning: bracket failure"); break; }
    }
    return bisect([&](double x) { return V.value(x) - lambda; }, lo, hi);
}

// ---- area / period with square-root-desingularizing substitution ----
// All integrals split at the midpoint and substitute x = xt -/+ u^2 near each
// turning point xt so the integrand is smooth in u.  Near xt the difference
// lambda - V(x) cancels catastrophically in doubles, so it is evaluated there
// from the Taylor jets of V at xt instead.

/// Evaluates lambda - V(xt + h) stably, assuming V(xt) = lambda.
class EdgeGap {
  public:
    EdgeGap(const PotentialSpec& V, double xt) : V_(&V), xt_(xt) {
        V.jets(xt, NJ, jets_);
    }
    double operator()(double h) const {
        if (std::abs(h) > 1e-3 * (1 + std::abs(xt_)))
            return jets_[0] - V_->value(xt_ + h);
        // lambda - V(xt+h) = -sum_{k>=1} V^(k)(xt) h^k / k!
        double s = 0, fact = 1;
        double coef[NJ + 1];
        for (int k = 1; k <= NJ; ++k) {
            fact *= k;
            coef[k] = jets_[k] / fact;
        }
        for (int k = NJ; k >= 1; --k) s = s * h - coef[k];
        return s * h;
    }

  private:
    static constexpr int NJ = 10;
    const PotentialSpec* V_;
    double xt_;
    double jets_[NJ + 1];
};

/// int over one half-well of w(x) (2(lambda-V))^{p} dx with x = xt + sgn u^2.
template <class W>
inline double half_turning(const PotentialSpec& V, double lambda, double xt, double sgn,
                           double ulim, double p, const W& w, double abstol) {
    EdgeGap gap(V, xt);
    auto f = [&](double u) {
        double h = sgn * u * u;
        double q = 2.0 * gap(h);
        if (q <= 0) q = 0;
        if (q == 0 && p < 0) return 0.0;
        return 2.0 * u * w(xt + h) * std::pow(q, p);
    };
    return integrate(f, 0.0, ulim, abstol).value;
}

template <class W>
inline double well_integral(const PotentialSpec& V, double lambda, double p, const W& w,
                            double abstol, double xref = 0.0) {
    double x1 = right_turning(V, lambda, xref), x2 = left_turning(V, lambda, xref);
    double xm = 0.5 * (x1 + x2);
    return half_turning(V, lambda, x1, -1.0, std::sqrt(x1 - xm), p, w, abstol) +
           half_turning(V, lambda, x2, 1.0, std::sqrt(xm - x2), p, w, abstol);
}

inline double area(const PotentialSpec& V, double lambda, double abstol = 1e-12,
                   double xref = 0.0) {
    return well_integral(V, lambda, 0.5, [](double) { return 2.0; }, abstol, xref);
}

inline double period(const PotentialSpec& V, double lambda, double abstol = 1e-12) {
    return well_integral(V, lambda, -0.5, [](double) { return 2.0; }, abstol);
}

/// Sublevel integral of a position weight: int_{H<=lambda} w(x) dxdxi
/// = int w(x) 2 sqrt(2(lambda-V)) dx.
template <class W>
inline double sublevel_weighted(const PotentialSpec& V, double lambda, const W& w,
                                double abstol = 1e-12, double xref = 0.0) {
    return well_integral(V, lambda, 0.5,
                         [&](double x) { return 2.0 * w(x); }, abstol, xref);
}

inline SampledCurve area_curve(const PotentialSpec& V, const std::vector<double>& grid) {
    std::vector<double> vals;
    for (double l : grid) vals.push_back(area(V, l));
    return SampledCurve(grid, vals, "area");
}

inline SampledCurve period_curve(const PotentialSpec& V, const std::vector<double>& grid) {
    std::vector<double> vals;
    for (double l : grid) vals.push_back(period(V, l));
    return SampledCurve(grid, vals, "period");
}

/// max over the grid of |T(lambda) - 2 pi|.
inline double zoll_defect(const PotentialSpec& V, const std::vector<double>& grid) {
    double defect = 0;
    for (double l : grid) defect = std::max(defect, std::abs(period(V, l) - 2 * M_PI));
    return defect;
}

// ---- invariant curves ----

enum class CurveKind { area_sec4, gradientsq_sec4, magnetic_I_sec9, magnetic_II_sec9 };

/// Section 4 curves in the xi^2/2+V convention.
inline SampledCurve invariant_curve(const PotentialSpec& V, const std::vector<double>& grid,
                                    CurveKind kind, double xref = 0.0) {
    std::vector<double> vals;
    switch (kind) {
        case CurveKind::area_sec4:
            for (double l : grid) vals.push_back(l == 0 ? 0.0 : area(V, l, 1e-12, xref));
            break;
        case CurveKind::gradientsq_sec4:
            for (double l : grid) {
                auto w = [&](double x) {
                    double d = V.derivative(x, 1);
                    return d * d;
                };
                vals.push_back(l == 0 ? 0.0 : sublevel_weighted(V, l, w, 1e-12, xref));
            }
            break;
        default:
            throw std::invalid_argument("invariant_curve: section 9 kinds need radial data");
    }
    return SampledCurve(grid, vals, "invariant");
}

/// Section 9 radial curves (xi^2 + V convention):
///   I_lambda  = pi^2 int_0^{s(lambda)} (lambda - W(s)) ds
///   II_lambda = pi^2 int_0^{s(lambda)} (lambda - W(s)) H(s) ds,
///   H(s) = B(s)^2 - 4 s W''(s) - 2 W'(s).
inline SampledCurve radial_curve(const RadialPoly& W, const RadialPoly& B,
                                 const std::vector<double>& grid, CurveKind kind,
                                 double abstol = 1e-12) {
    if (kind != CurveKind::magnetic_I_sec9 && kind != CurveKind::magnetic_II_sec9)
        throw std::invalid_argument("radial_curve: expects a section 9 kind");
    std::vector<double> vals;
    for (double lam : grid) {
        // s(lambda): W increasing from W(0)=0
        double hi = 1e-6;
        while (W.eval(hi) < lam) hi *= 1.5;
        double slam = bisect([&](double s) { return W.eval(s) - lam; }, 0.0, hi);
        auto f = [&](double s) {
            double base = lam - W.eval(s);
            if (kind == CurveKind::magnetic_I_sec9) return base;
            double b = B.eval(s);
            double H = b * b - 4 * s * W.d2(s) - 2 * W.d1(s);
            return base * H;
        };
        vals.push_back(M_PI * M_PI * integrate(f, 0.0, slam, abstol).value);
    }
    return SampledCurve(grid, vals,
                        kind == CurveKind::magnetic_I_sec9 ? "I" : "II");
}

// ---- phase-space quadrature of integrand forms ----

namespace detail {

struct CompiledTerm {
    int l;                         // f-derivative order
    std::vector<int> xi;           // xi exponents
    std::vector<JetSymbol> jets;   // jet factors
    double coeff;                  // real coefficient
    double coeff_im;
};

inline std::vector<CompiledTerm> compile(const IntegrandForm& g) {
    std::vector<CompiledTerm> out;
    for (const auto& [l, p] : g.by_order)
        for (const auto& [mon, c] : p.terms()) {
            if (mon.t_pow != 0) throw std::logic_error("compile: t in integrand");
            out.push_back({l, mon.xi, mon.jets, to_double(c.re), to_double(c.im)});
        }
    return out;
}

inline int max_forder(const IntegrandForm& g) {
    int m = 0;
    for (const auto& [l, p] : g.by_order) m = std::max(m, l);
    return m;
}
inline int max_jet_order(const IntegrandForm& g) {
    int m = 0;
    for (const auto& [l, p] : g.by_order)
        for (const auto& [mon, c] : p.terms())
            for (const auto& j : mon.jets) m = std::max(m, j.total_order());
    return m;
}

}  // namespace detail

/// nu-type quadrature in 1-D: int sum_l f^(l)(xi^2/2+V) g_l(x, xi, V-jets) dx dxi.
/// When reduce is set, each term xi^{2a} f^(l) is first rewritten by the exact
/// identity int xi^{2a} f^(l) dxi = -(2a-1) int xi^{2a-2} f^(l-1) dxi (applied
/// min(a,l) times), which lowers the f-derivative order as far as the term's
/// xi power allows and greatly improves the conditioning of the quadrature.
/// Real selects the working precision; plateau-bump derivatives grow super-
/// factorially in the order, so high-order presentations need float128.
template <class Real = double>
inline double nu_quad(const IntegrandForm& g, const PotentialSpec& V, const TestFunction& f,
                      double abstol = 1e-10, bool reduce = true) {
    using std::abs;
    using std::sqrt;
    if (g.dims != 1) throw std::invalid_argument("nu_quad: 1-D only");
    if (g.is_zero()) return 0.0;
    if (!g.all_real())
        throw std::invalid_argument("nu_quad: integrand has imaginary coefficients");
    auto terms = detail::compile(g);
    double s1 = f.support_end();
    double x1 = right_turning(V, s1), x2 = left_turning(V, s1);

    struct Reduced {
        double coeff;
        int xipow;  // even
        int l;
        std::vector<JetSymbol> jets;
    };
    std::vector<Reduced> red;
    int forder = 0, jorder = 1;
    for (const auto& t : terms) {
        if (t.xi[0] % 2)
            throw std::invalid_argument("nu_quad: odd xi power; apply drop_odd_xi first");
        Reduced r{t.coeff, t.xi[0], t.l, t.jets};
        if (reduce)
            while (r.xipow >= 2 && r.l >= 1) {
                r.coeff *= -(r.xipow - 1);
                r.xipow -= 2;
                r.l -= 1;
            }
        forder = std::max(forder, r.l);
        for (const auto& j : r.jets) jorder = std::max(jorder, j.total_order());
        red.push_back(std::move(r));
    }

    Real tol = Real(abstol);
    auto outer = [&](Real x) {
        Real jets[16];
        V.jets<Real>(x, jorder, jets);
        Real gap = Real(s1) - jets[0];
        if (gap <= 0) return Real(0);
        Real xim = sqrt(Real(2) * gap);
        std::vector<Real> w(red.size());
        for (size_t i = 0; i < red.size(); ++i) {
            Real c(red[i].coeff);
            for (const auto& j : red[i].jets) c *= jets[j.total_order()];
            w[i] = c;
        }
        auto innerf = [&](Real xi) {
            Real fd[16];
            f.jets<Real>(jets[0] + xi * xi / Real(2), forder, fd);
            Real pw[32];
            pw[0] = Real(1);
            Real xi2 = xi * xi;
            for (int p = 1; p < 16; ++p) pw[p] = pw[p - 1] * xi2;
            Real acc(0);
            for (size_t i = 0; i < red.size(); ++i)
                acc += w[i] * pw[red[i].xipow / 2] * fd[red[i].l];
            return acc;
        };
        // integrand is even in xi
        return Real(2) * integrate_mp<Real>(innerf, Real(0), xim,
                                            tol / Real(4 * (x1 - x2)));
    };
    Real result = integrate_mp<Real>(outer, Real(x2), Real(x1), tol);
    return static_cast<double>(result);
}

/// Numeric IBP-equivalence: same canonical form and matching phase-space
/// integrals on every supplied potential/test-function pair.
struct IbpEquivalenceReport {
    bool symbolic = false;
    bool numeric = false;
    double worst_rel = 0;
};

/// Max f-derivative order actually sampled by nu_quad after its reduction;
/// use it to decide whether double precision suffices (roughly order <= 6).
inline int reduced_max_forder(const IntegrandForm& g) {
    int m = 0;
    for (const auto& [l, p] : g.by_order)
        for (const auto& [mon, c] : p.terms())
            m = std::max(m, l - std::min(l, mon.xi[0] / 2));
    return m;
}

template <class Real = double>
inline IbpEquivalenceReport ibp_equivalent(const IntegrandForm& g1, const IntegrandForm& g2,
                                           const ModelSymbol& model,
                                           const std::vector<PotentialSpec>& oracles,
                                           const std::vector<TestFunction>& fs,
                                           double reltol = 1e-8) {
    IbpEquivalenceReport rep;
    rep.symbolic = ibp_equivalent_symbolic(g1, g2, model);
    rep.numeric = true;
    for (const auto& V : oracles)
        for (const auto& f : fs) {
            double a = nu_quad<Real>(g1, V, f);
            double b = nu_quad<Real>(g2, V, f);
            double scale = std::max({std::abs(a), std::abs(b), 1e-6});
            double rel = std::abs(a - b) / scale;
            rep.worst_rel = std::max(rep.worst_rel, rel);
            if (rel > reltol) rep.numeric = false;
        }
    if (rep.symbolic != rep.numeric)
        throw std::runtime_error(
            rep.symbolic ? "ibp_equivalent: normal forms equal but numerics disagree"
                         : "ibp_equivalent: numerics agree but normal forms differ");
    return rep;
}

// ---- 2-D radial magnetic quadrature (eta representation) ----

/// Jet values of V = W(|x|^2) and the Coulomb potential a = (-x2 g, x1 g),
/// g = g(|x|^2), at a point; total derivative order <= 2.
inline double radial_jet_value(const JetSymbol& j, double x1, double x2,
                               const RadialPoly& W, const RadialPoly& G) {
    double s = x1 * x1 + x2 * x2;
    int o1 = j.orders[0], o2 = j.orders[1];
    if (j.is_potential()) {
        double w1 = W.d1(s), w2 = W.d2(s);
        if (o1 == 0 && o2 == 0) return W.eval(s);
        if (o1 == 1 && o2 == 0) return 2 * x1 * w1;
        if (o1 == 0 && o2 == 1) return 2 * x2 * w1;
        if (o1 == 2 && o2 == 0) return 2 * w1 + 4 * x1 * x1 * w2;
        if (o1 == 0 && o2 == 2) return 2 * w1 + 4 * x2 * x2 * w2;
        if (o1 == 1 && o2 == 1) return 4 * x1 * x2 * w2;
    } else {
        double g = G.eval(s), g1 = G.d1(s), g2 = G.d2(s);
        if (j.target == 0) {  // a1 = -x2 g
            if (o1 == 0 && o2 == 0) return -x2 * g;
            if (o1 == 1 && o2 == 0) return -2 * x1 * x2 * g1;
            if (o1 == 0 && o2 == 1) return -g - 2 * x2 * x2 * g1;
            if (o1 == 2 && o2 == 0) return -x2 * (2 * g1 + 4 * x1 * x1 * g2);
            if (o1 == 1 && o2 == 1) return -2 * x1 * g1 - 4 * x1 * x2 * x2 * g2;
            if (o1 == 0 && o2 == 2) return -6 * x2 * g1 - 4 * x2 * x2 * x2 * g2;
        } else {  // a2 = x1 g
            if (o1 == 0 && o2 == 0) return x1 * g;
            if (o1 == 1 && o2 == 0) return g + 2 * x1 * x1 * g1;
            if (o1 == 0 && o2 == 1) return 2 * x1 * x2 * g1;
            if (o1 == 2 && o2 == 0) return 6 * x1 * g1 + 4 * x1 * x1 * x1 * g2;
            if (o1 == 1 && o2 == 1) return 2 * x2 * g1 + 4 * x1 * x1 * x2 * g2;
            if (o1 == 0 && o2 == 2) return x1 * (2 * g1 + 4 * x2 * x2 * g2);
        }
    }
    throw std::invalid_argument("radial_jet_value: unsupported jet order");
}

/// int_0^{2pi} cos^a sin^b dpsi (0 unless both even).
inline double angular_moment(int a, int b) {
    if (a % 2 || b % 2) return 0.0;
    auto dfac = [](int k) {
        double r = 1;
        for (int v = k; v >= 2; v -= 2) r *= v;
        return r;
    };
    return 2 * M_PI * dfac(a - 1) * dfac(b - 1) / dfac(a + b);
}

/// Phase-space integral of an eta-representation integrand for the radial
/// 2-D magnetic model: int dx deta sum_l f^(l)(eta^2/2+V) g_l(x, eta, jets).
inline double nu_quad_magnetic_radial(const IntegrandForm& g, const RadialPoly& W,
                                      const RadialPoly& G, const TestFunction& f,
                                      double abstol = 1e-9) {
    if (g.dims != 2) throw std::invalid_argument("nu_quad_magnetic_radial: dims 2");
    if (g.is_zero()) return 0.0;
    auto terms = detail::compile(g);
    int forder = detail::max_forder(g);
    double s1 = f.support_end();
    double shi = 1e-6;
    while (W.eval(shi) < s1) shi *= 1.5;
    double smax = bisect([&](double s) { return W.eval(s) - s1; }, 0.0, shi);
    double rmax = std::sqrt(smax);

    // Reduce each eta monomial by the exact per-axis identity
    //   int eta_k^{2a} f^(l) deta_k = -(2a-1) int eta_k^{2a-2} f^(l-1) deta_k
    // to lower the f-derivative order, then integrate the polar remainder:
    //   int_{R^2} eta1^{g1} eta2^{g2} f^(l) deta
    //     = am(g1,g2) int_0^inf rho^{g1+g2+1} f^(l)(rho^2/2+V) drho.
    struct Reduced {
        double base;  // coeff * angular moment * reduction sign factors
        int rpow;     // g1 + g2 after reduction
        int l;
        std::vector<JetSymbol> jets;
    };
    std::vector<Reduced> red;
    forder = 0;
    for (const auto& t : terms) {
        double am = angular_moment(t.xi[0], t.xi[1]);
        if (am == 0) continue;
        int l = t.l;
        double c = t.coeff * am;
        // radial reduction: d/drho f^(l-1)(rho^2/2+V) = rho f^(l), so
        //   int_0^inf rho^{p+1} f^(l) drho = -p int rho^{p-1} f^(l-1) drho
        // (boundary terms vanish for p >= 2; p stays even).
        int p = t.xi[0] + t.xi[1];
        while (l >= 1 && p >= 2) {
            c *= -p;
            p -= 2;
            l -= 1;
        }
        forder = std::max(forder, l);
        red.push_back({c, p, l, t.jets});
    }
    if (red.empty()) return 0.0;

    const int NT = 32;  // theta samples; integrands are low-degree trig polys
    auto outer = [&](double r) {
        double s = r * r;
        double Vv = W.eval(s);
        if (Vv >= s1) return 0.0;
        double rhom = std::sqrt(2.0 * (s1 - Vv));
        // theta-averaged jet products per reduced term
        std::vector<double> w(red.size(), 0.0);
        for (int it = 0; it < NT; ++it) {
            double th = 2 * M_PI * it / NT;
            double x1 = r * std::cos(th), x2 = r * std::sin(th);
            for (size_t ti = 0; ti < red.size(); ++ti) {
                double v = 1;
                for (const auto& j : red[ti].jets)
                    v *= radial_jet_value(j, x1, x2, W, G);
                w[ti] += v;
            }
        }
        for (size_t ti = 0; ti < red.size(); ++ti)
            w[ti] *= (2 * M_PI / NT) * red[ti].base;
        auto inner = [&](double rho) {
            double fd[16];
            f.jets(rho * rho / 2 + Vv, forder, fd);
            double acc = 0;
            for (size_t ti = 0; ti < red.size(); ++ti) {
                double v = w[ti] * fd[red[ti].l];
                for (int e = 0; e < red[ti].rpow; ++e) v *= rho;
                acc += v;
            }
            return acc * rho;
        };
        return integrate(inner, 0.0, rhom, abstol / (8 * rmax)).value * r;
    };
    return integrate(outer, 0.0, rmax, abstol).value;
}

}  // namespace specinv

#endif

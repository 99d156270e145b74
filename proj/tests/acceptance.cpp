// End-to-end acceptance checks.  Each criterion prints detail lines and one
// final PASS/FAIL verdict; the exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "specinv/abelinv.hpp"
#include "specinv/birkhoff.hpp"
#include "specinv/ddreal.hpp"
#include "specinv/invariants.hpp"
#include "specinv/phasequad.hpp"
#include "specinv/polycas.hpp"
#include "specinv/potential.hpp"
#include "specinv/schrod1d.hpp"

using namespace specinv;

namespace {

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

GaussRat fr(long p, long q) { return GaussRat(Rat(p, q)); }
GaussRat fri(long p, long q) { return GaussRat(Rat(p, q)) * GaussRat::i(); }

SymPoly T1(int p) { return SymPoly::t(1, p); }
SymPoly X1(int p) { return SymPoly::xi(1, 0, p); }
SymPoly D1(int k) { return SymPoly::jet(1, JetSymbol::V1(k)); }
SymPoly pw(const SymPoly& p, int n) {
    SymPoly r = SymPoly::one(p.dims());
    for (int i = 0; i < n; ++i) r = r * p;
    return r;
}

IntegrandForm nu_density(const ModelSymbol& m, int k) {
    IntegrandForm g(m.dims());
    if (k == 0) {
        g.add(0, SymPoly::one(m.dims()));
        return g;
    }
    IntegrandForm can = ibp_normalize(to_integrand(m.compute_b(2 * k)), m);
    return lower_while(can, [k](int l) { return l > k + 1; });
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = lo + (hi - lo) * i / n;
    return g;
}

template <class F>
double inner_sup(const SampledCurve& c, const F& vtrue) {
    size_t n = c.size();
    double worst = 0;
    for (size_t i = n / 10; i < n - n / 10; ++i)
        worst = std::max(worst, std::abs(vtrue(c.x[i]) - c.y[i]));
    return worst;
}

// ---- criterion 1: amplitude recursion vs the displayed closed forms ----

bool criterion1() {
    bool ok = true;
    {  // second amplitude in n = 3 dimensions
        const int n = 3;
        ModelSymbol m(ModelSymbol::Kind::scalar, n);
        SymPoly vkk = SymPoly::zero(n), vk2 = SymPoly::zero(n);
        SymPoly xx_vkl = SymPoly::zero(n), xx_vkvl = SymPoly::zero(n);
        for (int k = 0; k < n; ++k) {
            std::vector<int> ek(n, 0), ekk(n, 0);
            ek[k] = 1;
            ekk[k] = 2;
            vkk += SymPoly::jet(n, JetSymbol::V(ekk));
            vk2 += pw(SymPoly::jet(n, JetSymbol::V(ek)), 2);
            for (int l = 0; l < n; ++l) {
                std::vector<int> el(n, 0), ekl(n, 0);
                el[l] = 1;
                ekl[k] += 1;
                ekl[l] += 1;
                SymPoly xkxl = SymPoly::xi(n, k) * SymPoly::xi(n, l);
                xx_vkl += xkxl * SymPoly::jet(n, JetSymbol::V(ekl));
                xx_vkvl += xkxl * SymPoly::jet(n, JetSymbol::V(ek)) *
                           SymPoly::jet(n, JetSymbol::V(el));
            }
        }
        SymPoly expect = SymPoly::t(n, 2).scaled(fr(1, 4)) * vkk +
                         SymPoly::t(n, 3).scaled(fri(1, 6)) * (vk2 + xx_vkl) -
                         SymPoly::t(n, 4).scaled(fr(1, 8)) * xx_vkvl;
        bool p = m.compute_b(2) == expect;
        std::printf("  b2 closed form (n = 3): %s\n", p ? "match" : "MISMATCH");
        ok &= p;
    }
    {  // third amplitude, 1-D
        ModelSymbol m(ModelSymbol::Kind::scalar, 1);
        SymPoly expect = T1(3).scaled(fr(1, 6)) * X1(1) * D1(3) +
                         T1(4).scaled(fri(1, 3)) * X1(1) * D1(1) * D1(2) +
                         T1(4).scaled(fri(1, 24)) * X1(3) * D1(3) -
                         T1(5).scaled(fr(1, 12)) * X1(1) * pw(D1(1), 3) -
                         T1(5).scaled(fr(1, 12)) * X1(3) * D1(1) * D1(2) -
                         T1(6).scaled(fri(1, 48)) * X1(3) * pw(D1(1), 3);
        bool p = m.compute_b(3) == expect;
        std::printf("  b3 closed form (1-D): %s\n", p ? "match" : "MISMATCH");
        ok &= p;
    }
    {  // fourth amplitude, 1-D
        ModelSymbol m(ModelSymbol::Kind::scalar, 1);
        SymPoly expect =
            -T1(3).scaled(fri(1, 24)) * D1(4) +
            T1(4) * (pw(D1(2), 2).scaled(fr(7, 96)) + (D1(1) * D1(3)).scaled(fr(5, 48)) +
                     (X1(2) * D1(4)).scaled(fr(1, 16))) +
            T1(5) * ((pw(D1(1), 2) * D1(2)).scaled(fri(13, 120)) +
                     (X1(2) * pw(D1(2), 2)).scaled(fri(13, 120)) +
                     (X1(2) * D1(1) * D1(3)).scaled(fri(19, 120)) +
                     (X1(4) * D1(4)).scaled(fri(1, 120))) +
            T1(6) * (pw(D1(1), 4).scaled(fr(-1, 72)) +
                     (X1(2) * pw(D1(1), 2) * D1(2)).scaled(fr(-47, 288)) +
                     (X1(4) * pw(D1(2), 2)).scaled(fr(-1, 72)) +
                     (X1(4) * D1(1) * D1(3)).scaled(fr(-1, 48))) -
            T1(7) * ((X1(2) * pw(D1(1), 4)).scaled(fri(1, 48)) +
                     (X1(4) * pw(D1(1), 2) * D1(2)).scaled(fri(1, 48))) +
            T1(8).scaled(fr(1, 384)) * X1(4) * pw(D1(1), 4);
        bool p = m.compute_b(4) == expect;
        std::printf("  b4 closed form (1-D): %s\n", p ? "match" : "MISMATCH");
        ok &= p;
    }
    {  // magnetic first amplitude: sum_k p_xik p_xk (i t^2 / 2)
        for (int n : {2, 3}) {
            ModelSymbol m(ModelSymbol::Kind::magnetic, n);
            SymPoly expect = SymPoly::zero(n);
            for (int k = 0; k < n; ++k) expect += m.p_xi(k) * m.p_x(k);
            expect = expect * SymPoly::t(n, 2).scaled(fri(1, 2));
            bool p = m.compute_b(1) == expect;
            std::printf("  magnetic b1 closed form (n = %d): %s\n", n,
                        p ? "match" : "MISMATCH");
            ok &= p;
        }
    }
    {  // timing: fresh recursion through order 6
        double t0 = now_s();
        ModelSymbol m(ModelSymbol::Kind::scalar, 1);
        for (int o = 0; o <= 6; ++o) structure_check(m.compute_b(o), o);
        double dt = now_s() - t0;
        std::printf("  orders 0..6 with structure checks in %.2f s (limit 5)\n", dt);
        ok &= dt < 5.0;
    }
    return ok;
}

// ---- criterion 2: normal forms and quadrature cross-oracles ----

bool criterion2() {
    bool ok = true;
    ModelSymbol m1(ModelSymbol::Kind::scalar, 1);
    PotentialSpec Q = PotentialSpec::quartic();
    TestFunction f(0.2, 0.4);

    IntegrandForm raw2 = drop_odd_xi(to_integrand(m1.compute_b(2)));
    IntegrandForm can2 = ibp_normalize(raw2, m1);
    {
        IntegrandForm expect(1);
        expect.add(3, pw(D1(1), 2).scaled(fr(1, 24)));
        bool p = can2 == expect;
        std::printf("  hbar^2 density canonical form (1/24)(V')^2 f^(3): %s\n",
                    p ? "match" : "MISMATCH");
        ok &= p;
        IntegrandForm low = lower_while(can2, [](int l) { return l > 2; });
        IntegrandForm expect_low(1);
        expect_low.add(2, D1(2).scaled(fr(-1, 24)));
        bool p2 = low == expect_low;
        std::printf("  hbar^2 density lowered form -(1/24)V'' f^(2): %s\n",
                    p2 ? "match" : "MISMATCH");
        ok &= p2;
    }

    IntegrandForm raw4 = drop_odd_xi(to_integrand(m1.compute_b(4)));
    IntegrandForm can4 = ibp_normalize(raw4, m1);
    {
        IntegrandForm claimed(1);
        claimed.add(4, pw(D1(2), 2).scaled(fr(1, 480)));
        claimed.add(6, pw(D1(1), 4).scaled(fr(7, 3456)));
        bool p = can4 == claimed;
        std::printf("  hbar^4 density vs claimed {(1/480)(V'')^2 f^(4), (7/3456)(V')^4 f^(6)}: %s\n",
                    p ? "match" : "MISMATCH");
        if (!p) std::printf("  computed hbar^4 density:\n    %s\n", can4.str().c_str());
        ok &= p;

        IntegrandForm compact = lower_while(can4, [](int l) { return l > 4; });
        IntegrandForm claimed_compact(1);
        claimed_compact.add(4, (D1(1) * D1(3)).scaled(fr(7, 1152)) +
                                   pw(D1(2), 2).scaled(fr(47, 5760)));
        bool pc = compact == claimed_compact;
        std::printf("  hbar^4 compact form vs claimed (1/1152)(7 V'V''' + (47/5)(V'')^2) f^(4): %s\n",
                    pc ? "match" : "MISMATCH");
        if (!pc)
            std::printf("  computed compact form:\n    %s\n", compact.str().c_str());
        ok &= pc;
    }

    IntegrandForm raw6 = drop_odd_xi(to_integrand(m1.compute_b(6)));
    IntegrandForm can6 = ibp_normalize(raw6, m1);
    {
        IntegrandForm raised = raise_uniform(can6, 9);
        IntegrandForm claimed(1);
        claimed.add(9, (X1(8) * pw(D1(3), 2)).scaled(fr(1, 1411200)) +
                           (X1(6) * pw(D1(2), 3)).scaled(fr(-1, 181440)) +
                           (X1(4) * pw(D1(1) * D1(2), 2)).scaled(fr(-1, 34560)) +
                           pw(D1(1), 6).scaled(fr(-11, 414720)));
        bool p = raised == claimed;
        std::printf("  hbar^6 density raised to f^(9) vs the claimed display: %s\n",
                    p ? "match" : "MISMATCH");
        if (!p) std::printf("  computed raised density:\n    %s\n", raised.str().c_str());
        ok &= p;
    }

    {  // magnetic subprincipal term, dims 2
        ModelSymbol mm(ModelSymbol::Kind::magnetic, 2);
        IntegrandForm rawm1 = drop_odd_xi(to_integrand(mm.compute_b(1)));
        bool p0 = ibp_normalize(rawm1, mm).is_zero();
        std::printf("  magnetic hbar^1 density vanishes: %s\n", p0 ? "yes" : "NO");
        ok &= p0;

        IntegrandForm rawm = drop_odd_xi(to_integrand(mm.compute_b(2)));
        IntegrandForm canm = ibp_normalize(rawm, mm);
        // (1/48)(|B|^2 - 2 sum V_kk) f^(2), |B|^2 = tr B^2
        SymPoly normB2 = SymPoly::zero(2), vkk = SymPoly::zero(2);
        for (int k = 0; k < 2; ++k) {
            std::vector<int> ekk(2, 0);
            ekk[k] = 2;
            vkk += SymPoly::jet(2, JetSymbol::V(ekk));
            for (int j = 0; j < 2; ++j) {
                std::vector<int> ej(2, 0), ek(2, 0);
                ej[j] = 1;
                ek[k] = 1;
                SymPoly akj = SymPoly::jet(2, JetSymbol::a(k, ej));
                SymPoly ajk = SymPoly::jet(2, JetSymbol::a(j, ek));
                normB2 += (akj * ajk).scaled(GaussRat(2)) - (akj * akj).scaled(GaussRat(2));
            }
        }
        IntegrandForm paperm(2);
        paperm.add(2, (normB2 - vkk.scaled(GaussRat(2))).scaled(fr(1, 48)));
        bool pm = ibp_normalize(paperm, mm) == canm;
        std::printf("  magnetic hbar^2 density == (1/48)(|B|^2 - 2 sum V_kk) f^(2): %s\n",
                    pm ? "match" : "MISMATCH");
        ok &= pm;

        // quadrature cross-oracle on a radial fixture
        RadialPoly W{{0.0, 0.5, 0.1}};
        RadialPoly G{{0.3, 0.1}};
        double a = nu_quad_magnetic_radial(rawm, W, G, f, 1e-10);
        double b = nu_quad_magnetic_radial(canm, W, G, f, 1e-10);
        double rel = rel_diff(a, b);
        bool pq = rel <= 1e-8;
        std::printf("  magnetic raw vs canonical quadrature: rel diff %.2e (limit 1e-8)\n",
                    rel);
        ok &= pq;
    }

    {  // scalar raw-vs-canonical quadrature cross-oracles
        double a = nu_quad(raw2, Q, f, 1e-10), b = nu_quad(can2, Q, f, 1e-10);
        double rel = rel_diff(a, b);
        std::printf("  hbar^2 raw vs canonical quadrature: rel diff %.2e (limit 1e-8)\n", rel);
        ok &= rel <= 1e-8;

        double t0 = now_s();
        double a4 = nu_quad<DDReal>(raw4, Q, f, 1e-10);
        double b4 = nu_quad<DDReal>(can4, Q, f, 1e-10);
        rel = rel_diff(a4, b4);
        std::printf("  hbar^4 raw vs canonical quadrature: rel diff %.2e (limit 1e-8, %.0f s)\n",
                    rel, now_s() - t0);
        ok &= rel <= 1e-8;

        t0 = now_s();
        double a6 = nu_quad<DDReal>(raw6, Q, f, 1e-11);
        double b6 = nu_quad<DDReal>(can6, Q, f, 1e-11);
        rel = rel_diff(a6, b6);
        std::printf("  hbar^6 raw vs canonical quadrature: rel diff %.2e (limit 1e-8, %.0f s)\n",
                    rel, now_s() - t0);
        ok &= rel <= 1e-8;
    }
    return ok;
}

// ---- criterion 3: trace fit vs phase-space quadrature ----

bool criterion3() {
    double t0 = now_s();
    bool ok = true;
    ModelSymbol m1(ModelSymbol::Kind::scalar, 1);
    // wide transition [0.06, 0.4]: keeps the beyond-all-orders remainder of
    // the spectral sum below the nu1 resolution at hbar = 0.04
    TestFunction f(0.06, 0.4);
    std::vector<double> hbars{0.04, 0.02, 0.01};

    PotentialSpec Q = PotentialSpec::quartic();
    std::vector<double> traces;
    for (double h : hbars) {
        Spectrum s = eigen_spectrum(Q, h, 0.45);
        if (!s.converged) {
            std::printf("  quartic spectrum did not converge at hbar %.3f\n", h);
            return false;
        }
        traces.push_back(trace_f(s, f));
    }
    auto [n0, n1, n2] = fit_expansion(hbars, traces);
    (void)n2;
    double nu0 = nu_quad(nu_density(m1, 0), Q, f);
    double nu1 = nu_quad(nu_density(m1, 1), Q, f);
    double e0 = rel_diff(n0, nu0), e1 = rel_diff(n1, nu1);
    std::printf("  quartic nu0: fit %.8f quad %.8f rel %.2e (limit 5e-3)\n", n0, nu0, e0);
    std::printf("  quartic nu1: fit %.8f quad %.8f rel %.2e (limit 5e-2)\n", n1, nu1, e1);
    ok &= e0 <= 5e-3 && e1 <= 5e-2;

    PotentialSpec H = PotentialSpec::harmonic();
    // plateau end 0.2: the harmonic levels hbar (n + 1/2) then sample the
    // plateau-to-zero transition symmetrically about its center for every
    // hbar above, and the midpoint antisymmetry of the cutoff cancels the
    // remainder, isolating the hbar^2 coefficient of the machinery itself
    TestFunction fh(0.2, 0.4);
    std::vector<double> htraces;
    for (double h : hbars) htraces.push_back(trace_f(eigen_spectrum(H, h, 0.45), fh));
    auto [h0, h1, h2] = fit_expansion(hbars, htraces);
    (void)h2;
    std::printf("  harmonic control: |nu1|/|nu0| = %.2e (limit 1e-4)\n",
                std::abs(h1) / std::abs(h0));
    ok &= std::abs(h1) <= 1e-4 * std::abs(h0);

    double dt = now_s() - t0;
    std::printf("  elapsed %.1f s (limit 120)\n", dt);
    ok &= dt < 120;
    return ok;
}

// ---- criterion 4: Weyl counts ----

bool criterion4() {
    bool ok = true;
    PotentialSpec H = PotentialSpec::harmonic();
    Spectrum sh = eigen_spectrum(H, 0.01, 0.6);
    int c = count_below(sh, 0.5);
    std::printf("  harmonic count below 0.5 at hbar 0.01: %d (expect 50 +- 1)\n", c);
    ok &= std::abs(c - 50) <= 1;

    PotentialSpec Q = PotentialSpec::quartic();
    Spectrum sq = eigen_spectrum(Q, 0.01, 0.45);
    for (double lam : {0.2, 0.3, 0.4}) {
        double weyl = area(Q, lam) / (2 * M_PI * 0.01);
        int cq = count_below(sq, lam);
        std::printf("  quartic count below %.1f: %d vs A/(2 pi hbar) = %.2f (limit +- 2)\n",
                    lam, cq, weyl);
        ok &= std::abs(cq - weyl) <= 2.0;
    }
    return ok;
}

// ---- criterion 5: dA/dlambda = T ----

bool criterion5() {
    bool ok = true;
    const double h = 1e-3;
    struct Case { PotentialSpec V; std::vector<double> lams; const char* name; };
    std::vector<Case> cases{{PotentialSpec::harmonic(), {0.2, 0.5, 0.8}, "harmonic"},
                            {PotentialSpec::quartic(), {0.15, 0.3, 0.45}, "quartic"}};
    for (auto& c : cases)
        for (double lam : c.lams) {
            double dA = (-area(c.V, lam + 2 * h) + 8 * area(c.V, lam + h) -
                         8 * area(c.V, lam - h) + area(c.V, lam - 2 * h)) / (12 * h);
            double T = period(c.V, lam);
            double rel = std::abs(dA - T) / T;
            std::printf("  %s lambda %.2f: |dA/dl - T|/T = %.2e (limit 1e-6)\n",
                        c.name, lam, rel);
            ok &= rel <= 1e-6;
        }
    return ok;
}

// ---- criterion 6: fractional-integral calculus ----

bool criterion6() {
    bool ok = true;
    const int n = 800;
    std::vector<double> x(n + 1);
    for (int i = 0; i <= n; ++i) x[i] = std::pow(double(i) / n, 2.0);
    std::vector<double> y;
    for (double t : x) y.push_back(std::exp(t));
    SampledCurve g(x, y, "exp");
    SampledCurve twice = abel_J(0.5, abel_J(0.5, g));
    SampledCurve J1 = abel_J(1.0, g);
    double worst = 0;
    for (size_t i = 0; i <= n; ++i)
        if (x[i] >= 0.05) worst = std::max(worst, rel_diff(twice.y[i], J1.y[i]));
    std::printf("  J^1/2 o J^1/2 vs J^1: worst rel %.2e (limit 1e-7)\n", worst);
    ok &= worst <= 1e-7;

    struct Case { double a, b; };
    for (auto [a, b] : {Case{0.5, 0.5}, Case{0.5, 1.0}, Case{1.0, 1.0}}) {
        std::vector<double> yb;
        for (double t : x) yb.push_back(std::pow(t, b));
        SampledCurve J = abel_J(a, SampledCurve(x, yb, "t^b"));
        double ratio = std::tgamma(b + 1) / std::tgamma(a + b + 1);
        double w1 = 0, w2 = 0;
        for (size_t i = 0; i <= n; ++i) {
            if (x[i] < 0.05) continue;
            double exact = ratio * std::pow(x[i], a + b);
            double l = x[i];
            double oracle = integrate([&](double u) {
                return 2 * std::pow(u, 2 * a - 1) * std::pow(l - u * u, b);
            }, 0.0, std::sqrt(l), 1e-13).value / std::tgamma(a);
            w1 = std::max(w1, rel_diff(J.y[i], exact));
            w2 = std::max(w2, rel_diff(J.y[i], oracle));
        }
        std::printf("  J^%.1f t^%.1f: worst rel vs Gamma law %.2e, vs quadrature %.2e (limit 1e-7)\n",
                    a, b, w1, w2);
        ok &= w1 <= 1e-7 && w2 <= 1e-7;
    }
    return ok;
}

// ---- criterion 7: inverse round trips ----

bool criterion7() {
    bool ok = true;
    {
        double t0 = now_s();
        PotentialSpec V = PotentialSpec::asym_cubic();
        auto grid = uniform_grid(0.0, 0.55, 400);
        WellRecovery rec =
            recover_well(invariant_curve(V, grid, CurveKind::area_sec4),
                         invariant_curve(V, grid, CurveKind::gradientsq_sec4));
        double e = std::max(inner_sup(rec.V_right, [&](double x) { return V.value(x); }),
                            inner_sup(rec.V_left, [&](double x) { return V.value(x); }));
        double dt = now_s() - t0;
        std::printf("  asymmetric cubic round trip: sup err %.2e (limit 5e-3), %.1f s (limit 30)\n",
                    e, dt);
        ok &= e <= 5e-3 && dt < 30;

        // reflection invariance
        PotentialSpec W = PotentialSpec::polynomial({0.0, 0.0, 1.0, 0.2}, 1.0, 0.6);
        WellRecovery rw =
            recover_well(invariant_curve(W, grid, CurveKind::area_sec4),
                         invariant_curve(W, grid, CurveKind::gradientsq_sec4));
        double d = 0;
        for (size_t i = 0; i < rec.profiles.f1.size(); ++i) {
            d = std::max(d, std::abs(rec.profiles.f1.y[i] - rw.profiles.f1.y[i]));
            d = std::max(d, std::abs(rec.profiles.f2.y[i] - rw.profiles.f2.y[i]));
        }
        std::printf("  reflection invariance of the branch pair: sup diff %.2e (limit 1e-10)\n", d);
        ok &= d <= 1e-10;
    }
    {
        double t0 = now_s();
        PotentialSpec V = PotentialSpec::double_well();
        auto grid = uniform_grid(0.0, 0.18, 400);
        SampledCurve A = invariant_curve(V, grid, CurveKind::area_sec4, 1.0);
        SampledCurve G = invariant_curve(V, grid, CurveKind::gradientsq_sec4, 1.0);
        for (auto& v : A.y) v *= 2;
        for (auto& v : G.y) v *= 2;
        DoubleWellRecovery rec = recover_double_well(A, G, 1.0);
        auto vtrue = [](double x) {
            double q = x * x - 1;
            return q * q / 4;
        };
        double e = std::max(inner_sup(rec.V_inner, vtrue), inner_sup(rec.V_outer, vtrue));
        double dt = now_s() - t0;
        std::printf("  double-well round trip: sup err %.2e (limit 5e-3), %.1f s (limit 30)\n",
                    e, dt);
        ok &= e <= 5e-3 && dt < 30;
    }
    {
        double t0 = now_s();
        RadialPoly W{{0.0, 0.5, 0.1}};
        RadialPoly B{{1.0, 0.5}};
        auto grid = uniform_grid(0.0, 0.4, 300);
        MagneticRecovery rec =
            recover_magnetic_radial(radial_curve(W, B, grid, CurveKind::magnetic_I_sec9),
                                    radial_curve(W, B, grid, CurveKind::magnetic_II_sec9));
        double ev = inner_sup(rec.V, [&](double s) { return W.eval(s); });
        double eb = inner_sup(rec.B, [&](double s) { return B.eval(s); });
        double dt = now_s() - t0;
        std::printf("  radial magnetic round trip: V err %.2e, B err %.2e (limit 5e-3), %.1f s (limit 30)\n",
                    ev, eb, dt);
        ok &= ev <= 5e-3 && eb <= 5e-3 && dt < 30;
    }
    return ok;
}

// ---- criterion 8: isospectral family ----

bool criterion8() {
    bool ok = true;
    ModelSymbol m1(ModelSymbol::Kind::scalar, 1);
    PotentialSpec base = PotentialSpec::spliced({0, 0}, 8.0, 3.0);
    PotentialSpec A = make_isospectral_family(base, {1, 0});
    PotentialSpec B = make_isospectral_family(base, {0, 1});
    double sup = 0;
    for (int i = 0; i <= 4000; ++i) {
        double x = -8.0 + 16.0 * i / 4000;
        sup = std::max(sup, std::abs(A.value(x) - B.value(x)));
    }
    std::printf("  sup |V_a - V_b| = %.3f (must exceed 0.01)\n", sup);
    ok &= sup > 0.01;

    TestFunction f(0.5, 2.5);
    for (int k = 0; k <= 2; ++k) {
        IntegrandForm g = nu_density(m1, k);
        double na = nu_quad(g, A, f);
        double nb = nu_quad(g, B, f);
        double rel = rel_diff(na, nb);
        std::printf("  nu%d: %.12e vs %.12e rel %.2e (limit 1e-8)\n", k, na, nb, rel);
        ok &= rel <= 1e-8;
    }
    return ok;
}

// ---- criterion 9: canonical form and spectral measure ----

bool criterion9() {
    bool ok = true;
    PotentialSpec H = PotentialSpec::harmonic();
    Spectrum sh = eigen_spectrum(H, 0.01, 1.0);
    SampledCurve Kh = k_from_spectrum(sh);
    double d = 0;
    for (size_t i = 0; i < Kh.size(); ++i) d = std::max(d, std::abs(Kh.y[i] - Kh.x[i]));
    std::printf("  harmonic K identity: sup |K(lam_n) - lam_n| = %.2e (limit 1e-9)\n", d);
    ok &= d <= 1e-9;

    PotentialSpec Q = PotentialSpec::quartic();
    double err[2];
    double hbars[2] = {0.02, 0.01};
    Spectrum sq02;
    for (int i = 0; i < 2; ++i) {
        Spectrum s = eigen_spectrum(Q, hbars[i], 0.5);
        if (i == 0) sq02 = s;
        err[i] = 0;
        for (size_t n = 0; n < s.eigenvalues.size(); ++n) {
            double lam = s.eigenvalues[n];
            if (lam < 0.05 || lam > 0.45) continue;
            err[i] = std::max(err[i],
                              std::abs(hbars[i] * (n + 0.5) - area(Q, lam) / (2 * M_PI)));
        }
    }
    double ratio = err[0] / err[1];
    std::printf("  quartic action error: %.3e at hbar 0.02, %.3e at 0.01, ratio %.2f (window [3.2, 4.8])\n",
                err[0], err[1], ratio);
    ok &= ratio >= 3.2 && ratio <= 4.8;

    TestFunction f(0.2, 0.4);
    SampledCurve K02 = k_from_spectrum(sq02);
    double trace = 0;
    for (double lam : sq02.eigenvalues) trace += f.value(lam);
    double res = verify_measure_identity(sq02, f, K02) / std::abs(trace);
    std::printf("  measure identity residual at hbar 0.02: rel %.2e (limit 1e-4)\n", res);
    ok &= res <= 1e-4;
    return ok;
}

}  // namespace

int main() {
    struct Entry { const char* name; bool (*fn)(); };
    Entry entries[] = {
        {"C1 amplitude recursion vs closed forms", criterion1},
        {"C2 canonical densities and quadrature oracles", criterion2},
        {"C3 trace fit vs phase-space quadrature", criterion3},
        {"C4 Weyl counts", criterion4},
        {"C5 derivative of area equals period", criterion5},
        {"C6 fractional-integral calculus", criterion6},
        {"C7 inverse round trips", criterion7},
        {"C8 isospectral family", criterion8},
        {"C9 canonical form and spectral measure", criterion9},
    };
    int failures = 0;
    for (auto& e : entries) {
        bool pass = false;
        try {
            pass = e.fn();
        } catch (const std::exception& ex) {
            std::printf("  exception: %s\n", ex.what());
        }
        std::printf("%s: %s\n", e.name, pass ? "PASS" : "FAIL");
        if (!pass) ++failures;
    }
    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}

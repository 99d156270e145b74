#include <cmath>

#include "catch_amalgamated.hpp"
#include "specinv/abelinv.hpp"
#include "specinv/phasequad.hpp"
#include "specinv/quadrature.hpp"

using namespace specinv;

namespace {

std::vector<double> graded_grid(double b, int n, double pw) {
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = b * std::pow(double(i) / n, pw);
    return g;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) g[i] = lo + (hi - lo) * i / n;
    return g;
}

// sup of |V_true(x_i) - y_i| over the inner 80% of the sample indices
template <class F>
double inner_sup(const SampledCurve& c, const F& vtrue) {
    size_t n = c.size();
    double worst = 0;
    for (size_t i = n / 10; i < n - n / 10; ++i)
        worst = std::max(worst, std::abs(vtrue(c.x[i]) - c.y[i]));
    return worst;
}

}  // namespace

TEST_CASE("order-1 Abel integral is the running integral") {
    auto x = graded_grid(1.0, 400, 2.0);
    std::vector<double> y;
    for (double t : x) y.push_back(t * t);
    SampledCurve J1 = abel_J(1.0, SampledCurve(x, y, "t^2"));
    for (size_t i = 0; i < x.size(); ++i)
        REQUIRE(std::abs(J1.y[i] - x[i] * x[i] * x[i] / 3) < 1e-12);
}

TEST_CASE("half-order semigroup property") {
    auto x = graded_grid(1.0, 800, 2.0);
    std::vector<double> y;
    for (double t : x) y.push_back(std::exp(t));
    SampledCurve g(x, y, "exp");
    SampledCurve once = abel_J(0.5, g);
    SampledCurve twice = abel_J(0.5, once);
    SampledCurve J1 = abel_J(1.0, g);
    double worst = 0;
    for (size_t i = 0; i < x.size(); ++i)
        if (x[i] >= 0.05)
            worst = std::max(worst, std::abs(twice.y[i] - J1.y[i]) / std::abs(J1.y[i]));
    REQUIRE(worst < 1e-7);
}

TEST_CASE("Abel integral of monomials against the Gamma-ratio law") {
    auto x = graded_grid(1.0, 800, 2.0);
    struct Case { double a, b; };
    for (auto [a, b] : {Case{0.5, 0.5}, Case{0.5, 1.0}, Case{1.0, 1.0}}) {
        std::vector<double> y;
        for (double t : x) y.push_back(std::pow(t, b));
        SampledCurve J = abel_J(a, SampledCurve(x, y, "t^b"));
        double ratio = std::tgamma(b + 1) / std::tgamma(a + b + 1);
        double worst = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] < 0.05) continue;
            double exact = ratio * std::pow(x[i], a + b);
            worst = std::max(worst, std::abs(J.y[i] - exact) / exact);
        }
        REQUIRE(worst < 1e-7);
        // independent quadrature oracle at one interior point: substitute
        // l - t = u^2 so the kernel (l-t)^{a-1} becomes 2 u^{2a-1}
        double l = x[600];
        double oracle = integrate([&](double u) {
            return 2 * std::pow(u, 2 * a - 1) * std::pow(l - u * u, b);
        }, 0.0, std::sqrt(l), 1e-13).value / std::tgamma(a);
        REQUIRE(std::abs(J.y[600] - oracle) < 1e-7 * oracle);
    }
}

TEST_CASE("Abel integral argument checks") {
    auto x = uniform_grid(0.0, 1.0, 20);
    std::vector<double> y(x.size(), 1.0);
    SampledCurve g(x, y, "one");
    REQUIRE_THROWS_AS(abel_J(0.0, g), std::invalid_argument);
    REQUIRE_THROWS_AS(abel_J(-0.5, g), std::invalid_argument);
    auto xs = uniform_grid(0.1, 1.0, 20);
    SampledCurve shifted(xs, y, "one");
    REQUIRE_THROWS_AS(abel_J(0.5, shifted), std::invalid_argument);
}

TEST_CASE("half-kernel inversion on closed forms") {
    auto x = uniform_grid(0.0, 1.0, 400);
    // C(l) = int_0^l sqrt(l-s) h(s) ds: h = 1 gives (2/3) l^{3/2},
    // h = s gives (4/15) l^{5/2}
    std::vector<double> c1, cs, cz(x.size(), 0.0);
    for (double l : x) {
        c1.push_back(2.0 / 3.0 * std::pow(l, 1.5));
        cs.push_back(4.0 / 15.0 * std::pow(l, 2.5));
    }
    SampledCurve h1 = abel_invert_halfstep(SampledCurve(x, c1, "C1"));
    SampledCurve hs = abel_invert_halfstep(SampledCurve(x, cs, "Cs"));
    SampledCurve hz = abel_invert_halfstep(SampledCurve(x, cz, "C0"));
    for (size_t i = x.size() / 10; i < x.size() - x.size() / 10; ++i) {
        REQUIRE(std::abs(h1.y[i] - 1.0) < 1e-4);
        REQUIRE(std::abs(hs.y[i] - x[i]) < 1e-4);
    }
    for (double v : hz.y) REQUIRE(std::abs(v) < 1e-10);
}

TEST_CASE("single-well round trip: harmonic") {
    PotentialSpec V = PotentialSpec::harmonic();
    auto grid = uniform_grid(0.0, 0.45, 400);
    SampledCurve A = invariant_curve(V, grid, CurveKind::area_sec4);
    SampledCurve G = invariant_curve(V, grid, CurveKind::gradientsq_sec4);
    WellRecovery rec = recover_well(A, G);
    auto vtrue = [](double x) { return x * x / 2; };
    REQUIRE(inner_sup(rec.V_right, vtrue) < 2e-3);
    REQUIRE(inner_sup(rec.V_left, vtrue) < 2e-3);
}

TEST_CASE("single-well round trip: asymmetric cubic") {
    PotentialSpec V = PotentialSpec::asym_cubic();
    auto grid = uniform_grid(0.0, 0.55, 400);
    SampledCurve A = invariant_curve(V, grid, CurveKind::area_sec4);
    SampledCurve G = invariant_curve(V, grid, CurveKind::gradientsq_sec4);
    WellRecovery rec = recover_well(A, G);
    auto vtrue = [&](double x) { return V.value(x); };
    REQUIRE(inner_sup(rec.V_right, vtrue) < 2e-3);
    REQUIRE(inner_sup(rec.V_left, vtrue) < 2e-3);
}

TEST_CASE("recovery is invariant under reflection of the well") {
    PotentialSpec V = PotentialSpec::asym_cubic();
    PotentialSpec W = PotentialSpec::polynomial({0.0, 0.0, 1.0, 0.2}, 1.0, 0.6);
    auto grid = uniform_grid(0.0, 0.55, 400);
    WellRecovery rv = recover_well(invariant_curve(V, grid, CurveKind::area_sec4),
                                   invariant_curve(V, grid, CurveKind::gradientsq_sec4));
    WellRecovery rw = recover_well(invariant_curve(W, grid, CurveKind::area_sec4),
                                   invariant_curve(W, grid, CurveKind::gradientsq_sec4));
    // the invariants cannot see the reflection, so the ordered branch pair
    // must come out identical
    REQUIRE(rv.profiles.f1.size() == rw.profiles.f1.size());
    for (size_t i = 0; i < rv.profiles.f1.size(); ++i) {
        REQUIRE(std::abs(rv.profiles.f1.y[i] - rw.profiles.f1.y[i]) < 1e-12);
        REQUIRE(std::abs(rv.profiles.f2.y[i] - rw.profiles.f2.y[i]) < 1e-12);
    }
}

TEST_CASE("symmetric double-well round trip") {
    PotentialSpec V = PotentialSpec::double_well();
    auto grid = uniform_grid(0.0, 0.18, 400);
    // full invariants are twice the single-well contribution around x = 1
    SampledCurve A = invariant_curve(V, grid, CurveKind::area_sec4, 1.0);
    SampledCurve G = invariant_curve(V, grid, CurveKind::gradientsq_sec4, 1.0);
    for (auto& v : A.y) v *= 2;
    for (auto& v : G.y) v *= 2;
    DoubleWellRecovery rec = recover_double_well(A, G, 1.0);
    auto vtrue = [](double x) {
        double q = x * x - 1;
        return q * q / 4;
    };
    REQUIRE(inner_sup(rec.V_inner, vtrue) < 2e-3);
    REQUIRE(inner_sup(rec.V_outer, vtrue) < 2e-3);
}

TEST_CASE("radial magnetic recovery on the constant-field closed form") {
    // W(s) = s/2, B = B0: I = pi^2 lam^2 and II = pi^2 (B0^2 - 1) lam^2
    double B0 = 1.3;
    auto grid = uniform_grid(0.0, 0.4, 200);
    std::vector<double> I, II;
    for (double lam : grid) {
        I.push_back(M_PI * M_PI * lam * lam);
        II.push_back(M_PI * M_PI * (B0 * B0 - 1) * lam * lam);
    }
    MagneticRecovery rec = recover_magnetic_radial(SampledCurve(grid, I, "I"),
                                                   SampledCurve(grid, II, "II"));
    REQUIRE(inner_sup(rec.V, [](double s) { return s / 2; }) < 1e-8);
    REQUIRE(inner_sup(rec.B, [&](double) { return B0; }) < 1e-6);
}

TEST_CASE("radial magnetic round trip through the forward curves") {
    RadialPoly W{{0.0, 0.5, 0.1}};        // W(s) = s/2 + s^2/10
    RadialPoly B{{1.0, 0.5}};             // B(s) = 1 + s/2
    auto grid = uniform_grid(0.0, 0.4, 300);
    SampledCurve I = radial_curve(W, B, grid, CurveKind::magnetic_I_sec9);
    SampledCurve II = radial_curve(W, B, grid, CurveKind::magnetic_II_sec9);
    MagneticRecovery rec = recover_magnetic_radial(I, II);
    REQUIRE(inner_sup(rec.V, [&](double s) { return W.eval(s); }) < 1e-5);
    REQUIRE(inner_sup(rec.B, [&](double s) { return B.eval(s); }) < 1e-3);
}

TEST_CASE("the sign of the magnetic field is invisible to the invariants") {
    RadialPoly W{{0.0, 0.5, 0.1}};
    RadialPoly B{{1.0, 0.5}};
    RadialPoly Bneg{{-1.0, -0.5}};
    auto grid = uniform_grid(0.0, 0.4, 50);
    SampledCurve a = radial_curve(W, B, grid, CurveKind::magnetic_II_sec9);
    SampledCurve b = radial_curve(W, Bneg, grid, CurveKind::magnetic_II_sec9);
    for (size_t i = 0; i < grid.size(); ++i)
        REQUIRE(a.y[i] == Catch::Approx(b.y[i]).margin(1e-14));
}

TEST_CASE("isospectral family construction guards") {
    PotentialSpec base = PotentialSpec::spliced({0, 0});
    PotentialSpec ok = make_isospectral_family(base, {1, 0});
    REQUIRE(ok.bits == std::vector<int>{1, 0});
    PotentialSpec notspliced = PotentialSpec::quartic();
    REQUIRE_THROWS_AS(make_isospectral_family(notspliced, {1}), std::invalid_argument);
    PotentialSpec dirty = PotentialSpec::spliced({1, 0});
    REQUIRE_THROWS_AS(make_isospectral_family(dirty, {0, 0}), std::invalid_argument);
    std::vector<int> toomany{1, 0, 1};
    REQUIRE_THROWS_AS(make_isospectral_family(base, toomany), std::invalid_argument);
}

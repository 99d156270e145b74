#include <random>

#include "catch_amalgamated.hpp"
#include "specinv/polycas.hpp"

using namespace specinv;

namespace {

// deterministic random polynomials: few terms, small coefficients
SymPoly random_poly(std::mt19937& rng, int dims, int max_terms = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> small(0, 2);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 4);
    SymPoly p(dims);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        SymMonomial m{small(rng), std::vector<int>(dims, 0), {}};
        for (int k = 0; k < dims; ++k) m.xi[k] = small(rng);
        int njets = small(rng);
        for (int j = 0; j < njets; ++j) {
            std::vector<int> ord(dims, 0);
            ord[small(rng) % dims] = 1 + small(rng);
            m.jets.push_back(JetSymbol::V(ord));
        }
        GaussRat c(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
        p.add_term(std::move(m), c);
    }
    return p;
}

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(12345);
    for (int it = 0; it < 1000; ++it) {
        int dims = 1 + it % 2;
        SymPoly p = random_poly(rng, dims), q = random_poly(rng, dims),
                r = random_poly(rng, dims);
        REQUIRE(p + q == q + p);
        REQUIRE((p + q) + r == p + (q + r));
        REQUIRE(p * q == q * p);
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
    }
}

TEST_CASE("additive and multiplicative identities") {
    std::mt19937 rng(7);
    SymPoly p = random_poly(rng, 1);
    REQUIRE(p + SymPoly::zero(1) == p);
    REQUIRE(p * SymPoly::one(1) == p);
    REQUIRE(p - p == SymPoly::zero(1));
}

TEST_CASE("i squared is minus one") {
    SymPoly it = SymPoly::t(1).scaled(GaussRat::i());
    SymPoly t2 = SymPoly::t(1, 2);
    REQUIRE(it * it == -t2);
}

TEST_CASE("monomial merge in products") {
    SymPoly f = SymPoly::xi(1, 0) * SymPoly::jet(1, JetSymbol::V1(1));
    SymPoly sq = f * f;
    REQUIRE(sq.size() == 1);
    const auto& [m, c] = *sq.terms().begin();
    REQUIRE(m.xi[0] == 2);
    REQUIRE(m.jets.size() == 2);
    REQUIRE(c == GaussRat(1));
}

TEST_CASE("formal_dx basics") {
    // d/dx V = V'
    SymPoly V = SymPoly::jet(1, JetSymbol::V1(0));
    REQUIRE(V.formal_dx(0) == SymPoly::jet(1, JetSymbol::V1(1)));
    // d/dx (V')^2 = 2 V' V''
    SymPoly vp = SymPoly::jet(1, JetSymbol::V1(1));
    SymPoly expect = (SymPoly::jet(1, JetSymbol::V1(1)) *
                      SymPoly::jet(1, JetSymbol::V1(2))).scaled(GaussRat(2));
    REQUIRE((vp * vp).formal_dx(0) == expect);
    // t and xi are constants
    REQUIRE((SymPoly::xi(1, 0) * SymPoly::t(1)).formal_dx(0) == SymPoly::zero(1));
}

TEST_CASE("formal_dx obeys the Leibniz rule") {
    std::mt19937 rng(99);
    for (int it = 0; it < 300; ++it) {
        int dims = 1 + it % 3;
        int k = it % dims;
        SymPoly p = random_poly(rng, dims), q = random_poly(rng, dims);
        REQUIRE((p * q).formal_dx(k) ==
                p.formal_dx(k) * q + p * q.formal_dx(k));
    }
}

TEST_CASE("serialization round trip") {
    std::mt19937 rng(31);
    for (int it = 0; it < 200; ++it) {
        int dims = 1 + it % 2;
        SymPoly p = random_poly(rng, dims);
        REQUIRE(SymPoly::parse(dims, p.str()) == p);
    }
    REQUIRE(SymPoly::parse(1, "0") == SymPoly::zero(1));
}

TEST_CASE("numeric evaluation is a ring homomorphism") {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int it = 0; it < 200; ++it) {
        SymPoly p = random_poly(rng, 1), q = random_poly(rng, 1);
        std::map<JetSymbol, double> jets;
        for (const auto& poly : {p, q})
            for (const auto& [m, c] : poly.terms())
                for (const auto& j : m.jets)
                    if (!jets.count(j)) jets[j] = u(rng);
        std::vector<double> xi{u(rng)};
        std::complex<double> t{u(rng), u(rng)};
        auto vp = p.eval(xi, t, jets), vq = q.eval(xi, t, jets);
        REQUIRE(std::abs((p + q).eval(xi, t, jets) - (vp + vq)) < 1e-12);
        REQUIRE(std::abs((p * q).eval(xi, t, jets) - vp * vq) < 1e-10);
    }
}

TEST_CASE("evaluation of a single monomial") {
    // (i t^2/2) xi V' at xi=1, t=1, V'=2 gives i
    SymPoly b1 = SymPoly::t(1, 2).scaled(GaussRat(Rat(1, 2)) * GaussRat::i()) *
                 SymPoly::xi(1, 0) * SymPoly::jet(1, JetSymbol::V1(1));
    std::map<JetSymbol, double> jets{{JetSymbol::V1(1), 2.0}};
    std::vector<double> xiv{1.0};
    std::complex<double> tv{1.0, 0.0};
    auto v = b1.eval(xiv, tv, jets);
    REQUIRE(std::abs(v - std::complex<double>(0, 1)) < 1e-15);
    std::map<JetSymbol, double> empty;
    REQUIRE_THROWS_AS(b1.eval(xiv, tv, empty), std::invalid_argument);
}

TEST_CASE("t antiderivative and coefficient extraction") {
    SymPoly t2 = SymPoly::t(1, 2);
    REQUIRE(t2.integrate_t() == SymPoly::t(1, 3).scaled(GaussRat(Rat(1, 3))));
    SymPoly p = SymPoly::t(1, 2) + SymPoly::one(1);
    REQUIRE(p.t_coefficient(2) == SymPoly::one(1));
    REQUIRE(p.t_degree() == 2);
}

TEST_CASE("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(SymPoly::one(1) + SymPoly::one(2), std::invalid_argument);
    REQUIRE_THROWS_AS(SymPoly::one(1) * SymPoly::one(2), std::invalid_argument);
}

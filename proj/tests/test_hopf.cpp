#include "doctest.h"

#include "hopf.hpp"
#include "reductions.hpp"

using namespace hopfext;

TEST_CASE("weierstrass axioms and structure maps") {
    auto H = builtin_algebroid("weierstrass-Z");
    auto rep = H.check_axioms();
    for (auto& e : rep.entries) {
        INFO(e.identity, " ", e.detail);
        CHECK(e.pass);
    }
    // eta_R(a3) = a3 + a1 r + 2t
    CHECK(H.eta_R(H.A.gen("a3")) == H.Gamma.parse("a3 + a1*r + 2*t"));
    // psi(t) = t|1 + 1|t + s|r
    auto pt = H.psi(H.Gamma.gen("t"));
    auto expect = H.tensor_add(
        H.tensor_add(H.embed_left(H.Gamma.gen("t")), H.embed_right(H.Gamma.gen("t"))),
        H.tensor_mul(H.embed_left(H.Gamma.gen("s")), H.embed_right(H.Gamma.gen("r"))));
    CHECK(pt == expect);
}

TEST_CASE("corrupted psi(t) fails coassociativity") {
    auto H = builtin_algebroid("weierstrass-Z");
    // drop the s(x)r term
    H.psi_gen[2] =
        H.tensor_add(H.embed_left(H.Gamma.gen("t")), H.embed_right(H.Gamma.gen("t")));
    H.cache.psi.clear();
    H.cache.psibar.clear();
    auto rep = H.check_axioms();
    // dropping the mixed term leaves t primitive, which still coassociates;
    // the unit-compatibility axiom catches it through eta_R(a3) = a3+a1r+2t
    CHECK(!rep.all_pass());
    bool unit_failed = false;
    for (auto& e : rep.entries)
        if (!e.pass && e.identity.find("psi.eta_R") != std::string::npos) unit_failed = true;
    CHECK(unit_failed);
}

TEST_CASE("discrete algebroid passes axioms") {
    HopfAlgebroidPresentation H;
    H.name = "discrete";
    H.A = AlgebraPresentation({{"x", 4}}, CoefficientRing::Q());
    H.Gamma = H.A;
    H.n_agens = 1;
    H.eta_R_gen = {H.Gamma.gen("x")};
    H.gamma_finite_free = true;
    H.gamma_basis = {expo_zero()};
    CHECK(H.check_axioms().all_pass());
}

TEST_CASE("complete_square witnesses (Lemma 4.1)") {
    auto W = builtin_algebroid("weierstrass-p3");
    auto sq = complete_square(W);
    // g(a4) = a4 + 1/2 a1 a3
    CHECK(sq.g[1] == W.A.parse("a4 + 1/2 a1*a3"));
    // reduced eta_R agrees with the section-5 composite
    auto& R = sq.reduced;
    CHECK(R.eta_R_gen[0] == R.Gamma.parse("a2 + 3*r"));
    CHECK(R.eta_R_gen[1] == R.Gamma.parse("a4 + 2*a2*r + 3*r^2"));
    CHECK(R.eta_R_gen[2] == R.Gamma.parse("a6 + a4*r + a2*r^2 + r^3"));
    CHECK(R.check_axioms().all_pass());
}

TEST_CASE("p=3 reduction: eliminate a6 gives r^3 relation") {
    auto H = builtin_algebroid("elliptic-p3-reduced");
    CHECK(H.A.ngens() == 2);  // a2, a4
    CHECK(H.Gamma.ngens() == 3);
    int ri = H.Gamma.gen_index("r");
    REQUIRE(H.Gamma.rules[ri].has_value());
    CHECK(H.Gamma.rules[ri]->power == 3);
    // r^3 = -a2 r^2 - a4 r
    CHECK(H.Gamma.normal_form(H.Gamma.parse("r^3")) == H.Gamma.parse("-a2*r^2 - a4*r"));
    CHECK(H.gamma_finite_free);
    CHECK(H.gamma_basis.size() == 3);
    CHECK(H.check_axioms().all_pass());
}

TEST_CASE("p=2 reduction: relations and rank-8 basis") {
    auto H = builtin_algebroid("elliptic-p2-reduced");
    CHECK(H.A.ngens() == 2);  // a1, a3
    REQUIRE(H.gamma_finite_free);
    CHECK(H.gamma_basis.size() == 8);
    // first relation: s^4 - 6st + a1 s^3 - 3a1 t - 3a3 s = 0
    auto rel = H.Gamma.parse("s^4 - 6*s*t + a1*s^3 - 3*a1*t - 3*a3*s");
    CHECK(H.Gamma.normal_form(rel).is_zero());
    // second relation from the a6 elimination
    auto rel2 = H.Gamma.parse(
        "s^6 - 27*t^2 + 3*a1*s^5 - 9*a1*s^2*t + 3*a1^2*s^4 - 9*a1^2*s*t + a1^3*s^3 - 27*a3*t");
    CHECK(H.Gamma.normal_form(rel2).is_zero());
    CHECK(H.check_axioms().all_pass());
}

TEST_CASE("p>3 route collapses to the discrete algebroid") {
    auto W = builtin_algebroid("weierstrass-Z");
    auto sq = complete_square(W);
    auto cc = complete_cube_after_square(sq);
    CHECK(cc.reduced.Gamma.ngens() == cc.reduced.A.ngens());  // Gamma' = A'
    CHECK(cc.reduced.A.ngens() == 2);                          // a4, a6
    CHECK(cc.reduced.check_axioms().all_pass());
}

TEST_CASE("invariant ideals") {
    auto W2 = builtin_algebroid("weierstrass-p2");
    IdealSpec I0{true, {}};
    CHECK(is_invariant(W2, I0).invariant);
    IdealSpec I1{true, {"a1"}};
    CHECK(is_invariant(W2, I1).invariant);
    IdealSpec bad{false, {"a4"}};
    auto cert = is_invariant(W2, bad);
    CHECK(!cert.invariant);
    CHECK(cert.offending == "a4");
}

TEST_CASE("quotients: p=2 mod I2 is the 8-dimensional Hopf algebra") {
    auto H2 = builtin_algebroid("elliptic-p2-mod-I2");
    CHECK(H2.A.ngens() == 0);
    CHECK(H2.A.coeff.kind == RingKind::PrimeField);
    CHECK(H2.gamma_basis.size() == 8);
    CHECK(H2.check_axioms().all_pass());
    CHECK(H2.eta_R_equals_eta_L());
    // s^4 = 0 and t^2 = 0
    CHECK(H2.Gamma.normal_form(H2.Gamma.parse("s^4")).is_zero());
    CHECK(H2.Gamma.normal_form(H2.Gamma.parse("t^2")).is_zero());
    // psi(s) primitive, eps(s) = eps(t) = 0
    auto ps = H2.psi(H2.Gamma.gen("s"));
    CHECK(ps == H2.tensor_add(H2.embed_left(H2.Gamma.gen("s")),
                              H2.embed_right(H2.Gamma.gen("s"))));
    CHECK(H2.epsilon(H2.Gamma.gen("s")).is_zero());
    CHECK(H2.epsilon(H2.Gamma.gen("t")).is_zero());
}

TEST_CASE("quotients: p=3 mod I2 is Z/3[r]/(r^3)") {
    auto H = builtin_algebroid("elliptic-p3-mod-I2");
    CHECK(H.A.ngens() == 0);
    CHECK(H.gamma_basis.size() == 3);
    CHECK(H.Gamma.normal_form(H.Gamma.parse("r^3")).is_zero());
    CHECK(H.check_axioms().all_pass());
}

TEST_CASE("quotient by the zero ideal is the identity") {
    auto H = builtin_algebroid("elliptic-p3-reduced");
    auto Q = quotient_by_invariant_ideal(H, IdealSpec{});
    CHECK(Q.A.ngens() == H.A.ngens());
    CHECK(Q.gamma_basis == H.gamma_basis);
}

TEST_CASE("degree preservation for every preset, t <= 60") {
    for (auto name : {"weierstrass-Z", "elliptic-p3-reduced", "elliptic-p2-reduced",
                      "elliptic-p2-mod-I1", "elliptic-p3-mod-I1"}) {
        auto H = builtin_algebroid(name);
        for (int i = 0; i < H.n_agens; ++i)
            CHECK(H.eta_R_gen[i].homogeneous_degree(H.Gamma) == H.A.generators[i].degree);
        for (int i = H.n_agens; i < H.Gamma.ngens(); ++i) {
            int d = H.Gamma.generators[i].degree;
            for (auto& [k, c] : H.psi_gen[i - H.n_agens].terms)
                CHECK(H.tensor_degree(k, c) == d);
        }
    }
}

TEST_CASE("quotient basis counting matches presentation counting") {
    // dim of Gamma_n in degree t computed two ways
    auto H1 = builtin_algebroid("elliptic-p2-mod-I1");
    auto H = builtin_algebroid("elliptic-p2-reduced");
    for (int t = 0; t <= 60; t += 2) {
        // from the quotient's own basis enumeration (pure extras + a3 powers)
        size_t direct = H1.Gamma.basis_in_degree(t).size();
        // from the reduced presentation: basis monomials g with a3^k filling
        size_t counted = 0;
        for (auto& g : H.gamma_basis_in_degree(t)) (void)g, ++counted;
        // fill with a3-powers: count pairs (pure extra monomial of degree d, a3^k)
        size_t expect = 0;
        for (int d = 0; d <= t; d += 2) {
            if ((t - d) % 6 != 0) continue;
            expect += H1.gamma_basis_in_degree(d).size();
        }
        CHECK(direct == expect);
    }
}

#include "doctest.h"

#include "homology.hpp"

using namespace hopfext;

TEST_CASE("p=3 mod I2: E(alpha) (x) P(beta)") {
    auto H = builtin_algebroid("elliptic-p3-mod-I2");
    CobarHomology hom(H);
    // H^{1,4} = Z/3 alpha, H^{2,12} = Z/3 beta
    CHECK(hom.group(1, 4).orders == std::vector<long>{1});
    CHECK(hom.group(2, 12).orders == std::vector<long>{1});
    // E(alpha)(x)P(beta): dims at (s,t): beta^k at (2k,12k), alpha beta^k at (2k+1,12k+4)
    for (int s = 0; s <= 8; ++s)
        for (int t = 0; t <= 48; t += 4) {
            long expect = 0;
            if (s % 2 == 0 && t == 6 * s) expect = 1;                 // beta^{s/2}
            if (s % 2 == 1 && t == 6 * (s - 1) + 4) expect = 1;       // alpha beta^{(s-1)/2}
            INFO("s=", s, " t=", t);
            CHECK((long)hom.group(s, t).orders.size() == expect);
        }
    // H^{s,t} = 0 for odd t
    CHECK(hom.group(1, 7).orders.empty());
}

TEST_CASE("p=3 reduced integral: low range") {
    auto H = builtin_algebroid("elliptic-p3-reduced");
    CobarHomology hom(H);
    // H^{0,*} are the invariants; H^{0,0} = Z_(3)
    auto& g0 = hom.group(0, 0);
    CHECK(g0.orders == std::vector<long>{0});
    // H^{1,4}: alpha has order 3 integrally
    auto& g14 = hom.group(1, 4);
    CHECK(g14.orders == std::vector<long>{1});
    // H^{0,8}: c4 survives: rank 1
    CHECK(hom.group(0, 8).orders == std::vector<long>{0});
    // H^{0,4}: nothing (a2 is not invariant)
    CHECK(hom.group(0, 4).orders.empty());
}

TEST_CASE("weierstrass H^0 is the ring of modular forms") {
    auto H = builtin_algebroid("weierstrass-Z");
    CobarHomology hom(H);
    // rank of H^{0,t} = #{(i,j,k) >= 0 : 8i+12j+24k = t, j <= 1}
    for (int t = 0; t <= 40; t += 2) {
        long expect = 0;
        for (int i = 0; 8 * i <= t; ++i)
            for (int j = 0; j <= 1; ++j)
                for (int k = 0; 8 * i + 12 * j + 24 * k <= t; ++k)
                    if (8 * i + 12 * j + 24 * k == t) ++expect;
        INFO("t=", t);
        CHECK((long)hom.group(0, t).orders.size() == expect);
    }
}

TEST_CASE("reduce_cocycle and bound at p=3 mod I2") {
    auto H = builtin_algebroid("elliptic-p3-mod-I2");
    CobarHomology hom(H);
    Cobar cb(H);
    auto alpha = cb.parse("[r]");
    auto c = hom.reduce_cocycle(alpha, 1, 4);
    REQUIRE(c.size() == 1);
    CHECK(!H.A.coeff.is_zero(c[0]));
    // alpha^2 = [r|r] must be a coboundary (E(alpha) exterior)
    auto alpha2 = cb.mul(alpha, alpha);
    auto c2 = hom.reduce_cocycle(alpha2, 2, 8);
    for (auto& x : c2) CHECK(H.A.coeff.is_zero(x));
    auto u = hom.bound(alpha2, 2, 8);
    REQUIRE(u.has_value());
    CHECK(cb.d(*u) == alpha2);
    // beta * alpha is nonzero
    auto beta = hom.group(2, 12).reps[0];
    auto ba = cb.mul(beta, alpha);
    auto c3 = hom.reduce_cocycle(ba, 3, 16);
    bool nonzero = false;
    for (auto& x : c3)
        if (!H.A.coeff.is_zero(x)) nonzero = true;
    CHECK(nonzero);
}

TEST_CASE("p=2 mod I2: DA(1) cohomology low degrees") {
    auto H = builtin_algebroid("elliptic-p2-mod-I2");
    CobarHomology hom(H);
    Cobar cb(H);
    // h1 = [s] at (1,2), h2 = [s^2] at (1,4)
    CHECK(hom.group(1, 2).orders == std::vector<long>{1});
    CHECK(hom.group(1, 4).orders == std::vector<long>{1});
    // h1 h2 = 0 and h1^2 != 0
    auto h1 = cb.parse("[s]");
    auto h2 = cb.parse("[s^2]");
    auto h1h2 = cb.mul(h1, h2);
    auto cc = hom.reduce_cocycle(h1h2, 2, 6);
    for (auto& x : cc) CHECK(H.A.coeff.is_zero(x));
    auto h1h1 = cb.mul(h1, h1);
    auto cc2 = hom.reduce_cocycle(h1h1, 2, 4);
    bool nz = false;
    for (auto& x : cc2)
        if (!H.A.coeff.is_zero(x)) nz = true;
    CHECK(nz);
    // c at (2,10): dim 1
    CHECK(hom.group(2, 10).orders == std::vector<long>{1});
    // g at (4,24): present
    CHECK((long)hom.group(4, 24).orders.size() >= 1);
}

TEST_CASE("p=2 integral: g has order 8 in H^{4,24} and 2h2 != 0") {
    auto H = builtin_algebroid("elliptic-p2-reduced");
    CobarHomology hom(H);
    // H^{1,4}: h2 with order 4
    auto& g14 = hom.group(1, 4);
    REQUIRE(g14.orders.size() == 1);
    CHECK(g14.orders[0] == 2);  // p^2 = 4
    // H^{1,2}: h1 with order 2
    auto& g12 = hom.group(1, 2);
    REQUIRE(g12.orders.size() == 1);
    CHECK(g12.orders[0] == 1);
    // H^{4,24} contains a Z/8
    auto& g424 = hom.group(4, 24);
    bool has8 = false;
    for (auto e : g424.orders)
        if (e == 3) has8 = true;
    INFO("orders at (4,24):");
    for (auto e : g424.orders) INFO("  exp ", e);
    CHECK(has8);
}

TEST_CASE("H^{s,t} vanishes for odd t across presets") {
    for (auto name : {"elliptic-p2-reduced", "elliptic-p3-reduced"}) {
        auto H = builtin_algebroid(name);
        CobarHomology hom(H);
        for (int s = 0; s <= 2; ++s)
            for (int t = 1; t <= 15; t += 2) CHECK(hom.group(s, t).orders.empty());
    }
}

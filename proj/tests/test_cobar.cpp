#include "doctest.h"

#include "cobar.hpp"

using namespace hopfext;

TEST_CASE("paper differentials at p=2 mod I2") {
    auto H = builtin_algebroid("elliptic-p2-mod-I2");
    Cobar cb(H);
    // d[t] is the single mixed word with slots {s, s^2} (order fixed by the
    // coproduct convention; the mirror convention is the paper's printing)
    auto dt = cb.d(cb.parse("[t]"));
    CHECK(dt == cb.parse("[s|s^2]"));
    // d[ts] = [t|s] + [s|t+s^3] + [s^2|s^2]
    auto dts = cb.d(cb.parse("[t*s]"));
    CHECK(dts == cb.parse("[t|s] + [s|t+s^3] + [s^2|s^2]"));
    // d([t]+[s^3]) = [s|s^2] + [s^2|s] + [s|s^2]... check the paper identity
    auto d2 = cb.d(cb.parse("[t+s^3]"));
    CHECK(d2 == cb.parse("[s|s^2]+[s|s^2]+[s^2|s]"));
}

TEST_CASE("paper differential d(a2) = 3[r] at p=3") {
    auto H = builtin_algebroid("elliptic-p3-reduced");
    Cobar cb(H);
    auto da2 = cb.d(cb.word(H.A.gen("a2"), {}));
    CHECK(da2 == cb.parse("3*[r]"));
    CHECK(cb.d(cb.word(H.A.constant(1), {})).is_zero());  // d(1) = 0
}

TEST_CASE("d[r] = 0 and beta representative is a cocycle at p=3 mod I2") {
    auto H = builtin_algebroid("elliptic-p3-mod-I2");
    Cobar cb(H);
    CHECK(cb.d(cb.parse("[r]")).is_zero());
    // the (2,12) cocycle: [r^2|r] + [r|r^2] under this convention
    auto z = cb.parse("[r^2|r]+[r|r^2]");
    CHECK(cb.d(z).is_zero());
    auto z2 = cb.parse("[r^2|r]-[r|r^2]");
    CHECK(!cb.d(z2).is_zero());
}

TEST_CASE("d@d = 0 on bases across presets") {
    for (auto name : {"elliptic-p3-reduced", "elliptic-p2-reduced", "elliptic-p2-mod-I1",
                      "elliptic-p3-mod-I0", "weierstrass-Z"}) {
        auto H = builtin_algebroid(name);
        Cobar cb(H);
        for (int s = 0; s <= 3; ++s)
            for (int t = 0; t <= 16; t += 2) {
                auto B = cb.basis(s, t);
                for (auto& b : B) {
                    auto x = cb.from_basis(b);
                    auto dd = cb.d(cb.d(x));
                    INFO(name, " s=", s, " t=", t, " x=", cb.to_string(x));
                    CHECK(dd.is_zero());
                }
            }
    }
}

TEST_CASE("degree and filtration bookkeeping") {
    auto H = builtin_algebroid("elliptic-p2-reduced");
    Cobar cb(H);
    auto x = cb.parse("a1*[s|s^2*t]");
    CHECK(cb.degree(x) == 2 + 2 + 10);
    CHECK(cb.filtration(x) == 2);
    auto dx = cb.d(x);
    if (!dx.is_zero()) {
        CHECK(cb.degree(dx) == cb.degree(x));
        CHECK(cb.filtration(dx) == 3);
    }
}

TEST_CASE("basis enumeration matches the paper's count at (s,t)=(2,8), p=2 mod I2") {
    auto H = builtin_algebroid("elliptic-p2-mod-I2");
    Cobar cb(H);
    // pairs from slot degrees {2,4,6,6,8,10,12} summing to 8:
    // {[s|s^3],[s^3|s],[s^2|s^2],[t|s],[s|t]}
    auto B = cb.basis(2, 8);
    CHECK(B.size() == 5);
    CHECK(cb.basis_size(2, 8) == 5);
    // s=1, t=4 at p=3 mod I2: only [r]... wait that's p=3:
    auto H3 = builtin_algebroid("elliptic-p3-mod-I2");
    Cobar cb3(H3);
    auto B3 = cb3.basis(1, 4);
    REQUIRE(B3.size() == 1);
    CHECK(cb3.to_string(cb3.from_basis(B3[0])) == "[r]");
    // s=0: basis of A in degree t
    auto HW = builtin_algebroid("weierstrass-Z");
    Cobar cbw(HW);
    CHECK(cbw.basis(0, 8).size() == HW.A.basis_in_degree(8).size());
}

TEST_CASE("basis_size agrees with basis().size() on a sample") {
    auto H = builtin_algebroid("elliptic-p2-reduced");
    Cobar cb(H);
    for (int s = 0; s <= 4; ++s)
        for (int t = 0; t <= 20; t += 2)
            CHECK(cb.basis_size(s, t) == (long)cb.basis(s, t).size());
}

TEST_CASE("Leibniz rule for the concatenation product") {
    auto H = builtin_algebroid("elliptic-p2-reduced");
    Cobar cb(H);
    auto x = cb.parse("[s^2]");
    auto y = cb.parse("a1*[t|s]");
    auto lhs = cb.d(cb.mul(x, y));
    auto rhs = cb.add(cb.mul(cb.d(x), y),
                      cb.scale(cb.mul(x, cb.d(y)), Rat(-1)));  // (-1)^{|x|}, |x|=1
    CHECK(lhs == rhs);
    auto x2 = cb.parse("[s|s]");
    auto lhs2 = cb.d(cb.mul(x2, y));
    auto rhs2 = cb.add(cb.mul(cb.d(x2), y), cb.mul(x2, cb.d(y)));
    CHECK(lhs2 == rhs2);
}

TEST_CASE("d[ts] at p=2 full integral algebroid stays degree-correct") {
    auto H = builtin_algebroid("elliptic-p2-reduced");
    Cobar cb(H);
    auto d = cb.d(cb.parse("[s*t]"));
    CHECK(cb.degree(d) == 8);
    CHECK(cb.d(d).is_zero());
}

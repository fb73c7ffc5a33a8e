#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tg/reduction.hpp"

using namespace tg;

namespace {
CurveQ C(long a1, long a2, long a3, long a4, long a6) {
    return CurveQ{Int(a1), Int(a2), Int(a3), Int(a4), Int(a6)};
}
}  // namespace

TEST_CASE("known conductors") {
    CHECK(conductor(C(0, -1, 1, -10, -20)) == 11);
    CHECK(conductor(C(1, 0, 1, 4, -6)) == 14);
    CHECK(conductor(C(1, 1, 1, -10, -10)) == 15);
    CHECK(conductor(C(0, 0, 0, 0, 1)) == 36);
    CHECK(conductor(C(0, 0, 0, -1, 0)) == 32);
    CHECK(conductor(C(0, 0, 0, 0, -432)) == 27);
    CHECK(conductor(C(1, -1, 1, -5, 5)) == 162);
    CHECK(conductor(C(0, 0, 1, -1, 0)) == 37);
    CHECK(conductor(C(0, 0, 0, 1, 0)) == 64);
    CHECK(conductor(C(0, 0, 0, 4, 0)) == 32);
    CHECK(conductor(C(1, -1, 1, -3, 3)) == 26);
}

TEST_CASE("minimal models") {
    // y^2 = x^3 + 64 is y^2 = x^3 + 1 scaled by u = 2
    CurveQ m = minimal_model(C(0, 0, 0, 0, 64));
    CHECK(m.a4 == 0);
    CHECK(m.a6 == 1);
    // u = 3
    CurveQ m3 = minimal_model(C(0, 0, 0, 0, 729));
    CHECK(m3.a6 == 1);
    // u = 2 on y^2 = x^3 - x
    CurveQ m2 = minimal_model(C(0, 0, 0, -16, 0));
    CHECK(m2.a4 == -1);
    CHECK(m2.a6 == 0);
    // already minimal: j-invariant and discriminant preserved
    CurveQ e = C(0, -1, 1, -10, -20);
    CurveQ me = minimal_model(e);
    CHECK(me.disc() == e.disc());
    CHECK(me.j() == e.j());
    // minimization preserves j
    CHECK(minimal_model(C(0, 0, 0, 0, 64)).j() == C(0, 0, 0, 0, 64).j());
}

TEST_CASE("conductor is invariant under scaling") {
    CHECK(conductor(C(0, 0, 0, 0, 64)) == 36);
    CHECK(conductor(C(0, 0, 0, -16, 0)) == 32);
    // short model of the conductor-11 curve via the u = 6 map
    CurveQ e = C(0, -1, 1, -10, -20);
    ShortModel s = ShortModel::of(e);
    CHECK(conductor(CurveQ{Int(0), Int(0), Int(0), s.A, s.B}) == 11);
}

TEST_CASE("conductor exponents") {
    CurveQ m = minimal_model(C(0, 0, 0, 0, 1));  // N = 36
    CHECK(conductor_exponent(m, Int(2)) == 2);
    CHECK(conductor_exponent(m, Int(3)) == 2);
    CHECK(conductor_exponent(m, Int(5)) == 0);
    CurveQ m162 = minimal_model(C(1, -1, 1, -5, 5));
    CHECK(conductor_exponent(m162, Int(2)) == 1);
    CHECK(conductor_exponent(m162, Int(3)) == 4);
}

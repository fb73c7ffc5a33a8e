#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tg/fppoly.hpp"
#include "tg/harness.hpp"

using namespace tg;

namespace {

CurveQ curve(long a1, long a2, long a3, long a4, long a6) {
    return CurveQ{Int(a1), Int(a2), Int(a3), Int(a4), Int(a6)};
}

long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    if (n > 1) r -= r / n;
    return r;
}

}  // namespace

TEST_CASE("division polynomial degree law") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coef(-20, 20);
    int curves = 0;
    while (curves < 20) {
        Int A(coef(rng)), B(coef(rng));
        if (-16 * (4 * A * A * A + 27 * B * B) == 0) continue;
        ++curves;
        DivisionPolys dp(ShortModel{A, B});
        for (unsigned n = 3; n <= 37; n += 2) CHECK(zdeg(dp.psit(n)) == (n * n - 1) / 2);
        // even n: psi_n = psit_n * 2y, deg psi_n^2 = n^2 - 1 as a poly in x
        for (unsigned n = 2; n <= 36; n += 2) CHECK(zdeg(dp.psi_sq(n)) == n * n - 1);
    }
}

TEST_CASE("group law axioms on torsion points") {
    std::vector<CurveQ> curves = {
        curve(1, 1, 1, -10, -10),   // Z/2 x Z/4
        curve(1, -1, 1, -3, 3),     // Z/2 x Z/6? (conductor 30)
        curve(0, -1, 1, -10, -20),  // Z/5
        curve(0, 0, 0, 0, 1),       // Z/6
        curve(0, 1, 0, 4, 4),       // Z/6
    };
    for (const auto& e : curves) {
        auto tq = torsion_over_Q(e);
        CurveNF c = CurveNF::base_change(e, NumberField::rationals());
        const auto& pts = tq.points;
        REQUIRE(!pts.empty());
        for (const auto& p : pts) {
            CHECK(c.on_curve(p));
            CHECK(c.eq(c.add(p, c.zero()), p));
            CHECK(c.eq(c.add(p, c.neg(p)), c.zero()));
        }
        std::size_t np = pts.size();
        for (std::size_t i = 0; i < np; ++i)
            for (std::size_t j = 0; j < np; ++j) {
                PointNF s = c.add(pts[i], pts[j]);
                CHECK(c.on_curve(s));
                CHECK(c.eq(s, c.add(pts[j], pts[i])));
            }
        // associativity over all triples from a generating set
        for (std::size_t i = 0; i < np; i += 2)
            for (std::size_t j = 0; j < np; j += 2)
                for (std::size_t k = 0; k < np; k += 2)
                    CHECK(c.eq(c.add(c.add(pts[i], pts[j]), pts[k]),
                               c.add(pts[i], c.add(pts[j], pts[k]))));
    }
}

TEST_CASE("group law over a quadratic field") {
    // y^2 = x^3 + 1 over Q(sqrt(-3)) has full 2 x 6 torsion
    CurveQ e = curve(0, 0, 0, 0, 1);
    auto r = torsion_growth(e, 2);
    REQUIRE(r.size() == 1);
    NFPtr K = r[0].field;
    CurveNF c = CurveNF::base_change(e, K);
    // collect all torsion points via lift_x over the division polynomials
    DivisionPolys dp(ShortModel::of(e));
    CurveNF cs{K, K->zero(), K->zero(), K->zero(),
               K->from_rational(Rat(ShortModel::of(e).A)), K->from_rational(Rat(ShortModel::of(e).B))};
    std::vector<PointNF> pts{cs.zero()};
    for (unsigned n : {2u, 3u}) {
        QPoly f = to_qpoly(dp.primitive_division_poly(n, 1));
        for (const auto& root : roots_in_nf(NFPoly::from_q(K, f)))
            for (const auto& p : cs.lift_x(root)) pts.push_back(p);
    }
    CHECK(pts.size() == 6);  // O, three order-2, two order-3
    // close under addition to get the full 2 x 6 torsion
    for (std::size_t i = 1; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j) {
            PointNF s = cs.add(pts[i], pts[j]);
            bool known = false;
            for (const auto& q : pts) known = known || cs.eq(q, s);
            if (!known) pts.push_back(s);
        }
    CHECK(pts.size() == 12);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i; j < pts.size(); ++j) {
            PointNF s = cs.add(pts[i], pts[j]);
            CHECK(cs.on_curve(s));
            CHECK(cs.eq(s, cs.add(pts[j], pts[i])));
        }
    for (std::size_t i = 0; i < pts.size(); i += 3)
        for (std::size_t j = 1; j < pts.size(); j += 3)
            for (std::size_t k = 2; k < pts.size(); k += 3)
                CHECK(cs.eq(cs.add(cs.add(pts[i], pts[j]), pts[k]),
                            cs.add(pts[i], cs.add(pts[j], pts[k]))));
}

TEST_CASE("emitted records satisfy the structure constraints") {
    // Weil pairing: full m-torsion needs the m-th cyclotomic field, so
    // phi(m) | [K:Q]; and the group shape is Z/m x Z/n with m | n.
    std::vector<CurveRecord> recs = {
        {"15.a", 15, curve(1, 1, 1, -10, -10)}, {"11.a", 11, curve(0, -1, 1, -10, -20)},
        {"36.a", 36, curve(0, 0, 0, 0, 1)},     {"14.a", 14, curve(1, 0, 1, 4, -6)},
        {"162.c", 162, curve(1, -1, 1, -5, 5)},
    };
    for (const auto& rec : recs)
        for (int d : {2, 3, 4}) {
            RunResult r = run_single(rec, d);
            CHECK(r.error.empty());
            for (const auto& g : r.growth) {
                CHECK(g.torsion.n % g.torsion.m == 0);
                CHECK(g.deg % euler_phi(g.torsion.m) == 0);
                CHECK(d % g.deg == 0);
                CHECK(static_cast<int>(g.minpoly.size()) == g.deg + 1);
                CHECK(g.minpoly.back() == 1);
            }
        }
}

TEST_CASE("factorization round trips: rationals") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int iter = 0; iter < 1000; ++iter) {
        int deg = 1 + static_cast<int>(rng() % 6);
        std::vector<long> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() == 0) c.back() = 3;
        QPoly f = QPoly::from_ints(c);
        auto fac = factor_over_Q(f);
        CHECK(fac.value() == f);
    }
}

TEST_CASE("factorization round trips: prime fields") {
    std::mt19937_64 rng(100);
    const std::uint64_t ps[] = {2, 3, 5, 13, 101, 65537};
    {
        auto f2 = factor_mod_p(FpPoly(2, {1, 1, 1, 1}));  // (x+1)^3 over F_2
        REQUIRE(f2.size() == 1);
        CHECK(f2[0].mult == 3);
    }
    for (int iter = 0; iter < 1000; ++iter) {
        std::uint64_t p = ps[iter % 6];
        int deg = 1 + static_cast<int>(rng() % 7);
        std::vector<std::uint64_t> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = rng() % p;
        if (c.back() == 0) c.back() = 1;
        FpPoly f(p, c);
        if (f.degree() < 1) continue;
        auto fac = factor_mod_p(f);
        FpPoly prod = FpPoly::constant(p, f.lead());
        for (const auto& fa : fac)
            for (int m = 0; m < fa.mult; ++m) prod = prod * fa.poly;
        CHECK(prod == f);
    }
}

TEST_CASE("factorization round trips: number field") {
    NFPtr K = NumberField::create(QPoly::from_ints({1, 0, 1}));  // Q(i)
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> coef(-4, 4);
    for (int iter = 0; iter < 1000; ++iter) {
        int deg = 1 + static_cast<int>(rng() % 4);
        std::vector<NFElement> c;
        for (int i = 0; i <= deg; ++i)
            c.push_back(K->element({Rat(coef(rng)), Rat(coef(rng))}));
        NFPoly f(K, c);
        if (f.degree() < 1) continue;
        auto fac = factor_over_nf(f);
        NFPoly prod(K, {fac.content});
        for (const auto& fa : fac.factors)
            for (int m = 0; m < fa.mult; ++m) prod = prod * fa.poly;
        CHECK(prod == f);
    }
}

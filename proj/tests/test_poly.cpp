#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tg/fppoly.hpp"
#include "tg/poly.hpp"

using namespace tg;

namespace {

// Direct Sylvester-matrix resultant by fraction-free Gaussian elimination,
// used as an independent cross-check for small cases.
Rat sylvester_resultant(const QPoly& p, const QPoly& q) {
    int m = p.degree(), n = q.degree();
    int N = m + n;
    std::vector<std::vector<Rat>> a(static_cast<std::size_t>(N),
                                    std::vector<Rat>(static_cast<std::size_t>(N), Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[i][i + j] = p[static_cast<std::size_t>(m - j)];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[n + i][i + j] = q[static_cast<std::size_t>(n - j)];
    Rat det(1);
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < N; ++r) {
            Rat f = a[r][c] / a[c][c];
            for (int k = c; k < N; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

QPoly P(std::initializer_list<long> v) { return QPoly::from_ints(std::vector<long>(v)); }

}  // namespace

TEST_CASE("basic arithmetic") {
    QPoly a = P({1, 1});    // x + 1
    QPoly b = P({-1, 1});   // x - 1
    CHECK(a * b == P({-1, 0, 1}));
    CHECK(a + b == P({0, 2}));
    CHECK(a - a == QPoly());
    CHECK((a * b).degree() == 2);
    CHECK(P({0}).is_zero());
    CHECK(P({1, 2, 3}).eval(Rat(2)) == Rat(17));
}

TEST_CASE("divrem") {
    QPoly x3 = P({0, 0, 0, 1});
    QPoly x2 = P({0, 0, 1});
    auto [q, r] = x3.divrem(x2);
    CHECK(q == P({0, 1}));
    CHECK(r.is_zero());

    QPoly f = P({3, -2, 0, 5, 7});
    QPoly g = P({1, 4, 2});
    auto [q2, r2] = f.divrem(g);
    CHECK(q2 * g + r2 == f);
    CHECK(r2.degree() < g.degree());
    CHECK_THROWS(f.divrem(QPoly()));
    CHECK_THROWS(f.div_exact(g));
}

TEST_CASE("gcd") {
    CHECK(poly_gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));
    CHECK(poly_gcd(P({1, 1}), P({-1, 1})) == P({1}));
    CHECK(poly_gcd(QPoly(), P({2, 4})).is_zero() == false);
    // gcd of f*h and g*h recovers h (monic)
    QPoly h = P({3, 1, 2});
    QPoly fh = P({1, 5}) * h;
    QPoly gh = P({-7, 1, 0, 1}) * h;
    CHECK(poly_gcd(fh, gh) == h.monic());
    // coprime big-ish
    CHECK(poly_gcd(P({2, 0, 0, 0, 0, 1}), P({-3, 1, 1})).degree() == 0);
}

TEST_CASE("resultant") {
    // res(x - a, x - b) = b - a
    CHECK(poly_resultant(P({-2, 1}), P({-5, 1})) == Rat(-3));
    CHECK(poly_resultant(P({-2, 0, 1}), P({-3, 0, 1})) == Rat(1));
    QPoly p = P({1, 3, 0, 2});
    CHECK(poly_resultant(p, p) == Rat(0));
    // cross-check against Sylvester determinant on a few cases
    std::vector<std::pair<QPoly, QPoly>> cases = {
        {P({-2, 0, 1}), P({-3, 0, 1})},
        {P({1, 2, 3}), P({4, 5, 6, 7})},
        {P({-1, 0, 0, 2}), P({5, -3, 1})},
        {P({7, 0, -4, 0, 1}), P({2, 3})},
    };
    for (auto& [f, g] : cases) {
        CHECK(poly_resultant(f, g) == sylvester_resultant(f, g));
        CHECK(poly_resultant(g, f) == sylvester_resultant(g, f));
    }
    // rational coefficients
    QPoly f(std::vector<Rat>{Rat(1, 2), Rat(0), Rat(1)});
    QPoly g(std::vector<Rat>{Rat(-1, 3), Rat(1)});
    CHECK(poly_resultant(f, g) == sylvester_resultant(f, g));
}

TEST_CASE("discriminant") {
    // disc(x^2 + bx + c) = b^2 - 4c
    CHECK(poly_discriminant(P({3, 5, 1})) == Rat(25 - 12));
    // disc(x^3 + px + q) = -4p^3 - 27q^2
    CHECK(poly_discriminant(P({2, -1, 0, 1})) == Rat(4 - 108));
}

TEST_CASE("squarefree part") {
    QPoly f = P({-1, 1}) * P({-1, 1}) * P({2, 1});
    CHECK(squarefree_part(f) == (P({-1, 1}) * P({2, 1})).monic());
    CHECK(squarefree_part(P({0, 0, 1})) == P({0, 1}));
}

TEST_CASE("shift scale reverse") {
    QPoly f = P({1, 2, 1});  // (x+1)^2
    CHECK(f.shift(Rat(1)) == P({4, 4, 1}));       // (x+2)^2
    CHECK(f.scale_arg(Rat(2)) == P({1, 4, 4}));   // (2x+1)^2
    CHECK(P({1, 2, 3}).reverse() == P({3, 2, 1}));
    for (long v = -3; v <= 3; ++v)
        CHECK(f.shift(Rat(5)).eval(Rat(v)) == f.eval(Rat(v) + 5));
}

TEST_CASE("interpolate") {
    QPoly f = P({4, -3, 0, 2});
    std::vector<Rat> xs, ys;
    for (long i = 0; i < 4; ++i) {
        xs.emplace_back(i);
        ys.push_back(f.eval(Rat(i)));
    }
    CHECK(interpolate(xs, ys) == f);
}

TEST_CASE("integer poly utilities") {
    ZPoly a = {Int(2), Int(4), Int(6)};
    CHECK(zcontent(a) == 2);
    CHECK(zprimitive(a) == ZPoly({Int(1), Int(2), Int(3)}));
    ZPoly neg = {Int(2), Int(-4)};
    CHECK(zprimitive(neg).back() > 0);
    ZPoly p = zmul({Int(-1), Int(1)}, {Int(1), Int(1)});
    CHECK(p == ZPoly({Int(-1), Int(0), Int(1)}));
    CHECK(zdiv_exact(p, {Int(-1), Int(1)}) == ZPoly({Int(1), Int(1)}));
    CHECK(zdivides({Int(1), Int(1)}, p));
    CHECK(!zdivides({Int(2), Int(1)}, p));
    CHECK(zeval(p, Int(3)) == 8);
    CHECK(to_primitive_z(QPoly(std::vector<Rat>{Rat(1, 2), Rat(1, 3)})) ==
          ZPoly({Int(3), Int(2)}));
}

TEST_CASE("rational roots") {
    // (2x - 1)(3x + 5)(x - 7) expanded
    QPoly f = P({-1, 2}) * P({5, 3}) * P({-7, 1});
    auto r = rational_roots(f);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Rat(-5, 3));
    CHECK(r[1] == Rat(1, 2));
    CHECK(r[2] == Rat(7));
    // no rational roots
    CHECK(rational_roots(P({-2, 0, 1})).empty());
    CHECK(rational_roots(P({1, 1, 1})).empty());
    // root at zero and repeated roots
    QPoly g = P({0, 1}) * P({-3, 1}) * P({-3, 1});
    auto rg = rational_roots(g);
    REQUIRE(rg.size() == 2);
    CHECK(rg[0] == Rat(0));
    CHECK(rg[1] == Rat(3));
    // large coefficients: (x - 10^30)(x^2 + 1)
    Int bigz;
    mpz_ui_pow_ui(bigz.get_mpz_t(), 10, 30);
    QPoly h = QPoly(std::vector<Rat>{Rat(-Int(bigz)), Rat(1)}) * P({1, 0, 1});
    auto rh = rational_roots(h);
    REQUIRE(rh.size() == 1);
    CHECK(rh[0] == Rat(bigz));
}

TEST_CASE("fp arithmetic and factorization") {
    std::uint64_t p = 7;
    // x^4 - 1 mod 7: brute-force root scan oracle
    FpPoly f(p, {p - 1, 0, 0, 0, 1});
    std::vector<std::uint64_t> expect;
    for (std::uint64_t a = 0; a < p; ++a)
        if (f.eval(a) == 0) expect.push_back(a);
    CHECK(fp_roots(f) == expect);
    REQUIRE(expect.size() == 2);  // x^4 = 1 has solutions 1 and 6 in F_7

    auto facs = factor_mod_p(f);
    Int total(0);
    FpPoly prod = FpPoly::constant(p, 1);
    int degsum = 0;
    for (auto& fa : facs) {
        degsum += fa.poly.degree() * fa.mult;
        for (int i = 0; i < fa.mult; ++i) prod = prod * fa.poly;
    }
    CHECK(degsum == 4);
    CHECK(prod == f.monic());

    // repeated factors: (x+1)^2 (x+2) mod 5
    FpPoly g = FpPoly(5, {1, 1}) * FpPoly(5, {1, 1}) * FpPoly(5, {2, 1});
    auto gf = factor_mod_p(g);
    REQUIRE(gf.size() == 2);
    CHECK(gf[0].mult + gf[1].mult == 3);

    // p-th power: (x^5 - x) is x(x-1)(x-2)(x-3)(x-4) mod 5
    FpPoly h(5, {0, 4, 0, 0, 0, 1});
    auto hf = factor_mod_p(h);
    CHECK(hf.size() == 5);

    // x^25 - x mod 5 contains a p-th-power structure in derivative terms
    std::vector<std::uint64_t> cc(26, 0);
    cc[1] = 4;
    cc[25] = 1;
    FpPoly big(5, std::move(cc));
    auto bf = factor_mod_p(big);
    int deg1 = 0, deg2 = 0;
    for (auto& fa : bf) {
        if (fa.poly.degree() == 1) ++deg1;
        if (fa.poly.degree() == 2) ++deg2;
    }
    CHECK(deg1 == 5);
    CHECK(deg2 == 10);  // all monic quadratic irreducibles over F_5
}

TEST_CASE("fp determinism") {
    FpPoly f(101, {100, 0, 0, 0, 0, 0, 1});  // x^6 - 1
    auto a = factor_mod_p(f, 1);
    auto b = factor_mod_p(f, 999);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].poly == b[i].poly);
        CHECK(a[i].mult == b[i].mult);
    }
}

TEST_CASE("rational reconstruction") {
    Int m(1000003);
    // encode 22/7 mod m
    Int enc = (Int(22) * Int(fp_inv(7, 1000003))) % m;
    auto r = rational_reconstruct(enc, m, Int(1000));
    REQUIRE(r.has_value());
    CHECK(*r == Rat(22, 7));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tg/factor.hpp"

using namespace tg;

namespace {

QPoly P(std::initializer_list<long> v) { return QPoly::from_ints(std::vector<long>(v)); }

void check_roundtrip(const QPoly& f) {
    auto fac = factor_over_Q(f);
    CHECK(fac.value() == f);
    for (auto& fa : fac.factors) {
        CHECK(fa.poly.lead() == 1);
        CHECK(fa.mult >= 1);
    }
}

}  // namespace

TEST_CASE("linear and quadratic") {
    auto f = factor_over_Q(P({-1, 0, 1}));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].poly == P({-1, 1}));
    CHECK(f.factors[1].poly == P({1, 1}));
    CHECK(f.content == 1);

    auto g = factor_over_Q(P({-2, 0, 1}));  // x^2 - 2 irreducible
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].poly == P({-2, 0, 1}));
    CHECK(is_irreducible_over_Q(P({-2, 0, 1})));
    CHECK(!is_irreducible_over_Q(P({-1, 0, 1})));
}

TEST_CASE("content and multiplicity") {
    QPoly f = P({-1, 1}) * P({-1, 1}) * P({3, 2}) * QPoly::constant(Rat(5, 7));
    auto fac = factor_over_Q(f);
    CHECK(fac.value() == f);
    REQUIRE(fac.factors.size() == 2);
    bool seen_sq = false;
    for (auto& fa : fac.factors)
        if (fa.poly == P({-1, 1})) {
            CHECK(fa.mult == 2);
            seen_sq = true;
        }
    CHECK(seen_sq);
}

TEST_CASE("cyclotomic-style") {
    // x^4 + 1 irreducible over Q though reducible mod every prime
    CHECK(is_irreducible_over_Q(P({1, 0, 0, 0, 1})));
    // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
    auto f = factor_over_Q(P({-1, 0, 0, 0, 0, 0, 1}));
    CHECK(f.factors.size() == 4);
    check_roundtrip(P({-1, 0, 0, 0, 0, 0, 1}));
    // x^12 - 1
    std::vector<long> c(13, 0);
    c[0] = -1;
    c[12] = 1;
    auto g = factor_over_Q(QPoly::from_ints(c));
    int degsum = 0;
    for (auto& fa : g.factors) degsum += fa.poly.degree();
    CHECK(degsum == 12);
    CHECK(g.factors.size() == 6);  // one per divisor of 12
}

TEST_CASE("non-monic") {
    // (2x - 1)(3x + 5) = 6x^2 + 7x - 5
    auto f = factor_over_Q(P({-5, 7, 6}));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.content == 6);
    check_roundtrip(P({-5, 7, 6}));
    // 4x^2 - 1
    check_roundtrip(P({-1, 0, 4}));
    auto g = factor_over_Q(P({-1, 0, 4}));
    CHECK(g.factors.size() == 2);
}

TEST_CASE("swinnerton-dyer style recombination stress") {
    // minimal polynomial of sqrt(2)+sqrt(3): x^4 - 10x^2 + 1, splits into four
    // linears mod every prime but is irreducible
    CHECK(is_irreducible_over_Q(P({1, 0, -10, 0, 1})));
    // (x^4 - 10x^2 + 1)(x^2 - 2)
    QPoly f = P({1, 0, -10, 0, 1}) * P({-2, 0, 1});
    auto fac = factor_over_Q(f);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.value() == f);
}

TEST_CASE("powers of x") {
    auto f = factor_over_Q(P({0, 0, 0, 2}));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].poly == QPoly::x());
    CHECK(f.factors[0].mult == 3);
    CHECK(f.content == 2);
}

TEST_CASE("non-monic products split fully") {
    // (5x+3)(7x+2)(2x^2+x+3): the monicizing substitution must keep the
    // leading coefficient exactly 1 or the modular lift silently fails and
    // the product comes back as "irreducible".
    QPoly f = P({3, 5}) * P({2, 7}) * P({3, 1, 2});
    auto fac = factor_over_Q(f);
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.factors[0].poly == P({2, 7}).monic());
    CHECK(fac.factors[1].poly == P({3, 5}).monic());
    CHECK(fac.factors[2].poly == P({3, 1, 2}).monic());
    CHECK(fac.value() == f);

    QPoly g = P({3, 31, 134, 334, 519, 419, -16, -528, -576, -320});
    auto gf = factor_over_Q(g);
    CHECK(gf.value() == g);
    CHECK(gf.factors.size() >= 2);
    for (auto& fa : gf.factors) CHECK(is_irreducible_over_Q(fa.poly));
}

TEST_CASE("random roundtrip") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> coef(-8, 8);
    for (int iter = 0; iter < 60; ++iter) {
        // product of 2-3 random small polys, possibly repeated
        QPoly f = QPoly::constant(Rat(1));
        int nf = 2 + static_cast<int>(rng() % 2);
        for (int i = 0; i < nf; ++i) {
            int d = 1 + static_cast<int>(rng() % 3);
            std::vector<long> c(static_cast<std::size_t>(d) + 1);
            for (auto& x : c) x = coef(rng);
            if (c.back() == 0) c.back() = 1;
            QPoly g = QPoly::from_ints(c);
            int rep = 1 + static_cast<int>(rng() % 2);
            for (int r = 0; r < rep; ++r) f = f * g;
        }
        if (f.degree() < 1) continue;
        check_roundtrip(f);
    }
}

TEST_CASE("bigger irreducible") {
    // x^8 + x^4 + x^3 + x + 1 has no roots and is irreducible
    QPoly f = P({1, 1, 0, 1, 1, 0, 0, 0, 1});
    auto fac = factor_over_Q(f);
    CHECK(fac.value() == f);
    int degsum = 0;
    for (auto& fa : fac.factors) degsum += fa.poly.degree() * fa.mult;
    CHECK(degsum == 8);
}

TEST_CASE("integer factorization") {
    auto f = factor_int(Int(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, int>(Int(2), 3));
    CHECK(f[1] == std::pair<Int, int>(Int(3), 2));
    CHECK(f[2] == std::pair<Int, int>(Int(5), 1));
    auto g = factor_int(Int(-97));
    REQUIRE(g.size() == 1);
    CHECK(g[0].first == 97);
    // semiprime beyond trial division range
    Int a(1000003), b(1000033);
    auto h = factor_int(a * b);
    REQUIRE(h.size() == 2);
    CHECK(h[0].first == a);
    CHECK(h[1].first == b);
    CHECK(is_probable_prime(Int(1000003)));
    CHECK(!is_probable_prime(Int(1000001)));
}

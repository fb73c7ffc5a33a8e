#include "tg/elliptic.hpp"

#include <algorithm>

namespace tg {

Int CurveQ::disc() const {
    Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

Rat CurveQ::j() const {
    Int C4 = c4();
    Rat r(C4 * C4 * C4, disc());
    r.canonicalize();
    return r;
}

void CurveQ::validate() const {
    if (disc() == 0) throw std::invalid_argument("singular curve");
}

// ----- division polynomials -----

namespace {

ZPoly zsq(const ZPoly& a) { return zmul(a, a); }

}  // namespace

const ZPoly& DivisionPolys::psit(unsigned n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    const Int& A = m_.A;
    const Int& B = m_.B;
    ZPoly r;
    if (n == 0) {
        r = {};
    } else if (n == 1 || n == 2) {
        r = {Int(1)};
    } else if (n == 3) {
        r = {-A * A, 12 * B, 6 * A, Int(0), Int(3)};
    } else if (n == 4) {
        r = {2 * (-8 * B * B - A * A * A), 2 * (-4 * A * B), 2 * (-5 * A * A),
             2 * (20 * B),                 2 * (5 * A),      Int(0),
             Int(2)};
    } else if (n % 2 == 1) {
        unsigned m = (n - 1) / 2;
        ZPoly F = {4 * B, 4 * A, Int(0), Int(4)};
        ZPoly F2 = zsq(F);
        ZPoly t1 = zmul(psit(m + 2), zmul(psit(m), zsq(psit(m))));
        ZPoly t2 = zmul(zmul(psit(m + 1), zsq(psit(m + 1))), psit(m - 1));
        r = (m % 2 == 0) ? zsub(zmul(F2, t1), t2) : zsub(t1, zmul(F2, t2));
    } else {
        unsigned m = n / 2;
        ZPoly t1 = zmul(psit(m + 2), zsq(psit(m - 1)));
        ZPoly t2 = zmul(psit(m - 2), zsq(psit(m + 1)));
        r = zmul(psit(m), zsub(t1, t2));
    }
    return cache_.emplace(n, std::move(r)).first->second;
}

ZPoly DivisionPolys::psi_sq(unsigned n) {
    ZPoly s = zsq(psit(n));
    if (n % 2 == 0) {
        ZPoly F = {4 * m_.B, 4 * m_.A, Int(0), Int(4)};
        s = zmul(s, F);
    }
    return s;
}

ZPoly DivisionPolys::phi(unsigned n) {
    ZPoly xs = zmul({Int(0), Int(1)}, psi_sq(n));
    ZPoly t = zmul(psit(n + 1), psit(n - 1));
    if (n % 2 == 1) {
        ZPoly F = {4 * m_.B, 4 * m_.A, Int(0), Int(4)};
        t = zmul(t, F);
    }
    return zsub(xs, t);
}

ZPoly DivisionPolys::primitive_division_poly(unsigned l, unsigned k) {
    if (k == 0) throw std::invalid_argument("primitive_division_poly: k >= 1");
    if (l == 2 && k == 1) return m_.cubic();
    unsigned n = 1;
    for (unsigned i = 0; i < k; ++i) n *= l;
    return zprimitive(zdiv_exact(psit(n), psit(n / l)));
}

// ----- curves over number fields -----

CurveNF CurveNF::base_change(const CurveQ& e, const NFPtr& K) {
    return {K,
            K->from_rational(Rat(e.a1)),
            K->from_rational(Rat(e.a2)),
            K->from_rational(Rat(e.a3)),
            K->from_rational(Rat(e.a4)),
            K->from_rational(Rat(e.a6))};
}

bool CurveNF::on_curve(const PointNF& p) const {
    if (p.inf) return true;
    const NFElement &x = p.x, &y = p.y;
    NFElement lhs = y * y + a1 * x * y + a3 * y;
    NFElement rhs = x * x * x + a2 * x * x + a4 * x + a6;
    return lhs == rhs;
}

bool CurveNF::eq(const PointNF& p, const PointNF& q) const {
    if (p.inf || q.inf) return p.inf == q.inf;
    return p.x == q.x && p.y == q.y;
}

PointNF CurveNF::neg(const PointNF& p) const {
    if (p.inf) return p;
    return {false, p.x, -p.y - a1 * p.x - a3};
}

PointNF CurveNF::add(const PointNF& p, const PointNF& q) const {
    if (p.inf) return q;
    if (q.inf) return p;
    const NFElement &x1 = p.x, &y1 = p.y, &x2 = q.x, &y2 = q.y;
    if (x1 == x2 && (y1 + y2 + a1 * x2 + a3).is_zero()) return zero();
    NFElement lam, nu;
    if (!(x1 == x2)) {
        NFElement d = (x2 - x1).inverse();
        lam = (y2 - y1) * d;
        nu = (y1 * x2 - y2 * x1) * d;
    } else {
        NFElement d = (y1 * Rat(2) + a1 * x1 + a3).inverse();
        lam = (x1 * x1 * Rat(3) + a2 * x1 * Rat(2) + a4 - a1 * y1) * d;
        nu = (-(x1 * x1 * x1) + a4 * x1 + a6 * Rat(2) - a3 * y1) * d;
    }
    NFElement x3 = lam * lam + a1 * lam - a2 - x1 - x2;
    NFElement y3 = -(lam + a1) * x3 - nu - a3;
    return {false, x3, y3};
}

PointNF CurveNF::mul(long n, const PointNF& p) const {
    PointNF base = p;
    if (n < 0) {
        base = neg(base);
        n = -n;
    }
    PointNF r = zero();
    while (n) {
        if (n & 1) r = add(r, base);
        n >>= 1;
        if (n) base = add(base, base);
    }
    return r;
}

long CurveNF::order(const PointNF& p, long bound) const {
    if (p.inf) return 1;
    PointNF q = p;  // q = k * p throughout
    for (long k = 1; k <= bound; ++k) {
        if (q.inf) return k;
        q = add(q, p);
    }
    return 0;
}

std::vector<PointNF> CurveNF::lift_x(const NFElement& x) const {
    // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
    NFElement b = a1 * x + a3;
    NFElement c = -(x * x * x + a2 * x * x + a4 * x + a6);
    NFElement D = b * b - c * Rat(4);
    auto s = nf_sqrt(D);
    std::vector<PointNF> out;
    if (!s) return out;
    NFElement half = field->from_rational(Rat(1, 2));
    NFElement y1 = (-b + *s) * half;
    out.push_back({false, x, y1});
    if (!s->is_zero()) out.push_back({false, x, (-b - *s) * half});
    return out;
}

// ----- group structure -----

std::pair<TorsionStructure, std::vector<PointNF>> group_structure(const CurveNF& c,
                                                                  std::vector<PointNF> pts) {
    // ensure the identity is present and points are distinct
    std::vector<PointNF> all;
    auto contains = [&](const PointNF& p) {
        for (const auto& q : all)
            if (c.eq(p, q)) return true;
        return false;
    };
    all.push_back(c.zero());
    for (auto& p : pts)
        if (!contains(p)) all.push_back(p);
    long N = static_cast<long>(all.size());

    long maxord = 1;
    PointNF pmax = c.zero();
    std::vector<long> orders(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        long o = c.order(all[i], N + 1);
        if (o == 0) throw std::runtime_error("group_structure: order exceeds set size");
        orders[i] = o;
        if (o > maxord) {
            maxord = o;
            pmax = all[i];
        }
    }
    TorsionStructure ts;
    ts.n = static_cast<int>(maxord);
    ts.m = static_cast<int>(N / maxord);
    if (static_cast<long>(ts.m) * ts.n != N || ts.n % ts.m != 0)
        throw std::runtime_error("group_structure: not a rank-2 abelian group");
    std::vector<PointNF> gens;
    if (ts.n > 1) gens.push_back(pmax);
    if (ts.m > 1) {
        // cyclic subgroup generated by pmax
        std::vector<PointNF> cyc;
        PointNF q = c.zero();
        for (long i = 0; i < maxord; ++i) {
            cyc.push_back(q);
            q = c.add(q, pmax);
        }
        auto in_cyc = [&](const PointNF& p) {
            for (const auto& r : cyc)
                if (c.eq(p, r)) return true;
            return false;
        };
        bool found = false;
        for (std::size_t i = 0; i < all.size() && !found; ++i) {
            if (orders[i] != ts.m || in_cyc(all[i])) continue;
            // verify the joint span covers the whole set
            std::vector<PointNF> span;
            for (long a = 0; a < maxord; ++a)
                for (long b = 0; b < ts.m; ++b)
                    span.push_back(c.add(cyc[static_cast<std::size_t>(a)],
                                         c.mul(b, all[i])));
            std::size_t distinct = 0;
            for (std::size_t s1 = 0; s1 < span.size(); ++s1) {
                bool dup = false;
                for (std::size_t s2 = 0; s2 < s1; ++s2)
                    if (c.eq(span[s1], span[s2])) {
                        dup = true;
                        break;
                    }
                if (!dup) ++distinct;
            }
            if (static_cast<long>(distinct) == N) {
                gens.push_back(all[i]);
                found = true;
            }
        }
        if (!found) throw std::runtime_error("group_structure: no complement generator");
    }
    return {ts, gens};
}

// ----- rational torsion -----

namespace {

std::optional<Rat> rat_sqrt(const Rat& v) {
    if (v < 0) return std::nullopt;
    const Int &num = v.get_num(), &den = v.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

}  // namespace

TorsionQ torsion_over_Q(const CurveQ& e) {
    e.validate();
    ShortModel sm = ShortModel::of(e);
    DivisionPolys dp(sm);
    auto Q = NumberField::rationals();
    CurveNF enf = CurveNF::base_change(e, Q);

    // Candidate x-coordinates on the short model: rational roots of the
    // 2-division cubic and of psit_n for n covering all orders allowed by
    // Mazur's theorem (every order divides one of 7, 8, 9, 10, 12).
    std::vector<Rat> xs;
    {
        auto add_roots = [&](const ZPoly& f) {
            for (auto& r : rational_roots(to_qpoly(f))) xs.push_back(r);
        };
        add_roots(sm.cubic());
        for (unsigned n : {7u, 8u, 9u, 10u, 12u}) add_roots(dp.psit(n));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<PointNF> pts;
    for (const Rat& X : xs) {
        Rat v = X * X * X + Rat(sm.A) * X + Rat(sm.B);
        auto Y = rat_sqrt(v);
        if (!Y) continue;
        // back to the original model
        Rat x = (X - 3 * Rat(e.b2())) / 36;
        for (int sign : {1, -1}) {
            Rat y = (*Y * sign / 108 - Rat(e.a1) * x - Rat(e.a3)) / 2;
            PointNF p{false, Q->from_rational(x), Q->from_rational(y)};
            if (enf.on_curve(p)) pts.push_back(p);
            if (*Y == 0) break;
        }
    }
    auto [ts, gens] = group_structure(enf, pts);
    TorsionQ out;
    out.group = ts;
    out.gens = std::move(gens);
    out.points.push_back(enf.zero());
    for (auto& p : pts) {
        bool dup = false;
        for (auto& q : out.points)
            if (enf.eq(p, q)) {
                dup = true;
                break;
            }
        if (!dup) out.points.push_back(p);
    }
    return out;
}

}  // namespace tg

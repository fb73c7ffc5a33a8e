#include "tg/factor.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "tg/fppoly.hpp"

namespace tg {

QPoly Factorization::value() const {
    QPoly v = QPoly::constant(content);
    for (const auto& f : factors)
        for (int i = 0; i < f.mult; ++i) v = v * f.poly;
    return v;
}

// ----- integer factorization -----

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's variant.
    for (unsigned long c = 1; c < 64; ++c) {
        Int x(2), y(2), d(1);
        Int ys, q(1);
        unsigned long r = 1, m = 128;
        auto f = [&](const Int& v) -> Int { return (v * v + c) % n; };
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Int diff = x - y;
                    if (diff < 0) diff = -diff;
                    q = q * diff % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r <<= 1;
            if (r > (1UL << 22)) break;  // effort cap per constant
        }
        if (d == n) {
            // backtrack
            do {
                ys = f(ys);
                Int diff = x - ys;
                if (diff < 0) diff = -diff;
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (d == 1);
        }
        if (d != 1 && d != n) return d;
    }
    throw std::runtime_error("factor_int: composite resisted factoring");
}

void factor_rec(const Int& n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_int(const Int& n) {
    if (n == 0) throw std::invalid_argument("factor_int(0)");
    Int m = n < 0 ? Int(-n) : n;
    std::map<Int, int> out;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            ++out[Int(p)];
            m /= static_cast<long>(p);
        }
    }
    for (unsigned long p = 17; p < 100000 && m > 1; p += 2) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                ++out[Int(p)];
                m /= static_cast<long>(p);
            }
        }
    }
    if (m > 1) factor_rec(m, out);
    return {out.begin(), out.end()};
}

// ----- Hensel lifting machinery (integer polys, coefficients symmetric mod m) -----

namespace {

Int smod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zpmod(const ZPoly& a, const Int& m) {
    ZPoly r = a;
    for (auto& x : r) x = smod(x, m);
    ztrim(r);
    return r;
}

ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Int& m) { return zpmod(zmul(a, b), m); }
ZPoly zsub_mod(const ZPoly& a, const ZPoly& b, const Int& m) { return zpmod(zsub(a, b), m); }
ZPoly zadd_mod(const ZPoly& a, const ZPoly& b, const Int& m) { return zpmod(zadd(a, b), m); }

// divrem by a monic divisor, all mod m.
std::pair<ZPoly, ZPoly> zdivrem_monic_mod(const ZPoly& a, const ZPoly& b, const Int& m) {
    ZPoly rem = a, quot;
    int db = zdeg(b);
    if (zdeg(rem) < db) return {{}, zpmod(rem, m)};
    quot.assign(rem.size() - b.size() + 1, Int(0));
    for (int i = zdeg(rem); i >= db; --i) {
        Int q = smod(rem[static_cast<std::size_t>(i)], m);
        if (q != 0) {
            quot[static_cast<std::size_t>(i - db)] = q;
            for (int j = 0; j <= db; ++j) {
                auto& r = rem[static_cast<std::size_t>(i - db + j)];
                r = smod(r - q * b[static_cast<std::size_t>(j)], m);
            }
        } else {
            rem[static_cast<std::size_t>(i)] = 0;
        }
    }
    ztrim(quot);
    return {quot, zpmod(rem, m)};
}

ZPoly fp_to_z(const FpPoly& f, std::uint64_t p) {
    ZPoly r;
    for (auto c : f.coeffs()) {
        Int v(static_cast<unsigned long>(c));
        if (2 * c > p) v -= Int(static_cast<unsigned long>(p));
        r.push_back(v);
    }
    ztrim(r);
    return r;
}

// Bezout s*a + t*b = 1 in F_p[x] for coprime a, b.
std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& a, const FpPoly& b) {
    std::uint64_t p = a.prime();
    FpPoly r0 = a, r1 = b;
    FpPoly s0 = FpPoly::constant(p, 1), s1(p);
    FpPoly t0(p), t1 = FpPoly::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        FpPoly s2 = s0 - q * s1;
        FpPoly t2 = t0 - q * t1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw std::runtime_error("fp_bezout: inputs not coprime");
    std::uint64_t inv = fp_inv(r0.lead(), p);
    return {s0.scaled(inv), t0.scaled(inv)};
}

// One quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m, f, g, h
// monic, deg s < deg h, deg t < deg g.  Updates everything to hold mod m^2.
// The cofactor is recomputed by exact division and the Bezout pair is reduced
// to its canonical representative so all degrees stay bounded across steps.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Int& m) {
    Int m2 = m * m;
    ZPoly e = zpmod(zsub(f, zmul(g, h)), m2);
    ZPoly r = zdivrem_monic_mod(zmul_mod(s, e, m2), h, m2).second;
    ZPoly h1 = zadd_mod(h, r, m2);  // the unique monic lift of h
    auto [g1, gr] = zdivrem_monic_mod(f, h1, m2);
    if (!gr.empty()) throw std::runtime_error("hensel_step: cofactor division not exact");
    // refresh: s1*g1 + t1*h1 = 1 mod m^2 via one Newton step for the inverse
    ZPoly B = zpmod(zadd(zmul(s, g1), zmul(t, h1)), m2);  // = 1 + O(m)
    ZPoly corr = zsub_mod(ZPoly{Int(2)}, B, m2);
    ZPoly s1 = zdivrem_monic_mod(zmul_mod(s, corr, m2), h1, m2).second;
    auto [t1, tr] =
        zdivrem_monic_mod(zsub_mod(ZPoly{Int(1)}, zmul_mod(s1, g1, m2), m2), h1, m2);
    if (!tr.empty()) throw std::runtime_error("hensel_step: Bezout division not exact");
    g = std::move(g1);
    h = std::move(h1);
    s = std::move(s1);
    t = std::move(t1);
}

// Lift factorization f = prod(parts) (monic, pairwise coprime mod p) from
// mod p to mod p^k with p^k >= target.  Recursive binary splitting.
void hensel_multifactor(const ZPoly& f, std::vector<ZPoly>& parts, std::size_t lo, std::size_t hi,
                        std::uint64_t p, const Int& target) {
    if (hi - lo <= 1) {
        parts[lo] = f;
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    FpPoly a = FpPoly::constant(p, 1), b = FpPoly::constant(p, 1);
    for (std::size_t i = lo; i < mid; ++i) a = a * FpPoly::from_z(parts[i], p);
    for (std::size_t i = mid; i < hi; ++i) b = b * FpPoly::from_z(parts[i], p);
    auto [sf, tf] = fp_bezout(a, b);
    ZPoly g = fp_to_z(a, p), h = fp_to_z(b, p);
    ZPoly s = fp_to_z(sf, p), t = fp_to_z(tf, p);
    Int m(static_cast<unsigned long>(p));
    while (m < target) {
        hensel_step(f, g, h, s, t, m);
        m = m * m;
    }
    hensel_multifactor(g, parts, lo, mid, p, target);
    hensel_multifactor(h, parts, mid, hi, p, target);
}

Int sqrt_ceil(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) r += 1;
    return r;
}

// Landau-Mignotte style bound: coefficients of any monic factor of monic f
// are bounded by 2^n * |f|_2.
Int factor_coeff_bound(const ZPoly& f) {
    Int norm2(0);
    for (const auto& c : f) norm2 += c * c;
    Int b = sqrt_ceil(norm2) + 1;
    Int two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(zdeg(f) + 1));
    return b * two_n;
}

// Factor a monic squarefree integer polynomial into monic integer irreducibles.
std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
    int n = zdeg(f);
    if (n == 1) return {f};

    // Pick a prime keeping f squarefree mod p, preferring few modular factors.
    std::uint64_t best_p = 0;
    std::vector<FpFactor> best_facs;
    int found = 0;
    for (std::uint64_t p = 3; found < 5 && p < 5000; p += 2) {
        if (!is_probable_prime(Int(static_cast<unsigned long>(p)))) continue;
        FpPoly fp = FpPoly::from_z(f, p);
        if (fp.degree() != n) continue;
        if (fp_gcd(fp, fp.derivative()).degree() != 0) continue;
        auto facs = factor_mod_p(fp);
        ++found;
        if (best_p == 0 || facs.size() < best_facs.size()) {
            best_p = p;
            best_facs = std::move(facs);
        }
        if (best_facs.size() == 1) break;
    }
    if (best_p == 0) throw std::runtime_error("factor_over_Q: no squarefree prime found");
    if (best_facs.size() == 1) return {f};

    Int bound = factor_coeff_bound(f);
    Int target = 2 * bound + 1;
    std::vector<ZPoly> parts;
    for (auto& fa : best_facs) parts.push_back(fp_to_z(fa.poly, best_p));
    hensel_multifactor(f, parts, 0, parts.size(), best_p, target);
    // Every node of the lifting tree squares from p the same number of times,
    // so all parts are exact mod this modulus.
    Int modulus(static_cast<unsigned long>(best_p));
    while (modulus < target) modulus = modulus * modulus;

    // Zassenhaus recombination.
    std::vector<ZPoly> result;
    ZPoly rest = f;
    std::vector<std::size_t> pool(parts.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    long tests = 0;
    const long cap = 1L << 20;

    std::size_t card = 1;
    while (2 * card <= pool.size()) {
        // enumerate subsets of `pool` of size `card`
        std::vector<std::size_t> idx(card);
        for (std::size_t i = 0; i < card; ++i) idx[i] = i;
        bool removed = false;
        while (true) {
            if (++tests > cap)
                throw std::runtime_error("factor_over_Q: recombination limit exceeded");
            // early abort: trailing coefficient must divide rest(0) (if nonzero)
            Int tc(1);
            for (auto k : idx) {
                const ZPoly& g = parts[pool[k]];
                tc = smod(tc * g[0], modulus);
            }
            bool plausible = true;
            if (!rest.empty() && rest[0] != 0) {
                if (tc == 0 || !mpz_divisible_p(rest[0].get_mpz_t(), tc.get_mpz_t()))
                    plausible = false;
            }
            if (plausible) {
                ZPoly cand{Int(1)};
                for (auto k : idx) cand = zpmod(zmul(cand, parts[pool[k]]), modulus);
                bool ok = true;
                for (const auto& c : cand)
                    if (c > bound || c < -bound) {
                        ok = false;
                        break;
                    }
                if (ok && zdivides(cand, rest)) {
                    result.push_back(cand);
                    rest = zdiv_exact(rest, cand);
                    std::vector<std::size_t> np;
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end())
                            np.push_back(pool[i]);
                    pool = std::move(np);
                    removed = true;
                    break;
                }
            }
            // next combination
            std::size_t i = card;
            while (i-- > 0) {
                if (idx[i] != i + pool.size() - card) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX) break;
        }
        if (!removed) ++card;
    }
    if (zdeg(rest) > 0) result.push_back(rest);
    return result;
}

// Factor a primitive squarefree integer polynomial (any leading coefficient).
std::vector<QPoly> factor_squarefree_z(const ZPoly& f) {
    int n = zdeg(f);
    if (n == 1) return {to_qpoly(f).monic()};
    const Int& l = f.back();
    if (l == 1) {
        std::vector<QPoly> out;
        for (auto& g : factor_monic_squarefree(f)) out.push_back(to_qpoly(g));
        return out;
    }
    // Monicize: fm(x) = l^(n-1) f(x/l) is monic with integer coefficients.
    ZPoly fm(f.size());
    fm[static_cast<std::size_t>(n)] = 1;
    Int pw(1);
    for (int i = n - 1; i >= 0; --i) {
        fm[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] * pw;
        pw *= l;
    }
    std::vector<QPoly> out;
    for (auto& gm : factor_monic_squarefree(fm)) {
        // map back: g(x) = primitive part of gm(l*x)
        ZPoly g(gm.size());
        Int q(1);
        for (std::size_t i = 0; i < gm.size(); ++i) {
            g[i] = gm[i] * q;
            q *= l;
        }
        out.push_back(to_qpoly(zprimitive(g)).monic());
    }
    return out;
}

}  // namespace

Factorization factor_over_Q(const QPoly& f) {
    Factorization out;
    if (f.is_zero()) {
        out.content = 0;
        return out;
    }
    out.content = f.lead();
    if (f.degree() == 0) return out;

    QPoly g = f.monic();
    // strip x^v
    int v = 0;
    while (g[0] == 0) {
        auto [q, r] = g.divrem(QPoly::x());
        g = q;
        ++v;
    }
    if (v > 0) out.factors.push_back({QPoly::x(), v});

    // Yun squarefree decomposition: g = prod sq[i].first ^ sq[i].second.
    std::vector<std::pair<QPoly, int>> sq;
    if (g.degree() > 0) {
        QPoly df = g.derivative();
        QPoly u = poly_gcd(g, df);
        QPoly vv = g.div_exact(u);
        QPoly w = df.div_exact(u);
        int i = 1;
        while (vv.degree() > 0) {
            QPoly d = w - vv.derivative();
            QPoly h = poly_gcd(vv, d);
            if (h.degree() > 0) sq.push_back({h, i});
            vv = vv.div_exact(h);
            w = d.div_exact(h);
            ++i;
        }
    }

    for (auto& [sf, mult] : sq) {
        ZPoly z = to_primitive_z(sf);
        for (auto& irr : factor_squarefree_z(z)) out.factors.push_back({irr, mult});
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const QFactor& a, const QFactor& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        return a.poly.coeffs() < b.poly.coeffs();
    });
    return out;
}

bool is_irreducible_over_Q(const QPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor_over_Q(f);
    return fac.factors.size() == 1 && fac.factors[0].mult == 1;
}

namespace {

// Coefficient bound for a monic factor of degree <= maxdeg of monic f.
Int small_factor_bound(const ZPoly& f, int maxdeg) {
    Int norm2(0);
    for (const auto& c : f) norm2 += c * c;
    Int b = sqrt_ceil(norm2) + 1;
    Int two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(maxdeg + 1));
    return b * two_k;
}

}  // namespace

std::vector<QPoly> small_factors(const QPoly& f, int maxdeg) {
    std::vector<QPoly> out;
    if (f.degree() < 1 || maxdeg < 1) return out;
    if (f.degree() <= std::max(maxdeg, 48)) {
        for (auto& fa : factor_over_Q(f).factors)
            if (fa.poly.degree() <= maxdeg) out.push_back(fa.poly);
        return out;
    }
    ZPoly z = to_primitive_z(f);
    int n = zdeg(z);
    const Int& l = z.back();
    // Monicize: fm(x) = l^(n-1) f(x/l).
    ZPoly fm(z.size());
    {
        fm[static_cast<std::size_t>(n)] = 1;
        Int pw(1);
        for (int i = n - 1; i >= 0; --i) {
            fm[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] * pw;
            pw *= l;
        }
    }

    // Prime selection: f must stay squarefree mod p; prefer few small factors.
    // Any rational factor of degree e <= maxdeg reduces to modular factors of
    // degree <= e, so if no sub-multiset of small modular degrees sums to a
    // value in 1..maxdeg there is nothing to find.
    std::uint64_t best_p = 0;
    std::size_t best_count = SIZE_MAX;
    int found = 0;
    for (std::uint64_t p = 3; found < 5 && p < 5000; p += 2) {
        if (!is_probable_prime(Int(static_cast<unsigned long>(p)))) continue;
        FpPoly fp = FpPoly::from_z(fm, p);
        if (fp.degree() != n) continue;
        if (fp_gcd(fp, fp.derivative()).degree() != 0) continue;
        ++found;
        auto degs = fp_factor_degrees_upto(fp, maxdeg);
        std::vector<char> reach(static_cast<std::size_t>(maxdeg) + 1, 0);
        reach[0] = 1;
        for (int dd : degs)
            for (int s = maxdeg; s >= dd; --s)
                if (reach[static_cast<std::size_t>(s - dd)]) reach[static_cast<std::size_t>(s)] = 1;
        bool any = false;
        for (int s = 1; s <= maxdeg; ++s)
            if (reach[static_cast<std::size_t>(s)]) any = true;
        if (!any) return out;  // provably no factor of degree <= maxdeg
        if (degs.size() < best_count) {
            best_count = degs.size();
            best_p = p;
        }
    }
    if (best_p == 0) throw std::runtime_error("small_factors: no squarefree prime found");

    auto [small_fp, cof] = factor_mod_p_small(FpPoly::from_z(fm, best_p), maxdeg);
    if (small_fp.empty()) return out;

    Int bound = small_factor_bound(fm, maxdeg);
    Int target = 2 * bound + 1;
    std::vector<ZPoly> parts;
    for (auto& q : small_fp) parts.push_back(fp_to_z(q, best_p));
    std::size_t nsmall = parts.size();
    if (cof.degree() > 0) parts.push_back(fp_to_z(cof, best_p));
    hensel_multifactor(fm, parts, 0, parts.size(), best_p, target);
    Int modulus(static_cast<unsigned long>(best_p));
    while (modulus < target) modulus = modulus * modulus;

    // Recombination over small parts only, by increasing factor degree so
    // every factor found is irreducible.
    std::vector<ZPoly> result;
    ZPoly rest = fm;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < nsmall; ++i) pool.push_back(i);
    long nodes = 0;
    const long cap = 1L << 22;
    bool overflow = false;

    std::vector<std::size_t> chosen;
    // DFS over pool indices, accumulating an exact degree sum.
    std::function<bool(std::size_t, int)> dfs = [&](std::size_t from, int need) -> bool {
        if (need == 0) {
            if (chosen.empty()) return false;
            Int tc(1);
            for (auto k : chosen) tc = smod(tc * parts[pool[k]][0], modulus);
            if (!rest.empty() && rest[0] != 0) {
                if (tc == 0 || !mpz_divisible_p(rest[0].get_mpz_t(), tc.get_mpz_t())) return false;
            }
            ZPoly cand{Int(1)};
            for (auto k : chosen) cand = zpmod(zmul(cand, parts[pool[k]]), modulus);
            for (const auto& c : cand)
                if (c > bound || c < -bound) return false;
            if (!zdivides(cand, rest)) return false;
            result.push_back(cand);
            rest = zdiv_exact(rest, cand);
            std::vector<std::size_t> np;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (std::find(chosen.begin(), chosen.end(), i) == chosen.end())
                    np.push_back(pool[i]);
            pool = std::move(np);
            return true;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            int dg = zdeg(parts[pool[i]]);
            if (dg > need) break;  // parts sorted by degree ascending
            if (++nodes > cap) {
                overflow = true;
                return false;
            }
            chosen.push_back(i);
            if (dfs(i + 1, need - dg)) {
                chosen.pop_back();
                return true;
            }
            chosen.pop_back();
            if (overflow) return false;
        }
        return false;
    };

    for (int D = 1; D <= maxdeg && !overflow; ++D) {
        while (!overflow) {
            // keep pool sorted by degree for pruning
            std::sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) {
                return zdeg(parts[a]) < zdeg(parts[b]);
            });
            chosen.clear();
            if (!dfs(0, D)) break;
        }
    }
    if (overflow) {
        // Honest fallback: full factorization.
        out.clear();
        for (auto& fa : factor_over_Q(f).factors)
            if (fa.poly.degree() <= maxdeg) out.push_back(fa.poly);
        return out;
    }

    for (auto& gm : result) {
        // map back: g(x) = primitive part of gm(l*x), made monic
        ZPoly g(gm.size());
        Int q(1);
        for (std::size_t i = 0; i < gm.size(); ++i) {
            g[i] = gm[i] * q;
            q *= l;
        }
        out.push_back(to_qpoly(zprimitive(g)).monic());
    }
    std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

}  // namespace tg

#include "tg/growth.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tg/fppoly.hpp"
#include "tg/reduction.hpp"

namespace tg {

namespace {

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

long lpart(long o, long l) {
    long r = 1;
    while (o % l == 0) {
        o /= l;
        r *= l;
    }
    return r;
}

// Deterministic order on integral minimal polynomials: degree, then
// coefficients from the top down.
bool zpoly_less(const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

std::string qpoly_key(const QPoly& g) {
    std::string s;
    for (int i = 0; i <= g.degree(); ++i) {
        s += g[static_cast<std::size_t>(i)].get_str();
        s += ',';
    }
    return s;
}

std::string elem_key(const NFElement& a) {
    std::string s;
    for (const auto& c : a.coords()) {
        s += c.get_str();
        s += ',';
    }
    return s;
}

std::string point_key(const PointNF& p) {
    if (p.inf) return "O";
    return elem_key(p.x) + ";" + elem_key(p.y);
}

CurveQ short_curve(const CurveQ& e) {
    ShortModel sm = ShortModel::of(e);
    return CurveQ{Int(0), Int(0), Int(0), sm.A, sm.B};
}

PointNF embed_point(const CurveNF& target, const PointNF& p, const NFElement& alpha) {
    if (p.inf) return target.zero();
    return PointNF{false, nf_embed(p.x, alpha), nf_embed(p.y, alpha)};
}

/// All sums a1 g1 + ... + ar gr with ai running over full cycles; the result
/// is the subgroup generated by the gens when orders[i] is the exact order.
std::vector<PointNF> span_points(const CurveNF& c, const std::vector<PointNF>& gens,
                                 const std::vector<long>& orders) {
    std::vector<PointNF> span{c.zero()};
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<PointNF> next;
        PointNF mult = c.zero();
        for (long a = 0; a < orders[i]; ++a) {
            for (const auto& q : span) next.push_back(c.add(q, mult));
            mult = c.add(mult, gens[i]);
        }
        span = std::move(next);
    }
    std::vector<PointNF> out;
    for (const auto& p : span) {
        bool dup = false;
        for (const auto& q : out)
            if (c.eq(p, q)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

std::vector<PointNF> triple_span(const CurveNF& c, const GrowthTriple& t) {
    std::vector<PointNF> gens;
    std::vector<long> orders;
    if (t.group.n > 1) {
        gens.push_back(t.gens[0]);
        orders.push_back(t.group.n);
    }
    if (t.group.m > 1) {
        gens.push_back(t.gens[1]);
        orders.push_back(t.group.m);
    }
    return span_points(c, gens, orders);
}

}  // namespace

// ---------------------------------------------------------------- PruneTable

PruneTable PruneTable::builtin() {
    PruneTable t;
    for (int d = 1; d <= 23; ++d) {
        std::vector<long> v{2, 3, 5, 7};
        if (d % 5 == 0) v.push_back(11);
        if (d % 3 == 0 || d % 4 == 0) v.push_back(13);
        if (d % 8 == 0) v.push_back(17);
        if (d % 9 == 0) v.push_back(19);
        if (d % 12 == 0) v.push_back(37);
        if (d % 7 == 0) v.push_back(43);
        std::sort(v.begin(), v.end());
        t.rq_[d] = std::move(v);
    }
    return t;
}

PruneTable PruneTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("PruneTable: cannot open " + path);
    PruneTable t;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::runtime_error("PruneTable: bad line: " + line);
        int d = std::stoi(line.substr(0, colon));
        std::istringstream rest(line.substr(colon + 1));
        std::vector<long> v;
        long l;
        while (rest >> l) v.push_back(l);
        std::sort(v.begin(), v.end());
        t.rq_[d] = std::move(v);
    }
    for (int d = 1; d <= 23; ++d)
        if (!t.rq_.count(d))
            throw std::runtime_error("PruneTable: missing entry for degree " + std::to_string(d));
    return t;
}

const std::vector<long>& PruneTable::primes_for(int d) const {
    auto it = rq_.find(d);
    if (it == rq_.end()) throw std::invalid_argument("PruneTable: degree out of range");
    return it->second;
}

// -------------------------------------------------------------------- guards

bool guard_allows(long l, int k, int d) {
    if (k < 2) throw std::invalid_argument("guard_allows: k must be >= 2");
    return (l < 11 || d >= 55) && (l != 5 || k == 2 || d >= 50) && (l != 7 || d >= 42) &&
           (l != 3 || k <= 3 || d >= 54);
}

namespace {

/// Largest l-power level worth exploring in degree <= d, from guard_allows.
/// (A degree bound of the shape phi(l^k) <= 2d would be wrong: a curve with
/// a rational l^k-isogeny can have an order-l^k point of much smaller
/// degree, e.g. order 25 in degree 5.)
int level_cap(long l, int d) {
    int k = 1;
    while (k < 8 && guard_allows(l, k + 1, d)) ++k;
    return k;
}

}  // namespace

bool modp_degree_filter(const CurveQ& e, long l, int k, int d, int primes_to_try) {
    CurveQ em = minimal_model(e);
    DivisionPolys dp(ShortModel::of(em));
    ZPoly P = dp.primitive_division_poly(static_cast<unsigned>(l), static_cast<unsigned>(k));
    Int disc = em.disc();
    int tested = 0;
    for (std::uint64_t p = 3; tested < primes_to_try && p < 20000; p += 2) {
        if (static_cast<long>(p) == l) continue;
        if (!is_probable_prime(Int(static_cast<unsigned long>(p)))) continue;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;  // bad reduction
        FpPoly fp = FpPoly::from_z(P, p);
        if (fp.degree() != zdeg(P)) continue;  // leading coefficient vanished
        auto degs = fp_factor_degrees_upto(fp, d);
        ++tested;
        // Subset sums of the modular factor degrees, capped at d.
        std::uint64_t reach = 1;
        std::uint64_t mask = (d >= 63) ? ~0ULL : ((1ULL << (d + 1)) - 1);
        for (int dg : degs) reach = (reach | (reach << dg)) & mask;
        bool ok = false;
        for (int deg = 1; deg <= d && !ok; ++deg) {
            if (!((reach >> deg) & 1)) continue;
            if (d % deg == 0 || (2 * deg <= d && d % (2 * deg) == 0)) ok = true;
        }
        if (!ok) return false;
    }
    return true;
}

// --------------------------------------------------------------- Algorithm 1

std::vector<long> algorithm1_prime_set(const CurveQ& e, int d, const PruneTable& table) {
    if (d < 1 || d > 23) throw std::invalid_argument("algorithm1_prime_set: d out of range");
    for (long q : {11L, 13L, 17L, 19L, 23L})
        if (d % q == 0) return {};
    long tors = torsion_over_Q(e).group.order();
    static const Rat j17 = Rat(Int(-17) * 373 * 373 * 373, Int(1) << 17);
    static const Rat j37 = Rat(Int(-7) * 11 * 11 * 11);
    Rat j = e.j();
    std::vector<long> out;
    for (long l : table.primes_for(d)) {
        bool keep;
        if (l == 17)
            keep = (d % 8 == 0) && j == j17;
        else if (l == 37)
            keep = (d % 12 == 0) && j == j37;
        else
            keep = tors % l == 0 || modp_degree_filter(e, l, 1, d);
        if (keep) out.push_back(l);
    }
    return out;
}

// ------------------------------------------------------------- special paths

std::optional<GrowthTriple> special_path(const CurveQ& e, long l, int d) {
    if (l != 17 && l != 37) throw std::invalid_argument("special_path: l must be 17 or 37");
    if (l == 37 && d % 12 != 0) throw std::invalid_argument("special_path: l=37 needs 12 | d");
    if (l == 17 && d % 8 != 0) throw std::invalid_argument("special_path: l=17 needs 8 | d");

    Rat jneed = (l == 37) ? Rat(Int(-7) * 11 * 11 * 11)
                          : Rat(Int(-17) * 373 * 373 * 373, Int(1) << 17);
    if (e.j() != jneed) return std::nullopt;

    // Reference model y^2 = f(x) and the polynomial g cutting out the
    // x-coordinate field of a point of order l.
    ZPoly f = (l == 37) ? ZPoly{Int(16450), Int(-1155), Int(0), Int(1)}
                        : ZPoly{Int(-12657350), Int(-95115), Int(0), Int(1)};
    QPoly g = (l == 37) ? QPoly::from_ints({-408849875, -16133250, 4251975, 125300, -8085, -210, 1})
                        : QPoly::from_ints({-237673175, -5560700, 510, 340, 1});
    Int A0 = f[1], B0 = f[0];

    // Quadratic twist scalar between the reference model and ours.
    ShortModel sm = ShortModel::of(e);
    Rat lam = (Rat(sm.B) * A0) / (Rat(sm.A) * B0);
    if (lam * lam * A0 != Rat(sm.A) || lam * lam * lam * B0 != Rat(sm.B))
        throw std::runtime_error("special_path: twist mismatch");

    auto [K0, alpha] = nf_create_with_root(g, true);
    NFElement falpha = alpha * alpha * alpha + alpha * Rat(A0) + K0->from_rational(Rat(B0));
    NFElement w = falpha * lam;

    NFPtr F;
    NFElement X, Y;
    if (auto s = nf_sqrt(w)) {
        F = K0;
        X = alpha * lam;
        Y = *s * lam;
    } else {
        NFPoly quad(K0, {-w, K0->zero(), K0->one()});
        NFExtension ext = nf_extend(K0, quad);
        F = ext.field;
        X = nf_embed(alpha, ext.alpha) * lam;
        Y = ext.beta * lam;
    }
    if (d % F->degree() != 0) return std::nullopt;

    CurveQ es = short_curve(e);
    CurveNF c = CurveNF::base_change(es, F);
    PointNF P{false, X, Y};
    if (!c.on_curve(P)) throw std::runtime_error("special_path: point not on curve");
    if (c.order(P, l + 1) != l) throw std::runtime_error("special_path: wrong point order");

    GrowthTriple t;
    t.field = F;
    t.group = TorsionStructure{1, static_cast<int>(l)};
    t.gens = {P};
    t.primes = {l};
    return t;
}

// --------------------------------------------------------------- Algorithm 2

namespace {

struct WorkTriple {
    GrowthTriple t;
    std::set<std::string> done;  // processed (level, input) keys
};

}  // namespace

std::vector<GrowthTriple> algorithm2_ell_growth(const CurveQ& E, long l, int d) {
    NFPtr Q = NumberField::rationals();
    if (l == 17 || l == 37) {
        std::vector<GrowthTriple> out;
        out.push_back(GrowthTriple{Q, TorsionStructure{1, 1}, {}, {l}});
        int need = (l == 17) ? 8 : 12;
        if (d % need == 0)
            if (auto t = special_path(E, l, d)) out.push_back(std::move(*t));
        return out;
    }

    CurveQ es = short_curve(E);
    ShortModel sm{es.a4, es.a6};
    DivisionPolys dp(sm);

    // Rational seed: the l-primary part of E(Q)_tors, on the short model.
    TorsionQ tq = torsion_over_Q(es);
    long nl = lpart(tq.group.n, l), ml = lpart(tq.group.m, l);
    CurveNF cQ = CurveNF::base_change(es, Q);
    std::vector<PointNF> seed_gens;
    if (nl > 1) seed_gens.push_back(cQ.mul(tq.group.n / nl, tq.gens[0]));
    if (ml > 1) seed_gens.push_back(cQ.mul(tq.group.m / ml, tq.gens[1]));

    std::vector<WorkTriple> W;
    W.push_back(WorkTriple{
        GrowthTriple{Q, TorsionStructure{static_cast<int>(ml), static_cast<int>(nl)}, seed_gens,
                     {l}},
        {}});

    // Rational factors of the primitive l-division polynomial of degree <= d
    // (any factor relevant over any qualifying field has degree <= d).
    std::vector<QPoly> smallQ1;
    bool smallQ1_done = false;
    auto rational_level1 = [&]() -> const std::vector<QPoly>& {
        if (!smallQ1_done) {
            smallQ1 = small_factors(
                to_qpoly(dp.primitive_division_poly(static_cast<unsigned>(l), 1)), d);
            smallQ1_done = true;
        }
        return smallQ1;
    };

    // Adds the point cut out by the factor h of the level-j preimage
    // polynomial over W[wi].field, with l*P = R.  Returns true on any merge
    // or new triple.
    auto handle_factor = [&](std::size_t wi, const NFPoly& h, const PointNF& R, int j,
                             std::vector<WorkTriple>& fresh) -> bool {
        NFPtr K = W[wi].t.field;
        int dk = K->degree();
        int eh = h.degree();
        long D1 = static_cast<long>(eh) * dk;
        bool q1 = D1 <= d && d % D1 == 0;
        bool q2 = 2 * D1 <= d && d % (2 * D1) == 0;
        if (!q1 && !q2) return false;

        NFExtension ext = nf_extend(K, h);
        NFPtr M = ext.field;
        NFElement x0 = ext.beta;
        NFElement embK = ext.alpha;  // image of K's generator in M (then in F)
        NFElement fx0 =
            x0 * x0 * x0 + x0 * Rat(sm.A) + M->from_rational(Rat(sm.B));

        NFPtr F;
        NFElement X, Y;
        if (auto s = nf_sqrt(fx0)) {
            if (!q1) return false;  // M itself has degree not dividing d
            F = M;
            X = x0;
            Y = *s;
        } else {
            if (!q2) return false;
            NFPoly quad(M, {-fx0, M->zero(), M->one()});
            NFExtension e2 = nf_extend(M, quad);
            F = e2.field;
            X = nf_embed(x0, e2.alpha);
            Y = e2.beta;
            embK = nf_embed(embK, e2.alpha);
        }

        CurveNF cF = CurveNF::base_change(es, F);
        PointNF P{false, X, Y};
        PointNF RF = embed_point(cF, R, embK);
        PointNF lP = cF.mul(l, P);
        if (!cF.eq(lP, RF)) {
            if (cF.eq(lP, cF.neg(RF)))
                P = cF.neg(P);
            else
                throw std::runtime_error("algorithm2: preimage verification failed");
        }
        long ordP = ipow(l, j);
        if (cF.order(P, ordP + 1) != ordP)
            throw std::runtime_error("algorithm2: unexpected point order");

        // New group: span of the embedded old generators plus P.
        std::vector<PointNF> gens;
        std::vector<long> orders;
        const GrowthTriple& told = W[wi].t;
        if (told.group.n > 1) {
            gens.push_back(embed_point(cF, told.gens[0], embK));
            orders.push_back(told.group.n);
        }
        if (told.group.m > 1) {
            gens.push_back(embed_point(cF, told.gens[1], embK));
            orders.push_back(told.group.m);
        }
        gens.push_back(P);
        orders.push_back(ordP);
        auto [ts2, gens2] = group_structure(cF, span_points(cF, gens, orders));

        if (F == K) {
            if (ts2.order() > W[wi].t.group.order()) {
                W[wi].t.group = ts2;
                W[wi].t.gens = gens2;
                return true;
            }
            return false;
        }
        auto same = [&](const WorkTriple& w) {
            return w.t.field->degree() == F->degree() && w.t.group == ts2 &&
                   nf_is_isomorphic(w.t.field, F);
        };
        for (const auto& w : W)
            if (same(w)) return false;
        for (const auto& w : fresh)
            if (same(w)) return false;
        fresh.push_back(WorkTriple{GrowthTriple{F, ts2, gens2, {l}}, {}});
        return true;
    };

    // Process triple wi at level j: find points of order l^j over extensions
    // of its field.  Memoized per (triple, level, input).
    auto process = [&](std::size_t wi, int j) -> bool {
        bool changed = false;
        std::vector<WorkTriple> fresh;
        NFPtr K = W[wi].t.field;
        int dk = K->degree();

        auto degree_possible = [&](int max_eh) {
            for (int eh = 1; eh <= max_eh; ++eh) {
                long D1 = static_cast<long>(eh) * dk;
                if ((D1 <= d && d % D1 == 0) || (2 * D1 <= d && d % (2 * D1) == 0)) return true;
            }
            return false;
        };

        if (j == 1) {
            for (const QPoly& g : rational_level1()) {
                int dg = g.degree();
                bool possible = false;
                for (int eh = (dg + dk - 1) / dk; eh <= dg && !possible; ++eh) {
                    long D1 = static_cast<long>(eh) * dk;
                    if ((D1 <= d && d % D1 == 0) || (2 * D1 <= d && d % (2 * D1) == 0))
                        possible = true;
                }
                if (!possible) continue;
                std::string key = "L1:" + qpoly_key(g);
                if (W[wi].done.count(key)) continue;
                W[wi].done.insert(key);
                if (dk == 1) {
                    if (handle_factor(wi, NFPoly::from_q(K, g), cQ.zero(), 1, fresh))
                        changed = true;
                } else {
                    auto fac = factor_over_nf(NFPoly::from_q(K, g));
                    for (const auto& fa : fac.factors)
                        if (handle_factor(wi, fa.poly, PointNF{}, 1, fresh)) changed = true;
                }
            }
        } else {
            long sub_ord = ipow(l, j - 1);
            if (W[wi].t.group.n < sub_ord) return false;
            if (!degree_possible(static_cast<int>(l * l))) return false;
            CurveNF cK = CurveNF::base_change(es, K);
            auto elements = triple_span(cK, W[wi].t);
            std::set<std::string> seen_sub;
            for (const auto& R : elements) {
                if (cK.order(R, sub_ord + 1) != sub_ord) continue;
                // canonical key of the cyclic subgroup <R>
                std::vector<std::string> keys;
                PointNF q = cK.zero();
                for (long a = 0; a < sub_ord; ++a) {
                    keys.push_back(point_key(q));
                    q = cK.add(q, R);
                }
                std::sort(keys.begin(), keys.end());
                std::string subkey;
                for (auto& s : keys) subkey += s + "|";
                if (seen_sub.count(subkey)) continue;
                seen_sub.insert(subkey);
                std::string key = "L" + std::to_string(j) + ":" + subkey;
                if (W[wi].done.count(key)) continue;
                W[wi].done.insert(key);
                // preimage polynomial phi_l - x(R) psi_l^2 over K
                NFPoly pR =
                    NFPoly::from_q(K, to_qpoly(dp.phi(static_cast<unsigned>(l)))) -
                    NFPoly::from_q(K, to_qpoly(dp.psi_sq(static_cast<unsigned>(l)))) * R.x;
                auto fac = factor_over_nf(pR);
                for (const auto& fa : fac.factors)
                    if (handle_factor(wi, fa.poly, R, j, fresh)) changed = true;
            }
        }
        for (auto& f : fresh) W.push_back(std::move(f));
        return changed;
    };

    // Cap on the level only; real termination comes from the guards, the
    // modular degree filter, and the empty-level break below.
    int kmax = level_cap(l, d);

    for (int k = 1; k <= kmax; ++k) {
        if (k >= 2 && !(guard_allows(l, k, d) && modp_degree_filter(E, l, k, d))) break;
        bool change = true;
        while (change) {
            change = false;
            for (std::size_t wi = 0; wi < W.size(); ++wi)
                for (int j = 1; j <= k; ++j)
                    if (process(wi, j)) change = true;
        }
        long need = ipow(l, k);
        bool has = false;
        for (const auto& w : W)
            if (w.t.group.n >= need) has = true;
        if (!has) break;
    }

    std::vector<GrowthTriple> out;
    for (auto& w : W) out.push_back(std::move(w.t));
    return out;
}

// --------------------------------------------------------------- Algorithm 3

std::vector<GrowthTriple> algorithm3_combine(const std::vector<GrowthTriple>& per_prime, int d,
                                             const CurveQ& E) {
    CurveQ es = short_curve(E);
    std::vector<GrowthTriple> work = per_prime;
    std::set<std::pair<std::size_t, std::size_t>> tried;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < work.size(); ++i) {
            for (std::size_t jj = i + 1; jj < work.size(); ++jj) {
                if (tried.count({i, jj})) continue;
                tried.insert({i, jj});
                GrowthTriple a = work[i], b = work[jj];  // copies: work may grow
                if (a.field->degree() < 2 || b.field->degree() < 2) continue;
                bool disjoint = true;
                for (long p : a.primes)
                    if (b.primes.count(p)) disjoint = false;
                if (!disjoint) continue;
                // Composita contained in one of the two fields add no new
                // candidate (the torsion over an existing field is assembled
                // from its subfield triples); only look for proper composita
                // of degree dividing d.
                int da = a.field->degree(), db = b.field->degree();
                int lcm = da / std::__gcd(da, db) * db;
                bool feasible = false;
                for (int D = lcm; D <= da * db; D += lcm)
                    if (D > std::max(da, db) && d % D == 0) feasible = true;
                if (!feasible) continue;
                for (const auto& ext : nf_composita(a.field, b.field)) {
                    int dc = ext.field->degree();
                    if (d % dc != 0 || dc <= std::max(da, db)) continue;
                    CurveNF cF = CurveNF::base_change(es, ext.field);
                    // generator transfer with verification
                    std::vector<PointNF> gens;
                    std::vector<long> orders;
                    bool ok = true;
                    auto push_gens = [&](const GrowthTriple& t, const NFElement& img) {
                        std::vector<long> ords;
                        if (t.group.n > 1) ords.push_back(t.group.n);
                        if (t.group.m > 1) ords.push_back(t.group.m);
                        for (std::size_t gi = 0; gi < ords.size(); ++gi) {
                            PointNF p = embed_point(cF, t.gens[gi], img);
                            if (!cF.on_curve(p) || cF.order(p, ords[gi] + 1) != ords[gi]) {
                                ok = false;
                                return;
                            }
                            gens.push_back(p);
                            orders.push_back(ords[gi]);
                        }
                    };
                    push_gens(a, ext.alpha);
                    push_gens(b, ext.beta);
                    if (!ok) continue;
                    auto [ts, gg] = group_structure(cF, span_points(cF, gens, orders));
                    std::set<long> tags = a.primes;
                    tags.insert(b.primes.begin(), b.primes.end());
                    bool dup = false;
                    for (const auto& w : work)
                        if (w.primes == tags && w.group == ts &&
                            w.field->degree() == ext.field->degree() &&
                            nf_is_isomorphic(w.field, ext.field)) {
                            dup = true;
                            break;
                        }
                    if (dup) continue;
                    work.push_back(GrowthTriple{ext.field, ts, gg, tags});
                    changed = true;
                }
            }
        }
    }
    return work;
}

// ---------------------------------------------------- direct l-primary group

namespace {

/// E(K)[l^infinity] computed directly from division polynomials: for
/// k = 1, 2, ... find all K-rational points of exact order l^k and stop at
/// the first empty level.  maxdeg bounds the rational factor degrees kept.
TorsionStructure lprimary_direct(const CurveQ& es, DivisionPolys& dp, const NFPtr& K, long l,
                                 int kcap, int maxdeg,
                                 std::map<std::pair<long, int>, std::vector<QPoly>>& cache) {
    CurveNF c = CurveNF::base_change(es, K);
    std::vector<PointNF> pts{c.zero()};
    for (int k = 1; k <= kcap; ++k) {
        auto key = std::make_pair(l, k);
        if (!cache.count(key))
            cache[key] = small_factors(
                to_qpoly(dp.primitive_division_poly(static_cast<unsigned>(l),
                                                    static_cast<unsigned>(k))),
                maxdeg);
        bool found = false;
        for (const auto& g : cache[key]) {
            if (K->degree() % g.degree() != 0) continue;
            for (const auto& x0 : roots_in_nf(NFPoly::from_q(K, g)))
                for (const auto& p : c.lift_x(x0)) {
                    pts.push_back(p);
                    found = true;
                }
        }
        if (!found) break;
    }
    return group_structure(c, pts).first;
}

}  // namespace

// ------------------------------------------------------------ TorsionGrowth

GrowthReport torsion_growth(const CurveQ& E, int d) {
    if (d < 1 || d > 23) throw std::invalid_argument("torsion_growth: d out of range");
    E.validate();
    CurveQ es = short_curve(E);
    TorsionQ tq = torsion_over_Q(es);
    if (d == 1) return {GrowthEntry{NumberField::rationals(), tq.group, {}}};

    PruneTable table = PruneTable::builtin();
    std::vector<long> primes = algorithm1_prime_set(E, d, table);
    if (primes.empty()) return {};

    std::map<long, std::vector<GrowthTriple>> by_prime;
    std::vector<GrowthTriple> all;
    for (long l : primes) {
        by_prime[l] = algorithm2_ell_growth(E, l, d);
        for (const auto& t : by_prime[l]) all.push_back(t);
    }
    std::vector<GrowthTriple> combined = algorithm3_combine(all, d, E);

    // Candidate fields: dedup by isomorphism keeping the smallest min poly.
    std::vector<NFPtr> cands;
    for (const auto& t : combined) {
        if (t.field->degree() < 2) continue;
        bool merged = false;
        for (auto& c : cands) {
            if (c->degree() != t.field->degree() || !nf_is_isomorphic(c, t.field)) continue;
            if (zpoly_less(t.field->min_poly(), c->min_poly())) c = t.field;
            merged = true;
            break;
        }
        if (!merged) cands.push_back(t.field);
    }
    std::sort(cands.begin(), cands.end(), [](const NFPtr& a, const NFPtr& b) {
        return zpoly_less(a->min_poly(), b->min_poly());
    });

    // Full torsion over each candidate: per prime, the dominating triple over
    // a subfield gives the l-primary part.
    DivisionPolys dp(ShortModel{es.a4, es.a6});
    std::map<std::pair<long, int>, std::vector<QPoly>> fallback_cache;
    struct Eval {
        NFPtr field;
        TorsionStructure group;
        std::vector<long> growth_primes;
        std::map<long, TorsionStructure> per_l;
    };
    auto lpart_of = [&](const NFPtr& K, long l) -> TorsionStructure {
        TorsionStructure best{1, 1};
        bool have = false;
        std::vector<TorsionStructure> applicable;
        for (const auto& t : by_prime[l]) {
            if (K->degree() % t.field->degree() != 0) continue;
            if (t.field->degree() > 1 && !nf_is_subfield(t.field, K)) continue;
            applicable.push_back(t.group);
            if (!have || t.group.order() > best.order() ||
                (t.group.order() == best.order() && t.group.n > best.n)) {
                best = t.group;
                have = true;
            }
        }
        for (const auto& g : applicable)
            if (g.m > best.m || g.n > best.n) {
                // partial saturation: fall back to a direct computation
                return lprimary_direct(es, dp, K, l, level_cap(l, d), d, fallback_cache);
            }
        return best;
    };

    std::vector<Eval> evals;
    for (const auto& K : cands) {
        Eval ev;
        ev.field = K;
        ev.group = TorsionStructure{1, 1};
        for (long l : primes) {
            TorsionStructure tl = lpart_of(K, l);
            ev.per_l[l] = tl;
            ev.group.m *= tl.m;
            ev.group.n *= tl.n;
            long rat = lpart(tq.group.order(), l);
            if (tl.order() > rat) ev.growth_primes.push_back(l);
        }
        evals.push_back(std::move(ev));
    }

    GrowthReport report;
    for (const auto& ev : evals) {
        if (ev.growth_primes.empty()) continue;  // no growth at all
        bool primitive = true;
        for (const auto& other : evals) {
            if (other.field->degree() >= ev.field->degree()) continue;
            if (ev.field->degree() % other.field->degree() != 0) continue;
            if (!nf_is_subfield(other.field, ev.field)) continue;
            if (other.group == ev.group) {
                primitive = false;
                break;
            }
        }
        if (primitive) report.push_back(GrowthEntry{ev.field, ev.group, ev.growth_primes});
    }
    std::sort(report.begin(), report.end(), [](const GrowthEntry& a, const GrowthEntry& b) {
        if (a.field->degree() != b.field->degree()) return a.field->degree() < b.field->degree();
        if (a.group.order() != b.group.order()) return a.group.order() < b.group.order();
        return zpoly_less(a.field->min_poly(), b.field->min_poly());
    });
    return report;
}

// -------------------------------------------------------------- naive oracle

GrowthReport naive_oracle(const CurveQ& E, int d, int prime_power_cap) {
    if (prime_power_cap > 64) throw std::invalid_argument("naive_oracle: cap exceeded");
    if (d < 1 || d > 4) throw std::invalid_argument("naive_oracle: d out of range");
    E.validate();
    CurveQ es = short_curve(E);
    TorsionQ tq = torsion_over_Q(es);
    if (d == 1) return {GrowthEntry{NumberField::rationals(), tq.group, {}}};

    DivisionPolys dp(ShortModel{es.a4, es.a6});
    // Full rational factorizations of all primitive prime-power division
    // polynomials up to the cap.
    std::vector<long> ls;
    for (long l = 2; l <= prime_power_cap; ++l) {
        bool prime = l >= 2;
        for (long q = 2; q * q <= l; ++q)
            if (l % q == 0) prime = false;
        if (prime) ls.push_back(l);
    }
    std::map<std::pair<long, int>, Factorization> fac;
    for (long l : ls)
        for (int k = 1; ipow(l, k) <= prime_power_cap; ++k)
            fac[{l, k}] = factor_over_Q(to_qpoly(
                dp.primitive_division_poly(static_cast<unsigned>(l), static_cast<unsigned>(k))));

    // Candidate fields from qualifying factors (plus y-extensions).
    std::vector<NFPtr> cands;
    auto add_cand = [&](const NFPtr& K) {
        if (K->degree() < 2 || d % K->degree() != 0) return;
        for (auto& c : cands) {
            if (c->degree() != K->degree() || !nf_is_isomorphic(c, K)) continue;
            if (zpoly_less(K->min_poly(), c->min_poly())) c = K;
            return;
        }
        cands.push_back(K);
    };
    for (const auto& [key, f] : fac) {
        for (const auto& fa : f.factors) {
            int e = fa.poly.degree();
            if (d % e != 0) continue;  // 2e | d implies e | d as well
            auto [K, x0] = nf_create_with_root(fa.poly, true);
            add_cand(K);
            if (2 * e <= d && d % (2 * e) == 0) {
                NFElement v = x0 * x0 * x0 + x0 * Rat(es.a4) + K->from_rational(Rat(es.a6));
                if (!nf_sqrt(v)) {
                    NFPoly quad(K, {-v, K->zero(), K->one()});
                    add_cand(nf_extend(K, quad).field);
                }
            }
        }
    }
    // Pairwise composita (relevant for composite d <= 4).
    {
        std::vector<NFPtr> base = cands;
        for (std::size_t i = 0; i < base.size(); ++i)
            for (std::size_t j = i + 1; j < base.size(); ++j)
                for (const auto& ext : nf_composita(base[i], base[j])) add_cand(ext.field);
    }
    std::sort(cands.begin(), cands.end(), [](const NFPtr& a, const NFPtr& b) {
        return zpoly_less(a->min_poly(), b->min_poly());
    });

    // Torsion over each candidate, prime by prime.
    auto lprimary = [&](const NFPtr& K, long l) -> TorsionStructure {
        CurveNF c = CurveNF::base_change(es, K);
        std::vector<PointNF> pts{c.zero()};
        for (int k = 1; ipow(l, k) <= prime_power_cap; ++k) {
            bool found = false;
            for (const auto& fa : fac[{l, k}].factors) {
                if (K->degree() % fa.poly.degree() != 0) continue;
                for (const auto& x0 : roots_in_nf(NFPoly::from_q(K, fa.poly)))
                    for (const auto& p : c.lift_x(x0)) {
                        pts.push_back(p);
                        found = true;
                    }
            }
            if (!found) break;
        }
        return group_structure(c, pts).first;
    };

    struct Eval {
        NFPtr field;
        TorsionStructure group;
        std::vector<long> growth_primes;
    };
    std::vector<Eval> evals;
    for (const auto& K : cands) {
        Eval ev;
        ev.field = K;
        ev.group = TorsionStructure{1, 1};
        for (long l : ls) {
            TorsionStructure tl = lprimary(K, l);
            ev.group.m *= tl.m;
            ev.group.n *= tl.n;
            if (tl.order() > lpart(tq.group.order(), l)) ev.growth_primes.push_back(l);
        }
        evals.push_back(std::move(ev));
    }

    GrowthReport report;
    for (const auto& ev : evals) {
        if (ev.growth_primes.empty()) continue;
        bool primitive = true;
        for (const auto& other : evals) {
            if (other.field->degree() >= ev.field->degree()) continue;
            if (ev.field->degree() % other.field->degree() != 0) continue;
            if (!nf_is_subfield(other.field, ev.field)) continue;
            if (other.group == ev.group) {
                primitive = false;
                break;
            }
        }
        if (primitive) report.push_back(GrowthEntry{ev.field, ev.group, ev.growth_primes});
    }
    std::sort(report.begin(), report.end(), [](const GrowthEntry& a, const GrowthEntry& b) {
        if (a.field->degree() != b.field->degree()) return a.field->degree() < b.field->degree();
        if (a.group.order() != b.group.order()) return a.group.order() < b.group.order();
        return zpoly_less(a.field->min_poly(), b.field->min_poly());
    });
    return report;
}

}  // namespace tg

#include "tg/numberfield.hpp"

#include "tg/fppoly.hpp"

#include <algorithm>

namespace tg {

// ----- NFElement -----

NFElement::NFElement(NFPtr parent, std::vector<Rat> coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
    std::size_t n = static_cast<std::size_t>(parent_->degree());
    if (coords_.size() > n) {
        QPoly r = QPoly(coords_).divrem(parent_->min_poly_q()).second;
        coords_ = r.coeffs();
    }
    coords_.resize(n, Rat(0));
}

bool NFElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool NFElement::is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rat NFElement::rational_value() const {
    if (!is_rational()) throw std::runtime_error("element is not rational");
    return coords_.empty() ? Rat(0) : coords_[0];
}

NFElement NFElement::operator-() const {
    std::vector<Rat> c = coords_;
    for (auto& a : c) a = -a;
    return NFElement(parent_, std::move(c));
}

NFElement NFElement::operator+(const NFElement& o) const {
    std::vector<Rat> c = coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return NFElement(parent_, std::move(c));
}

NFElement NFElement::operator-(const NFElement& o) const { return *this + (-o); }

NFElement NFElement::operator*(const NFElement& o) const {
    QPoly prod = as_poly() * o.as_poly();
    QPoly r = prod.divrem(parent_->min_poly_q()).second;
    return NFElement(parent_, r.coeffs());
}

NFElement NFElement::operator*(const Rat& s) const {
    std::vector<Rat> c = coords_;
    for (auto& a : c) a *= s;
    return NFElement(parent_, std::move(c));
}

NFElement NFElement::inverse() const {
    if (is_zero()) throw std::runtime_error("inverse of zero field element");
    // extended Euclid: s*a + t*m = gcd (a constant since m is irreducible)
    QPoly a = as_poly(), m = parent_->min_poly_q();
    QPoly r0 = m, r1 = a;
    QPoly t0, t1 = QPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        QPoly t2 = t0 - q * t1;
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw std::runtime_error("minimal polynomial not irreducible");
    QPoly inv = t0 * (Rat(1) / r0[0]);
    QPoly red = inv.divrem(m).second;
    return NFElement(parent_, red.coeffs());
}

bool NFElement::operator==(const NFElement& o) const { return coords_ == o.coords_; }

// ----- NumberField -----

namespace {

// Monicize a primitive integral polynomial: the minimal polynomial of l*root
// is l^(n-1) f(x/l).  Returns the monic poly and the scale l.
std::pair<ZPoly, Int> monicize(const ZPoly& f) {
    const Int& l = f.back();
    int n = zdeg(f);
    ZPoly out(f.size());
    out[static_cast<std::size_t>(n)] = 1;
    Int pw(1);
    for (int i = n - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)] * pw;
        pw *= l;
    }
    return {out, l};
}

}  // namespace

NFPtr NumberField::create(const QPoly& f, bool assume_irreducible) {
    if (f.degree() < 1) throw std::invalid_argument("number field needs degree >= 1");
    if (!assume_irreducible && !is_irreducible_over_Q(f))
        throw std::invalid_argument("defining polynomial is reducible");
    ZPoly z = to_primitive_z(f);
    auto [m, l] = monicize(z);
    (void)l;
    return NFPtr(new NumberField(std::move(m)));
}

NFPtr NumberField::rationals() {
    static NFPtr q = NFPtr(new NumberField(ZPoly{Int(0), Int(1)}));
    return q;
}

NFElement NumberField::zero() const {
    return NFElement(shared_from_this(), std::vector<Rat>(static_cast<std::size_t>(degree())));
}

NFElement NumberField::one() const { return from_rational(Rat(1)); }

NFElement NumberField::gen() const {
    std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
    if (degree() == 1) {
        // generator is the root of the degree-1 minimal polynomial
        c[0] = Rat(-min_poly_[0]);
    } else {
        c[1] = 1;
    }
    return NFElement(shared_from_this(), std::move(c));
}

NFElement NumberField::from_rational(const Rat& a) const {
    std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
    c[0] = a;
    return NFElement(shared_from_this(), std::move(c));
}

NFElement NumberField::element(std::vector<Rat> coords) const {
    return NFElement(shared_from_this(), std::move(coords));
}

NFWithRoot nf_create_with_root(const QPoly& f, bool assume_irreducible) {
    if (f.degree() < 1) throw std::invalid_argument("number field needs degree >= 1");
    if (!assume_irreducible && !is_irreducible_over_Q(f))
        throw std::invalid_argument("defining polynomial is reducible");
    ZPoly z = to_primitive_z(f);
    auto [m, l] = monicize(z);
    NFPtr K(new NumberField(std::move(m)));
    // root of f is gen/l
    NFElement root = K->gen() * Rat(Int(1), l);
    return {K, root};
}

// ----- NFPoly -----

NFPoly::NFPoly(NFPtr parent, std::vector<NFElement> coeffs)
    : parent_(std::move(parent)), c_(std::move(coeffs)) {
    trim();
}

void NFPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

NFPoly NFPoly::from_q(const NFPtr& parent, const QPoly& f) {
    std::vector<NFElement> c;
    for (const auto& a : f.coeffs()) c.push_back(parent->from_rational(a));
    return NFPoly(parent, std::move(c));
}

NFElement NFPoly::operator[](std::size_t i) const {
    if (i < c_.size()) return c_[i];
    return parent_->zero();
}

const NFElement& NFPoly::lead() const {
    if (c_.empty()) throw std::invalid_argument("lead of zero polynomial");
    return c_.back();
}

NFElement NFPoly::eval(const NFElement& a) const {
    NFElement r = parent_->zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * a + *it;
    return r;
}

NFPoly NFPoly::operator-() const {
    NFPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
}

NFPoly NFPoly::operator+(const NFPoly& o) const {
    std::vector<NFElement> c(std::max(c_.size(), o.c_.size()), parent_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
    return NFPoly(parent_, std::move(c));
}

NFPoly NFPoly::operator-(const NFPoly& o) const { return *this + (-o); }

NFPoly NFPoly::operator*(const NFPoly& o) const {
    if (is_zero() || o.is_zero()) return NFPoly(parent_);
    std::vector<NFElement> c(c_.size() + o.c_.size() - 1, parent_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
    }
    return NFPoly(parent_, std::move(c));
}

NFPoly NFPoly::operator*(const NFElement& s) const {
    NFPoly r = *this;
    for (auto& a : r.c_) a = a * s;
    r.trim();
    return r;
}

bool NFPoly::operator==(const NFPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

std::pair<NFPoly, NFPoly> NFPoly::divrem(const NFPoly& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (degree() < o.degree()) return {NFPoly(parent_), *this};
    std::vector<NFElement> rem = c_;
    std::vector<NFElement> quot(static_cast<std::size_t>(degree() - o.degree() + 1),
                                parent_->zero());
    NFElement linv = o.lead().inverse();
    for (int i = degree(); i >= o.degree(); --i) {
        NFElement q = rem[static_cast<std::size_t>(i)] * linv;
        if (q.is_zero()) continue;
        quot[static_cast<std::size_t>(i - o.degree())] = q;
        for (int j = 0; j <= o.degree(); ++j) {
            auto& r = rem[static_cast<std::size_t>(i - o.degree() + j)];
            r = r - q * o.c_[static_cast<std::size_t>(j)];
        }
    }
    return {NFPoly(parent_, std::move(quot)), NFPoly(parent_, std::move(rem))};
}

NFPoly NFPoly::div_exact(const NFPoly& o) const {
    auto [q, r] = divrem(o);
    if (!r.is_zero()) throw std::runtime_error("non-exact division in K[x]");
    return q;
}

NFPoly NFPoly::derivative() const {
    if (c_.size() <= 1) return NFPoly(parent_);
    std::vector<NFElement> c(c_.size() - 1, parent_->zero());
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return NFPoly(parent_, std::move(c));
}

NFPoly NFPoly::monic() const {
    if (is_zero()) return *this;
    return *this * lead().inverse();
}

NFPoly nf_poly_gcd(NFPoly a, NFPoly b) {
    while (!b.is_zero()) {
        NFPoly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) b = b.monic();  // keep coefficients under control
    }
    return a.monic();
}

// ----- Trager factorization -----

namespace {

bool nfelem_less(const NFElement& a, const NFElement& b) { return a.coords() < b.coords(); }

bool nfpoly_less(const NFPoly& a, const NFPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const auto& ca = a[static_cast<std::size_t>(i)];
        const auto& cb = b[static_cast<std::size_t>(i)];
        if (!(ca == cb)) return nfelem_less(ca, cb);
    }
    return false;
}

// Norm of g(x - s*alpha): Res_z(m(z), G(x, z)) where alpha -> z,
// computed by evaluation at deg+1 points and interpolation.
QPoly trager_norm(const NFPoly& g, long s) {
    const NFPtr& K = g.parent();
    QPoly m = K->min_poly_q();
    int n = K->degree();
    int d = g.degree();
    int N = n * d;
    std::vector<Rat> xs, ys;
    for (long x0 = 0; static_cast<int>(xs.size()) <= N; ++x0) {
        // G(x0, z) = sum_i c_i(z) * (x0 - s z)^i
        QPoly lin(std::vector<Rat>{Rat(x0), Rat(-s)});
        QPoly G;
        for (int i = d; i >= 0; --i)
            G = G * lin + g[static_cast<std::size_t>(i)].as_poly();
        xs.emplace_back(x0);
        ys.push_back(poly_resultant(m, G));
    }
    return interpolate(xs, ys);
}

// Squarefree test with a modular certificate: squarefree mod p with the
// degree preserved implies squarefree over Q.  Callers use this inside
// generator searches where a (cosmically unlikely) false negative only means
// trying the next candidate, so no exact fallback is needed.
bool is_squarefree_q(const QPoly& f) {
    if (f.degree() <= 1) return true;
    ZPoly z = to_primitive_z(f);
    int tried = 0;
    for (std::uint64_t p = 101; tried < 10 && p < 20000; p += 2) {
        if (!is_probable_prime(Int(static_cast<unsigned long>(p)))) continue;
        FpPoly fp = FpPoly::from_z(z, p);
        if (fp.degree() != zdeg(z)) continue;
        ++tried;
        if (fp_gcd(fp, fp.derivative()).degree() == 0) return true;
    }
    return false;
}

// Factor a monic squarefree polynomial over K into monic irreducibles.
std::vector<NFPoly> trager_squarefree(const NFPoly& g) {
    const NFPtr& K = g.parent();
    if (g.degree() == 1) return {g};
    if (K->degree() == 1) {
        // base field is rational: delegate
        std::vector<Rat> qc;
        for (const auto& c : g.coeffs()) qc.push_back(c.rational_value());
        auto fac = factor_over_Q(QPoly(std::move(qc)));
        std::vector<NFPoly> out;
        for (auto& fa : fac.factors) out.push_back(NFPoly::from_q(K, fa.poly));
        return out;
    }
    for (long k = 0;; ++k) {
        long s = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
        if (k > 200) throw std::runtime_error("factor_over_nf: no squarefree norm found");
        QPoly N = trager_norm(g, s);
        if (N.degree() != K->degree() * g.degree()) continue;
        if (!is_squarefree_q(N)) continue;
        auto fac = factor_over_Q(N);
        std::vector<NFPoly> out;
        if (fac.factors.size() == 1) {
            out.push_back(g);
            return out;
        }
        // g_i = gcd_K(g, n_i(x + s*alpha))
        NFElement alpha = K->gen();
        NFPoly xs(K, {alpha * Rat(s), K->one()});  // x + s*alpha
        for (auto& fa : fac.factors) {
            NFPoly sh(K);
            for (int i = fa.poly.degree(); i >= 0; --i)
                sh = sh * xs + NFPoly::from_q(K, QPoly::constant(fa.poly[static_cast<std::size_t>(i)]));
            NFPoly gi = nf_poly_gcd(g, sh);
            if (gi.degree() >= 1) out.push_back(gi.monic());
        }
        int degsum = 0;
        for (auto& p : out) degsum += p.degree();
        if (degsum != g.degree()) throw std::runtime_error("factor_over_nf: inconsistent factors");
        return out;
    }
}

}  // namespace

NFFactorization factor_over_nf(const NFPoly& f) {
    const NFPtr& K = f.parent();
    NFFactorization out;
    if (f.is_zero()) {
        out.content = K->zero();
        return out;
    }
    out.content = f.lead();
    if (f.degree() == 0) return out;
    NFPoly g = f.monic();

    // Yun squarefree decomposition over K.
    std::vector<std::pair<NFPoly, int>> sq;
    {
        NFPoly df = g.derivative();
        NFPoly u = nf_poly_gcd(g, df);
        NFPoly vv = g.div_exact(u);
        NFPoly w = df.div_exact(u);
        int i = 1;
        while (vv.degree() > 0) {
            NFPoly d = w - vv.derivative();
            NFPoly h = nf_poly_gcd(vv, d);
            if (h.degree() > 0) sq.push_back({h, i});
            vv = vv.div_exact(h);
            w = d.div_exact(h);
            ++i;
        }
    }
    for (auto& [part, mult] : sq)
        for (auto& irr : trager_squarefree(part)) out.factors.push_back({irr, mult});
    std::sort(out.factors.begin(), out.factors.end(),
              [](const NFFactor& a, const NFFactor& b) { return nfpoly_less(a.poly, b.poly); });
    return out;
}

std::vector<NFElement> roots_in_nf(const NFPoly& f) {
    auto fac = factor_over_nf(f);
    std::vector<NFElement> roots;
    for (auto& fa : fac.factors)
        if (fa.poly.degree() == 1) roots.push_back(-fa.poly[0]);
    std::sort(roots.begin(), roots.end(), nfelem_less);
    return roots;
}

std::optional<NFElement> nf_sqrt(const NFElement& a) {
    const NFPtr& K = a.parent();
    if (a.is_zero()) return a;
    NFPoly f(K, {-a, K->zero(), K->one()});  // x^2 - a
    auto roots = roots_in_nf(f);
    if (roots.empty()) return std::nullopt;
    NFElement r = roots.front();
    for (const auto& c : r.coords()) {
        if (c == 0) continue;
        if (c < 0) r = -r;
        break;
    }
    return r;
}

NFElement nf_embed(const NFElement& x, const NFElement& alpha_in_M) {
    const NFPtr& M = alpha_in_M.parent();
    NFElement r = M->zero();
    const auto& co = x.coords();
    for (auto it = co.rbegin(); it != co.rend(); ++it) r = r * alpha_in_M + M->from_rational(*it);
    return r;
}

NFExtension nf_extend(const NFPtr& K, const NFPoly& g_in) {
    NFPoly g = g_in.monic();
    int e = g.degree();
    if (e < 1) throw std::invalid_argument("nf_extend: constant polynomial");
    if (e == 1) return {K, K->gen(), -g[0]};
    int n = K->degree();

    if (n == 1) {
        std::vector<Rat> qc;
        for (const auto& c : g.coeffs()) qc.push_back(c.rational_value());
        auto [M, beta] = nf_create_with_root(QPoly(std::move(qc)), true);
        Rat a0 = K->gen().rational_value();
        return {M, M->from_rational(a0), beta};
    }

    for (long k = 0; k <= 200; ++k) {
        long t = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
        QPoly N = trager_norm(g, t);
        if (N.degree() != n * e) continue;
        if (!is_squarefree_q(N)) continue;
        // N is the minimal polynomial of gamma = beta + t*alpha.
        auto [M, gamma] = nf_create_with_root(N, true);
        // Recover alpha as the unique common root in M of m_K(z) and
        // H(z) = g_{alpha->z}(gamma - t z).
        NFPoly mz = NFPoly::from_q(M, K->min_poly_q());
        NFPoly lin(M, {gamma, M->from_rational(Rat(-t))});  // gamma - t z
        NFPoly H(M);
        for (int i = g.degree(); i >= 0; --i)
            H = H * lin + NFPoly::from_q(M, g[static_cast<std::size_t>(i)].as_poly());
        NFPoly D = nf_poly_gcd(mz, H);
        if (D.degree() != 1) continue;
        NFElement alpha = -D[0];
        NFElement beta = gamma - alpha * Rat(t);
        // sanity: beta must be a root of g embedded into M
        NFPoly gM(M);
        {
            std::vector<NFElement> c;
            for (const auto& ci : g.coeffs()) c.push_back(nf_embed(ci, alpha));
            gM = NFPoly(M, std::move(c));
        }
        if (!gM.eval(beta).is_zero()) throw std::runtime_error("nf_extend: verification failed");
        return {M, alpha, beta};
    }
    throw std::runtime_error("nf_extend: no primitive element found");
}

bool nf_is_subfield(const NFPtr& K, const NFPtr& L) {
    if (K->degree() == 1) return true;
    int nL = L->degree();
    if (nL % K->degree() != 0) return false;
    // K embeds into L iff min_poly(K) has a root in L, i.e. iff the Trager
    // norm of min_poly(K) over L has an irreducible factor of degree exactly
    // [L:Q] (all factor degrees are multiples of it).  Testing that with
    // small_factors avoids ever factoring the full norm.
    NFPoly m = NFPoly::from_q(L, K->min_poly_q());
    for (long s = 1; s <= 200; ++s) {
        long t = (s % 2 == 0) ? s / 2 : -(s / 2 + 1);
        QPoly N = trager_norm(m, t);
        if (N.degree() != nL * K->degree()) continue;
        if (!is_squarefree_q(N)) continue;
        for (const auto& g : small_factors(N, nL))
            if (g.degree() == nL) return true;
        return false;
    }
    throw std::runtime_error("nf_is_subfield: no squarefree norm found");
}

bool nf_is_isomorphic(const NFPtr& K, const NFPtr& L) {
    if (K->degree() != L->degree()) return false;
    if (K->min_poly() == L->min_poly()) return true;
    return nf_is_subfield(K, L);
}

std::vector<NFExtension> nf_composita(const NFPtr& K, const NFPtr& L) {
    NFPoly m = NFPoly::from_q(K, L->min_poly_q());
    auto fac = factor_over_nf(m);
    std::vector<NFExtension> out;
    for (auto& fa : fac.factors) out.push_back(nf_extend(K, fa.poly));
    return out;
}

std::vector<int> nf_compositum_degrees(const NFPtr& K, const NFPtr& L) {
    NFPoly m = NFPoly::from_q(K, L->min_poly_q());
    auto fac = factor_over_nf(m);
    std::vector<int> out;
    for (auto& fa : fac.factors) out.push_back(fa.poly.degree() * K->degree());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tg

#include "tg/poly.hpp"

#include "tg/fppoly.hpp"

#include <algorithm>
#include <sstream>

namespace tg {

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rat& a) {
    QPoly p;
    if (a != 0) p.c_.push_back(a);
    return p;
}

QPoly QPoly::x() {
    QPoly p;
    p.c_ = {Rat(0), Rat(1)};
    return p;
}

QPoly QPoly::from_ints(const std::vector<long>& v) {
    std::vector<Rat> c;
    c.reserve(v.size());
    for (long a : v) c.emplace_back(a);
    return QPoly(std::move(c));
}

const Rat& QPoly::operator[](std::size_t i) const {
    static const Rat zero(0);
    return i < c_.size() ? c_[i] : zero;
}

const Rat& QPoly::lead() const {
    if (c_.empty()) throw std::invalid_argument("lead of zero polynomial");
    return c_.back();
}

Rat QPoly::eval(const Rat& a) const {
    Rat r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * a + *it;
    return r;
}

QPoly QPoly::operator-() const {
    QPoly r(*this);
    for (auto& a : r.c_) a = -a;
    return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return QPoly(std::move(c));
}

QPoly QPoly::operator*(const Rat& s) const {
    QPoly r(*this);
    for (auto& a : r.c_) a *= s;
    r.trim();
    return r;
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (degree() < o.degree()) return {QPoly(), *this};
    std::vector<Rat> rem = c_;
    std::vector<Rat> quot(degree() - o.degree() + 1, Rat(0));
    const Rat& lc = o.lead();
    for (int i = degree(); i >= o.degree(); --i) {
        Rat q = rem[i] / lc;
        if (q != 0) {
            quot[i - o.degree()] = q;
            for (int j = 0; j <= o.degree(); ++j) rem[i - o.degree() + j] -= q * o.c_[j];
        }
    }
    return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly QPoly::div_exact(const QPoly& o) const {
    auto [q, r] = divrem(o);
    if (!r.is_zero()) throw std::runtime_error("non-exact polynomial division");
    return q;
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rat> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(c));
}

QPoly QPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rat(1) / lead());
}

QPoly QPoly::shift(const Rat& a) const {
    // Horner on p(x+a).
    QPoly r;
    QPoly lin(std::vector<Rat>{a, Rat(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * lin + QPoly::constant(*it);
    return r;
}

QPoly QPoly::scale_arg(const Rat& s) const {
    std::vector<Rat> c = c_;
    Rat pw(1);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] *= pw;
        pw *= s;
    }
    return QPoly(std::move(c));
}

QPoly QPoly::reverse() const {
    std::vector<Rat> c(c_.rbegin(), c_.rend());
    return QPoly(std::move(c));
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rat& a = c_[i];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        Rat mag = abs(a);
        if (mag != 1 || i == 0) os << mag.get_str();
        if (i > 0) {
            if (mag != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

// ----- integer polynomial utilities -----

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    ztrim(c);
    return c;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    ztrim(c);
    return c;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    ztrim(c);
    return c;
}

ZPoly zscale(const ZPoly& a, const Int& s) {
    if (s == 0) return {};
    ZPoly c = a;
    for (auto& x : c) x *= s;
    return c;
}

Int zeval(const ZPoly& p, const Int& a) {
    Int r(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * a + *it;
    return r;
}

Int zcontent(const ZPoly& p) {
    Int g(0);
    for (const auto& a : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly zprimitive(const ZPoly& p) {
    if (p.empty()) return {};
    Int g = zcontent(p);
    if (p.back() < 0) g = -g;
    ZPoly c = p;
    for (auto& x : c) x /= g;
    return c;
}

ZPoly zdiv_exact(const ZPoly& a, const ZPoly& b) {
    if (b.empty()) throw std::invalid_argument("division by zero polynomial");
    ZPoly rem = a, quot;
    if (zdeg(a) < zdeg(b)) {
        if (!a.empty()) throw std::runtime_error("non-exact division in Z[x]");
        return {};
    }
    quot.assign(a.size() - b.size() + 1, Int(0));
    const Int& lc = b.back();
    for (int i = zdeg(a); i >= zdeg(b); --i) {
        if (rem[i] == 0) continue;
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(), lc.get_mpz_t());
        if (r != 0) throw std::runtime_error("non-exact division in Z[x]");
        quot[i - zdeg(b)] = q;
        for (std::size_t j = 0; j < b.size(); ++j) rem[i - zdeg(b) + j] -= q * b[j];
    }
    ztrim(rem);
    if (!rem.empty()) throw std::runtime_error("non-exact division in Z[x]");
    ztrim(quot);
    return quot;
}

bool zdivides(const ZPoly& b, const ZPoly& a) {
    try {
        zdiv_exact(a, b);
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

QPoly to_qpoly(const ZPoly& p) {
    std::vector<Rat> c;
    c.reserve(p.size());
    for (const auto& a : p) c.emplace_back(a);
    return QPoly(std::move(c));
}

ZPoly to_primitive_z(const QPoly& p) {
    if (p.is_zero()) return {};
    Int den(1);
    for (const auto& a : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
    ZPoly c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) {
        Rat t = a * Rat(den);
        t.canonicalize();
        c.emplace_back(t.get_num());
    }
    return zprimitive(c);
}

// ----- gcd / resultant via subresultant PRS on integer polynomials -----

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly zprem(const ZPoly& a, const ZPoly& b) {
    ZPoly rem = a;
    int db = zdeg(b);
    const Int& lc = b.back();
    int e = zdeg(a) - db + 1;
    for (int i = zdeg(a); i >= db; --i) {
        ztrim(rem);
        if (zdeg(rem) < i) continue;
        Int q = rem[i];
        for (auto& x : rem) x *= lc;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
        --e;
    }
    ztrim(rem);
    // Account for skipped multiplications so the exponent is exact.
    while (e-- > 0)
        for (auto& x : rem) x *= lc;
    return rem;
}

Int ipow(const Int& b, long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

QPoly poly_gcd(const QPoly& p, const QPoly& q) {
    if (p.is_zero()) return q.monic();
    if (q.is_zero()) return p.monic();
    ZPoly a = to_primitive_z(p), b = to_primitive_z(q);
    if (zdeg(a) < zdeg(b)) std::swap(a, b);
    // Subresultant PRS keeps coefficient growth polynomial.
    Int g(1), h(1);
    while (true) {
        int delta = zdeg(a) - zdeg(b);
        ZPoly r = zprem(a, b);
        if (r.empty()) break;
        if (zdeg(r) == 0) return QPoly::constant(Rat(1));
        a = std::move(b);
        Int divisor = g * ipow(h, delta);
        b.clear();
        b.reserve(r.size());
        for (auto& x : r) b.emplace_back(x / divisor);
        g = a.back();
        // h = g^delta * h^(1-delta)
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = ipow(g, delta) / ipow(h, delta - 1);
        }
    }
    return to_qpoly(zprimitive(b)).monic();
}

Rat poly_resultant(const QPoly& p, const QPoly& q) {
    if (p.is_zero() || q.is_zero()) return Rat(0);
    if (p.degree() == 0) {
        Rat r = p[0];
        Rat out(1);
        for (int i = 0; i < q.degree(); ++i) out *= r;
        return out;  // res(c, q) = c^deg q
    }
    if (q.degree() == 0) {
        Rat r = q[0];
        Rat out(1);
        for (int i = 0; i < p.degree(); ++i) out *= r;
        return out;
    }
    // Clear denominators: res(a/da, b/db) = res(a,b) / (da^deg b * db^deg a).
    Int da(1), db(1);
    for (const auto& c : p.coeffs()) mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& c : q.coeffs()) mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), c.get_den_mpz_t());
    ZPoly a, b;
    for (const auto& c : p.coeffs()) {
        Rat t = c * Rat(da);
        t.canonicalize();
        a.emplace_back(t.get_num());
    }
    for (const auto& c : q.coeffs()) {
        Rat t = c * Rat(db);
        t.canonicalize();
        b.emplace_back(t.get_num());
    }
    ztrim(a);
    ztrim(b);

    // Subresultant PRS resultant (Collins); s carries the sign/cofactor bookkeeping.
    bool neg = false;
    Int g(1), h(1);
    Int res_extra(1);  // accumulated factor numerator
    Int res_den(1);
    if (zdeg(a) < zdeg(b)) {
        if ((static_cast<long>(zdeg(a)) * zdeg(b)) % 2 != 0) neg = !neg;
        std::swap(a, b);
    }
    while (zdeg(b) > 0) {
        int delta = zdeg(a) - zdeg(b);
        if ((static_cast<long>(zdeg(a)) * zdeg(b)) % 2 != 0) neg = !neg;
        ZPoly r = zprem(a, b);
        if (r.empty()) return Rat(0);
        a = std::move(b);
        Int divisor = g * ipow(h, delta);
        b.clear();
        for (auto& x : r) b.emplace_back(x / divisor);
        g = a.back();
        if (delta == 1)
            h = g;
        else if (delta > 1)
            h = ipow(g, delta) / ipow(h, delta - 1);
        // Resultant correction per PRS step: lc(b_new) tracking is folded below.
        (void)res_extra;
        (void)res_den;
    }
    // Now deg b == 0: res = h^(1 - deg a) * b^(deg a)  per subresultant theory,
    // where h is the current subresultant scalar and a the last nonconstant.
    Int bb = b.empty() ? Int(0) : b[0];
    if (bb == 0) return Rat(0);
    Rat res = Rat(ipow(bb, zdeg(a)));
    if (zdeg(a) > 1) res /= Rat(ipow(h, zdeg(a) - 1));
    if (neg) res = -res;
    // Undo denominator clearing.
    Rat corr = Rat(ipow(da, q.degree())) * Rat(ipow(db, p.degree()));
    return res / corr;
}

Rat poly_discriminant(const QPoly& p) {
    if (p.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    Rat r = poly_resultant(p, p.derivative());
    r /= p.lead();
    int n = p.degree();
    if (((static_cast<long>(n) * (n - 1)) / 2) % 2 != 0) r = -r;
    return r;
}

QPoly squarefree_part(const QPoly& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return QPoly::constant(Rat(1));
    QPoly g = poly_gcd(p, p.derivative());
    return p.div_exact(g).monic();
}

QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    // Newton form.
    std::size_t n = xs.size();
    std::vector<Rat> coef(ys);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    QPoly r;
    for (std::size_t i = n; i-- > 0;) {
        QPoly lin(std::vector<Rat>{-xs[i], Rat(1)});
        r = r * lin + QPoly::constant(coef[i]);
    }
    return r;
}

namespace {

Int zeval_mod(const ZPoly& f, const Int& a, const Int& m) {
    Int r(0);
    for (auto it = f.rbegin(); it != f.rend(); ++it) {
        r = (r * a + *it) % m;
    }
    if (r < 0) r += m;
    return r;
}

}  // namespace

std::vector<Rat> rational_roots(const QPoly& p) {
    std::vector<Rat> roots;
    if (p.is_zero()) throw std::invalid_argument("rational_roots of zero polynomial");
    if (p.degree() == 0) return roots;
    ZPoly f = to_primitive_z(p);
    // Strip powers of x.
    std::size_t v = 0;
    while (v < f.size() && f[v] == 0) ++v;
    if (v > 0) {
        roots.emplace_back(0);
        f.erase(f.begin(), f.begin() + static_cast<long>(v));
    }
    if (zdeg(f) < 1) return roots;

    // For a root n/d in lowest terms: n | f[0], d | lc.  Lift roots p-adically
    // until the modulus certifies unique rational reconstruction below B.
    Int B = f[0];
    if (B < 0) B = -B;
    Int lc = f.back();
    if (lc < 0) lc = -lc;
    if (lc > B) B = lc;
    Int target = 2 * B * B + 1;

    ZPoly df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * Int(static_cast<long>(i)));

    ZPoly work = f;
    for (int attempt = 0;; ++attempt) {
        if (attempt == 6) {
            // persistent repeated roots mod p: retry on the squarefree part
            work = to_primitive_z(squarefree_part(to_qpoly(work)));
            df.clear();
            for (std::size_t i = 1; i < work.size(); ++i)
                df.push_back(work[i] * Int(static_cast<long>(i)));
        }
        if (attempt > 12) throw std::runtime_error("rational_roots: no usable prime found");
        Int prz;
        mpz_ui_pow_ui(prz.get_mpz_t(), 2, 61);
        prz += attempt;
        mpz_nextprime(prz.get_mpz_t(), prz.get_mpz_t());
        std::uint64_t pr = prz.get_ui();
        FpPoly fp = FpPoly::from_z(work, pr);
        if (fp.degree() != zdeg(work)) continue;  // p | lc
        if (fp_gcd(fp, fp.derivative()).degree() != 0) continue;  // not squarefree mod p
        std::vector<std::uint64_t> rts = fp_roots(fp);
        Int m(prz);
        std::vector<Int> lifted;
        for (auto r : rts) lifted.emplace_back(static_cast<unsigned long>(r));
        while (m < target) {
            Int m2 = m * m;
            for (auto& r : lifted) {
                // Newton step: r -= f(r)/f'(r) mod m^2
                Int fr = zeval_mod(work, r, m2);
                Int dfr = zeval_mod(df, r, m2);
                Int inv;
                if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), m2.get_mpz_t()) == 0)
                    throw std::runtime_error("rational_roots: lifting failed");
                r = (r - fr * inv) % m2;
                if (r < 0) r += m2;
            }
            m = m2;
        }
        for (const auto& r : lifted) {
            auto cand = rational_reconstruct(r, m, B);
            if (!cand) continue;
            if (p.eval(*cand) == 0) roots.push_back(*cand);
        }
        break;
    }
    std::sort(roots.begin(), roots.end(), [](const Rat& a, const Rat& b) { return a < b; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace tg

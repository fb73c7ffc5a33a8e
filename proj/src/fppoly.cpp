#include "tg/fppoly.hpp"

#include <algorithm>
#include <functional>

namespace tg {

std::uint64_t fp_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t fp_powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = fp_mulmod(r, a, p);
        a = fp_mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::invalid_argument("fp_inv of zero");
    return fp_powmod(a, p - 2, p);
}

void FpPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& a : c_) a %= p_;
    trim();
}

FpPoly FpPoly::from_z(const ZPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> c;
    c.reserve(f.size());
    Int pp(static_cast<unsigned long>(p));
    for (const auto& a : f) {
        Int r = a % pp;
        if (r < 0) r += pp;
        c.push_back(r.get_ui());
    }
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::constant(std::uint64_t p, std::uint64_t a) { return FpPoly(p, {a}); }

std::uint64_t FpPoly::lead() const {
    if (c_.empty()) throw std::invalid_argument("lead of zero polynomial");
    return c_.back();
}

std::uint64_t FpPoly::eval(std::uint64_t a) const {
    std::uint64_t r = 0;
    a %= p_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = (fp_mulmod(r, a, p_) + *it) % p_;
    return r;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<std::uint64_t> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = (c[i] + o.c_[i]) % p_;
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    std::vector<std::uint64_t> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = (c[i] + p_ - o.c_[i]) % p_;
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return FpPoly(p_);
    std::vector<std::uint64_t> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<unsigned __int128>(c_[i]) * o.c_[j]) % p_;
    }
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::scaled(std::uint64_t s) const {
    std::vector<std::uint64_t> c = c_;
    s %= p_;
    for (auto& a : c) a = fp_mulmod(a, s, p_);
    return FpPoly(p_, std::move(c));
}

bool FpPoly::operator<(const FpPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return c_ < o.c_;
}

std::pair<FpPoly, FpPoly> FpPoly::divrem(const FpPoly& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (degree() < o.degree()) return {FpPoly(p_), *this};
    std::vector<std::uint64_t> rem = c_;
    std::vector<std::uint64_t> quot(degree() - o.degree() + 1, 0);
    std::uint64_t linv = fp_inv(o.lead(), p_);
    for (int i = degree(); i >= o.degree(); --i) {
        std::uint64_t q = fp_mulmod(rem[i], linv, p_);
        if (q == 0) continue;
        quot[i - o.degree()] = q;
        for (int j = 0; j <= o.degree(); ++j) {
            std::uint64_t& r = rem[i - o.degree() + j];
            r = (r + p_ - fp_mulmod(q, o.c_[j], p_)) % p_;
        }
    }
    return {FpPoly(p_, std::move(quot)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::div_exact(const FpPoly& o) const {
    auto [q, r] = divrem(o);
    if (!r.is_zero()) throw std::runtime_error("non-exact division in F_p[x]");
    return q;
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return FpPoly(p_);
    std::vector<std::uint64_t> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = fp_mulmod(c_[i], i % p_, p_);
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(fp_inv(lead(), p_));
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly fp_powmod_poly(const FpPoly& base, const Int& e, const FpPoly& f) {
    std::uint64_t p = f.prime();
    FpPoly r = FpPoly::constant(p, 1);
    FpPoly b = base.mod(f);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = (r * r).mod(f);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b).mod(f);
    }
    return r;
}

std::vector<std::uint64_t> fp_roots(const FpPoly& f) {
    std::uint64_t p = f.prime();
    if (f.is_zero()) throw std::invalid_argument("fp_roots of zero polynomial");
    // gcd(f, x^p - x) is the product of (x - r) over distinct roots r.
    FpPoly xp = fp_powmod_poly(FpPoly::x(p), Int(static_cast<unsigned long>(p)), f);
    FpPoly g = fp_gcd(f, xp - FpPoly::x(p));
    std::vector<std::uint64_t> roots;
    if (g.degree() <= 0) return roots;
    for (const auto& fac : factor_mod_p(g))
        if (fac.poly.degree() == 1) roots.push_back((p - fac.poly[0]) % p);
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

// Split a monic product of distinct degree-d irreducibles (Cantor-Zassenhaus).
void edf(const FpPoly& f, int d, std::uint64_t& state, std::vector<FpPoly>& out) {
    std::uint64_t p = f.prime();
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    Int pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
    while (true) {
        // xorshift64 driven random polynomial of degree < 2d
        std::vector<std::uint64_t> rc(2 * static_cast<std::size_t>(d));
        for (auto& a : rc) {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            a = state % p;
        }
        FpPoly r(p, std::move(rc));
        FpPoly g = fp_gcd(f, r);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, state, out);
            edf(f.div_exact(g), d, state, out);
            return;
        }
        FpPoly h;
        if (p == 2) {
            // trace map r + r^2 + ... + r^(2^(d-1))
            FpPoly t = r.mod(f), acc = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t).mod(f);
                acc = acc + t;
            }
            h = acc;
        } else {
            Int e = (pd - 1) / 2;
            h = fp_powmod_poly(r, e, f) - FpPoly::constant(p, 1);
        }
        g = fp_gcd(f, h);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, state, out);
            edf(f.div_exact(g), d, state, out);
            return;
        }
    }
}

void factor_squarefree(const FpPoly& f, int mult, std::uint64_t& state,
                       std::vector<FpFactor>& out) {
    // distinct-degree then equal-degree on a monic squarefree f
    std::uint64_t p = f.prime();
    FpPoly rest = f;
    FpPoly xq = FpPoly::x(p);
    for (int d = 1; rest.degree() > 0 && 2 * d <= rest.degree(); ++d) {
        xq = fp_powmod_poly(xq, Int(static_cast<unsigned long>(p)), rest);
        FpPoly g = fp_gcd(rest, xq - FpPoly::x(p));
        if (g.degree() > 0) {
            std::vector<FpPoly> parts;
            edf(g.monic(), d, state, parts);
            for (auto& q : parts) out.push_back({q, mult});
            rest = rest.div_exact(g).monic();
            xq = xq.mod(rest);
        }
    }
    if (rest.degree() > 0) out.push_back({rest.monic(), mult});
}

// Squarefree decomposition (Yun-style, handling p-th powers).
std::vector<std::pair<FpPoly, int>> squarefree_decompose(const FpPoly& g) {
    std::uint64_t p = g.prime();
    std::vector<std::pair<FpPoly, int>> sqfree;  // (squarefree part, multiplicity)
    std::function<void(FpPoly, int)> decompose = [&](FpPoly h, int scale) {
        while (h.degree() > 0) {
            FpPoly dh = h.derivative();
            if (dh.is_zero()) {
                // h = u(x^p): take p-th root (coefficients are p-th powers? over F_p
                // Frobenius is identity on coefficients, so c^(1/p) = c).
                std::vector<std::uint64_t> c;
                for (int i = 0; i <= h.degree(); i += static_cast<int>(p))
                    c.push_back(h[static_cast<std::size_t>(i)]);
                h = FpPoly(p, std::move(c));
                scale *= static_cast<int>(p);
                continue;
            }
            FpPoly c0 = fp_gcd(h, dh);
            FpPoly w = h.div_exact(c0).monic();
            int i = 1;
            while (w.degree() > 0) {
                FpPoly y = fp_gcd(w, c0);
                FpPoly z = w.div_exact(y);
                if (z.degree() > 0) sqfree.push_back({z.monic(), i * scale});
                w = y;
                c0 = c0.div_exact(y);
                ++i;
            }
            h = c0.monic();
        }
    };
    decompose(g, 1);
    return sqfree;
}

}  // namespace

std::vector<FpFactor> factor_mod_p(const FpPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("factor_mod_p of zero polynomial");
    std::uint64_t p = f.prime();
    std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545F4914F6CDD1DULL;
    std::vector<FpFactor> out;
    FpPoly g = f.monic();
    (void)p;

    for (auto& [sq, m] : squarefree_decompose(g)) factor_squarefree(sq, m, state, out);
    std::sort(out.begin(), out.end(),
              [](const FpFactor& a, const FpFactor& b) { return a.poly < b.poly; });
    return out;
}

std::pair<std::vector<FpPoly>, FpPoly> factor_mod_p_small(const FpPoly& f, int maxdeg,
                                                          std::uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("factor_mod_p_small of zero polynomial");
    std::uint64_t p = f.prime();
    std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545F4914F6CDD1DULL;
    std::vector<FpPoly> small;
    FpPoly rest = f.monic();
    FpPoly xq = FpPoly::x(p);
    for (int d = 1; rest.degree() > 0 && d <= maxdeg && 2 * d <= rest.degree(); ++d) {
        xq = fp_powmod_poly(xq, Int(static_cast<unsigned long>(p)), rest);
        FpPoly g = fp_gcd(rest, xq - FpPoly::x(p));
        if (g.degree() > 0) {
            edf(g.monic(), d, state, small);
            rest = rest.div_exact(g).monic();
            xq = xq.mod(rest);
        }
    }
    if (rest.degree() > 0 && rest.degree() <= maxdeg) {
        small.push_back(rest.monic());
        rest = FpPoly::constant(p, 1);
    }
    std::sort(small.begin(), small.end());
    return {std::move(small), std::move(rest)};
}

std::vector<int> fp_factor_degrees_upto(const FpPoly& f, int maxdeg) {
    if (f.is_zero()) throw std::invalid_argument("fp_factor_degrees_upto of zero polynomial");
    std::uint64_t p = f.prime();
    std::vector<int> out;
    for (auto& [sq, m] : squarefree_decompose(f.monic())) {
        // Partial distinct-degree factorization: a degree-d slice of total
        // degree D splits into D/d irreducibles of degree d; stop past maxdeg.
        FpPoly rest = sq;
        FpPoly xq = FpPoly::x(p);
        for (int d = 1; rest.degree() > 0 && d <= maxdeg && 2 * d <= rest.degree(); ++d) {
            xq = fp_powmod_poly(xq, Int(static_cast<unsigned long>(p)), rest);
            FpPoly g = fp_gcd(rest, xq - FpPoly::x(p));
            if (g.degree() > 0) {
                for (int i = 0; i < g.degree() / d; ++i)
                    for (int j = 0; j < m; ++j) out.push_back(d);
                rest = rest.div_exact(g).monic();
                xq = xq.mod(rest);
            }
        }
        if (rest.degree() > 0 && rest.degree() <= maxdeg)
            for (int j = 0; j < m; ++j) out.push_back(rest.degree());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Rat> rational_reconstruct(const Int& r, const Int& m, const Int& bound) {
    // half-extended Euclid on (m, r)
    Int a = m, b = r % m;
    if (b < 0) b += m;
    Int ta(0), tb(1);
    while (b > bound) {
        Int q = a / b;
        Int nb = a - q * b;
        Int ntb = ta - q * tb;
        a = b;
        b = nb;
        ta = tb;
        tb = ntb;
    }
    if (tb == 0) return std::nullopt;
    Int num = b, den = tb;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rat out(num, den);
    out.canonicalize();
    return out;
}

}  // namespace tg

#ifndef TG_POLY_HPP
#define TG_POLY_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tg {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense univariate polynomial over Q, lowest degree first.
/// Invariant: no trailing zero coefficients (zero polynomial = empty vector).
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rat& a);
    static QPoly x();
    /// c0 + c1 x + ... from integer list.
    static QPoly from_ints(const std::vector<long>& v);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rat& operator[](std::size_t i) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& lead() const;
    Rat eval(const Rat& a) const;

    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& s) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    /// Quotient and remainder; requires o nonzero.
    std::pair<QPoly, QPoly> divrem(const QPoly& o) const;
    /// Exact division; throws if remainder is nonzero.
    QPoly div_exact(const QPoly& o) const;

    QPoly derivative() const;
    QPoly monic() const;
    /// p(x + a)
    QPoly shift(const Rat& a) const;
    /// p(s*x)
    QPoly scale_arg(const Rat& s) const;
    /// x^deg * p(1/x)
    QPoly reverse() const;

    std::string str(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<Rat> c_;
};

/// Monic gcd; gcd(0,0) = 0.  Subresultant PRS on integer primitive parts.
QPoly poly_gcd(const QPoly& p, const QPoly& q);
/// Resultant of p and q (0 if either is zero and the other nonconstant).
Rat poly_resultant(const QPoly& p, const QPoly& q);
/// Discriminant: res(p, p') / lc, with the usual sign.
Rat poly_discriminant(const QPoly& p);
/// Product of distinct irreducible factors, monic.
QPoly squarefree_part(const QPoly& p);

/// Integer polynomial utilities (dense, lowest degree first, trimmed).
using ZPoly = std::vector<Int>;

int zdeg(const ZPoly& p);  // -1 for zero
void ztrim(ZPoly& p);
ZPoly zmul(const ZPoly& a, const ZPoly& b);
ZPoly zadd(const ZPoly& a, const ZPoly& b);
ZPoly zsub(const ZPoly& a, const ZPoly& b);
ZPoly zscale(const ZPoly& a, const Int& s);
Int zeval(const ZPoly& p, const Int& a);
Int zcontent(const ZPoly& p);
/// Divide by content; sign chosen so the leading coefficient is positive.
ZPoly zprimitive(const ZPoly& p);
/// Exact division in Z[x]; throws on failure.
ZPoly zdiv_exact(const ZPoly& a, const ZPoly& b);
bool zdivides(const ZPoly& b, const ZPoly& a);  // b | a in Z[x]?

QPoly to_qpoly(const ZPoly& p);
/// Clear denominators: returns primitive integer polynomial with the same roots.
ZPoly to_primitive_z(const QPoly& p);

/// Lagrange interpolation: the unique poly of degree < n through (xs[i], ys[i]).
QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

/// Rational roots of p, found by modular root scan + rational reconstruction.
std::vector<Rat> rational_roots(const QPoly& p);

}  // namespace tg

#endif

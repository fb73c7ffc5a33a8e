#ifndef TG_FPPOLY_HPP
#define TG_FPPOLY_HPP

#include <cstdint>
#include <vector>

#include "tg/poly.hpp"

namespace tg {

/// Dense polynomial over F_p for a word-sized prime p < 2^62.
/// Coefficients lowest degree first, reduced mod p, no trailing zeros.
class FpPoly {
  public:
    FpPoly() : p_(2) {}
    explicit FpPoly(std::uint64_t p) : p_(p) {}
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
    /// Reduce an integer polynomial mod p.
    static FpPoly from_z(const ZPoly& f, std::uint64_t p);
    static FpPoly x(std::uint64_t p);
    static FpPoly constant(std::uint64_t p, std::uint64_t a);

    std::uint64_t prime() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t lead() const;
    std::uint64_t eval(std::uint64_t a) const;

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(std::uint64_t s) const;
    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator<(const FpPoly& o) const;  // (degree, low-to-high coeffs) order

    std::pair<FpPoly, FpPoly> divrem(const FpPoly& o) const;
    FpPoly mod(const FpPoly& o) const { return divrem(o).second; }
    FpPoly div_exact(const FpPoly& o) const;
    FpPoly derivative() const;
    FpPoly monic() const;

  private:
    void trim();
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

std::uint64_t fp_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t fp_powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p);

FpPoly fp_gcd(FpPoly a, FpPoly b);  // monic
/// base^e mod f, with base reduced mod f first.
FpPoly fp_powmod_poly(const FpPoly& base, const Int& e, const FpPoly& f);

/// Distinct roots of f in F_p (via gcd with x^p - x), sorted.
std::vector<std::uint64_t> fp_roots(const FpPoly& f);

/// Irreducible factors with multiplicity, sorted by (degree, coefficients).
struct FpFactor {
    FpPoly poly;  // monic irreducible
    int mult;
};
std::vector<FpFactor> factor_mod_p(const FpPoly& f, std::uint64_t seed = 1);

/// For a monic squarefree f: the irreducible factors of degree <= maxdeg and
/// the product of all remaining (larger) factors.
std::pair<std::vector<FpPoly>, FpPoly> factor_mod_p_small(const FpPoly& f, int maxdeg,
                                                          std::uint64_t seed = 1);

/// Degrees (with multiplicity) of the irreducible factors of f of degree
/// <= maxdeg; factors of larger degree are omitted.  Partial distinct-degree
/// factorization, cheap even for very large f.
std::vector<int> fp_factor_degrees_upto(const FpPoly& f, int maxdeg);

/// Rational reconstruction: find n/d with |n|, d <= bound, d*r = n mod m.
std::optional<Rat> rational_reconstruct(const Int& r, const Int& m, const Int& bound);

}  // namespace tg

#endif

#ifndef TG_NUMBERFIELD_HPP
#define TG_NUMBERFIELD_HPP

#include <memory>

#include "tg/factor.hpp"
#include "tg/poly.hpp"

namespace tg {

class NumberField;
using NFPtr = std::shared_ptr<const NumberField>;

/// Element of a number field Q(alpha), stored as rational coordinates on the
/// power basis 1, alpha, ..., alpha^(n-1).
class NFElement {
  public:
    NFElement() = default;
    NFElement(NFPtr parent, std::vector<Rat> coords);

    const NFPtr& parent() const { return parent_; }
    const std::vector<Rat>& coords() const { return coords_; }
    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // throws if not rational

    NFElement operator-() const;
    NFElement operator+(const NFElement& o) const;
    NFElement operator-(const NFElement& o) const;
    NFElement operator*(const NFElement& o) const;
    NFElement operator*(const Rat& s) const;
    NFElement inverse() const;  // throws on zero
    NFElement operator/(const NFElement& o) const { return *this * o.inverse(); }
    bool operator==(const NFElement& o) const;

    /// Coordinates as a polynomial in the generator.
    QPoly as_poly() const { return QPoly(coords_); }

  private:
    NFPtr parent_;
    std::vector<Rat> coords_;
};

/// A number field together with a distinguished root of the polynomial it was
/// created from (the generator itself when the input was monic integral).
struct NFWithRoot {
    NFPtr field;
    NFElement root;
};
NFWithRoot nf_create_with_root(const QPoly& f, bool assume_irreducible = false);

/// Number field Q[x]/(m) for a monic integral irreducible m.
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    /// Build from any irreducible rational polynomial; a non-monic input is
    /// replaced by the minimal polynomial of lc*root, which is monic integral.
    /// Set assume_irreducible to skip the (potentially expensive) certificate.
    static NFPtr create(const QPoly& f, bool assume_irreducible = false);
    /// The rationals, represented with m = x - 1... not used; degree-1 fields
    /// are created via create(x - a) when needed.
    static NFPtr rationals();

    int degree() const { return zdeg(min_poly_); }
    const ZPoly& min_poly() const { return min_poly_; }
    QPoly min_poly_q() const { return to_qpoly(min_poly_); }

    NFElement zero() const;
    NFElement one() const;
    NFElement gen() const;
    NFElement from_rational(const Rat& a) const;
    NFElement element(std::vector<Rat> coords) const;

  private:
    explicit NumberField(ZPoly m) : min_poly_(std::move(m)) {}
    friend NFWithRoot nf_create_with_root(const QPoly& f, bool assume_irreducible);
    ZPoly min_poly_;
};

/// Polynomial with coefficients in a number field, lowest degree first.
class NFPoly {
  public:
    NFPoly() = default;
    explicit NFPoly(NFPtr parent) : parent_(std::move(parent)) {}
    NFPoly(NFPtr parent, std::vector<NFElement> coeffs);
    /// Lift a rational polynomial into K[x].
    static NFPoly from_q(const NFPtr& parent, const QPoly& f);

    const NFPtr& parent() const { return parent_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    NFElement operator[](std::size_t i) const;
    const std::vector<NFElement>& coeffs() const { return c_; }
    const NFElement& lead() const;
    NFElement eval(const NFElement& a) const;

    NFPoly operator-() const;
    NFPoly operator+(const NFPoly& o) const;
    NFPoly operator-(const NFPoly& o) const;
    NFPoly operator*(const NFPoly& o) const;
    NFPoly operator*(const NFElement& s) const;
    bool operator==(const NFPoly& o) const;

    std::pair<NFPoly, NFPoly> divrem(const NFPoly& o) const;
    NFPoly div_exact(const NFPoly& o) const;
    NFPoly derivative() const;
    NFPoly monic() const;

  private:
    void trim();
    NFPtr parent_;
    std::vector<NFElement> c_;
};

NFPoly nf_poly_gcd(NFPoly a, NFPoly b);  // monic

struct NFFactor {
    NFPoly poly;  // monic irreducible over the field
    int mult;
};

/// Trager factorization of f in K[x] into monic irreducibles (sorted
/// deterministically); the content NFElement satisfies
/// f = content * prod poly^mult.
struct NFFactorization {
    NFElement content;
    std::vector<NFFactor> factors;
};
NFFactorization factor_over_nf(const NFPoly& f);

/// Roots of f lying in K, sorted deterministically.
std::vector<NFElement> roots_in_nf(const NFPoly& f);

/// If a is a square in K, returns a root with its first nonzero coordinate
/// positive.
std::optional<NFElement> nf_sqrt(const NFElement& a);

/// Result of extending K by a root of an irreducible g in K[x]:
/// the new field M, the image of K's generator, and a root of g in M.
struct NFExtension {
    NFPtr field;
    NFElement alpha;  // image of K's generator in M
    NFElement beta;   // root of g in M
};
NFExtension nf_extend(const NFPtr& K, const NFPoly& g);

/// Embed x (element of K) into M given the image of K's generator.
NFElement nf_embed(const NFElement& x, const NFElement& alpha_in_M);

/// Does L contain a root of K's defining polynomial (i.e. a subfield copy)?
/// Degree of K must divide degree of L for a true result.
bool nf_is_subfield(const NFPtr& K, const NFPtr& L);
bool nf_is_isomorphic(const NFPtr& K, const NFPtr& L);

/// All composita of K and L: for each irreducible factor of L's minimal
/// polynomial over K, the extension of K by it.
std::vector<NFExtension> nf_composita(const NFPtr& K, const NFPtr& L);

/// Degrees [KL:Q] of the composita, without constructing primitive elements.
std::vector<int> nf_compositum_degrees(const NFPtr& K, const NFPtr& L);

}  // namespace tg

#endif

#ifndef TG_ELLIPTIC_HPP
#define TG_ELLIPTIC_HPP

#include <map>

#include "tg/numberfield.hpp"

namespace tg {

/// Elliptic curve over Q in long Weierstrass form
/// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
struct CurveQ {
    Int a1, a2, a3, a4, a6;

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Int c4() const { return b2() * b2() - 24 * b4(); }
    Int c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    Int disc() const;
    Rat j() const;
    void validate() const;  // throws if singular
};

/// Integral short model y^2 = x^3 + A x + B attached to a curve by the
/// standard scaling (X, Y) = (36 x + 3 b2, 108 (2 y + a1 x + a3)).
struct ShortModel {
    Int A, B;
    static ShortModel of(const CurveQ& e) { return {-27 * e.c4(), -54 * e.c6()}; }
    Int disc() const { return -16 * (4 * A * A * A + 27 * B * B); }
    /// x^3 + A x + B
    ZPoly cubic() const { return {B, A, Int(0), Int(1)}; }
    /// map a point (x, y) on the curve to the short model and back
    static Rat to_short_x(const CurveQ& e, const Rat& x) { return 36 * x + 3 * e.b2(); }
    static Rat from_short_x(const CurveQ& e, const Rat& X) { return (X - 3 * e.b2()) / 36; }
};

/// Cache of reduced division polynomials for one short model.
/// psi_n = psit_n * (2y)^(n even), so psit_n is a polynomial in x alone.
class DivisionPolys {
  public:
    explicit DivisionPolys(ShortModel m) : m_(m) {}
    const ShortModel& model() const { return m_; }
    /// psit_n, n >= 0.
    const ZPoly& psit(unsigned n);
    /// x-coordinate numerator phi_n = x psi_n^2 - psi_{n+1} psi_{n-1}.
    ZPoly phi(unsigned n);
    /// psi_n^2 as a polynomial in x.
    ZPoly psi_sq(unsigned n);
    /// Monic-content-free polynomial whose roots are the x-coordinates of
    /// points of exact order l^k (l prime, l^k > 1).
    ZPoly primitive_division_poly(unsigned l, unsigned k);

  private:
    ShortModel m_;
    std::map<unsigned, ZPoly> cache_;
};

/// Point on a curve base-changed to a number field.
struct PointNF {
    bool inf = true;
    NFElement x, y;
};

/// Curve with coefficients embedded in a number field.
struct CurveNF {
    NFPtr field;
    NFElement a1, a2, a3, a4, a6;

    static CurveNF base_change(const CurveQ& e, const NFPtr& K);

    PointNF zero() const { return PointNF{}; }
    bool on_curve(const PointNF& p) const;
    bool eq(const PointNF& p, const PointNF& q) const;
    PointNF neg(const PointNF& p) const;
    PointNF add(const PointNF& p, const PointNF& q) const;
    PointNF mul(long n, const PointNF& p) const;
    /// Exact order if <= bound, else 0.
    long order(const PointNF& p, long bound = 200) const;
    /// Points with the given x-coordinate (0, 1 or 2 of them).
    std::vector<PointNF> lift_x(const NFElement& x) const;
};

/// Torsion subgroup structure Z/m x Z/n with m | n (m = 1 for cyclic).
struct TorsionStructure {
    int m = 1, n = 1;
    long order() const { return static_cast<long>(m) * n; }
    bool operator==(const TorsionStructure& o) const { return m == o.m && n == o.n; }
};

struct TorsionQ {
    TorsionStructure group;
    std::vector<PointNF> points;  // every torsion point, on the original model over Q
    std::vector<PointNF> gens;    // generators matching (m, n)
};

/// E(Q)_tors by the division-polynomial method (complete by Mazur's theorem).
TorsionQ torsion_over_Q(const CurveQ& e);

/// Structure of a finite abelian group given all its elements, as Z/m x Z/n
/// with generators; works for subgroups of E(K) (rank <= 2).
std::pair<TorsionStructure, std::vector<PointNF>> group_structure(const CurveNF& c,
                                                                  std::vector<PointNF> pts);

}  // namespace tg

#endif

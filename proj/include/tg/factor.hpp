#ifndef TG_FACTOR_HPP
#define TG_FACTOR_HPP

#include "tg/poly.hpp"

namespace tg {

/// Factorization over Q: content * prod factors[i].poly ^ factors[i].mult,
/// with monic irreducible rational factors sorted by (degree, coefficients).
struct QFactor {
    QPoly poly;
    int mult;
};

struct Factorization {
    Rat content;
    std::vector<QFactor> factors;
    QPoly value() const;
};

Factorization factor_over_Q(const QPoly& f);

bool is_irreducible_over_Q(const QPoly& f);

/// All monic irreducible rational factors of f of degree <= maxdeg.
/// Requires f squarefree.  Much cheaper than full factorization when f is
/// large: only small-degree modular factors are lifted and recombined.
std::vector<QPoly> small_factors(const QPoly& f, int maxdeg);

/// Small-integer factorization helpers (trial division + Pollard rho).
/// Returns prime -> exponent pairs, primes ascending; throws if a composite
/// cofactor above the effort limit remains.
std::vector<std::pair<Int, int>> factor_int(const Int& n);
bool is_probable_prime(const Int& n);

}  // namespace tg

#endif

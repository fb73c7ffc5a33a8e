#ifndef TG_GROWTH_HPP
#define TG_GROWTH_HPP

#include <map>
#include <set>
#include <string>

#include "tg/elliptic.hpp"

namespace tg {

/// A number field together with the l-primary torsion of the curve over it:
/// the group structure and generators on the short model of the curve.
struct GrowthTriple {
    NFPtr field;
    TorsionStructure group;
    std::vector<PointNF> gens;   // generators matching group, on the short model
    std::set<long> primes;       // primes tagged onto this triple
};

/// Per-degree candidate prime data: for each 1 <= d <= 23, the primes l for
/// which some elliptic curve over Q can acquire new l-power torsion in a
/// field of degree dividing d.  Loads from a plain text file with lines
/// "d: l1 l2 ..."; the built-in table is a safe superset.
class PruneTable {
  public:
    static PruneTable builtin();
    static PruneTable load(const std::string& path);
    const std::vector<long>& primes_for(int d) const;

  private:
    std::map<int, std::vector<long>> rq_;
};

/// Step-4 guard: may points of exact order l^k (k >= 2) exist in degree
/// dividing d?  Encodes the known lower bounds on such degrees.
bool guard_allows(long l, int k, int d);

/// Sound pruning filter: returns false only if provably no irreducible
/// rational factor of the primitive l^k-division polynomial has degree e
/// with e | d or 2e | d.  Tests the factor degree multiset modulo several
/// good primes.
bool modp_degree_filter(const CurveQ& e, long l, int k, int d, int primes_to_try = 5);

/// Candidate primes for torsion growth in degree dividing d (a provable
/// superset of the exact answer).
std::vector<long> algorithm1_prime_set(const CurveQ& e, int d, const PruneTable& table);

/// Fast path for l in {17, 37}: growth happens for exactly one j-invariant
/// per prime, with an explicit model for the field and point.
/// Requires 8 | d (l = 17) or 12 | d (l = 37).
std::optional<GrowthTriple> special_path(const CurveQ& e, long l, int d);

/// All fields of degree dividing d (up to isomorphism) over which the
/// l-primary torsion exceeds the one over any proper subfield, with the exact
/// l-primary group over each.  The rational triple is included first.
std::vector<GrowthTriple> algorithm2_ell_growth(const CurveQ& e, long l, int d);

/// Close a set of single-prime triples under pairwise composita of degree
/// dividing d, verifying generator transfer into each compositum.
std::vector<GrowthTriple> algorithm3_combine(const std::vector<GrowthTriple>& per_prime, int d,
                                             const CurveQ& e);

/// One output row: a field with primitive torsion growth, the full torsion
/// group of the curve over it, and the primes whose part grew.
struct GrowthEntry {
    NFPtr field;
    TorsionStructure group;
    std::vector<long> primes;
};
using GrowthReport = std::vector<GrowthEntry>;

/// All number fields of degree dividing d with primitive torsion growth for
/// e, each with its full torsion group, sorted by (degree, group order,
/// minimal polynomial).  d = 1 reports the rational torsion.
GrowthReport torsion_growth(const CurveQ& e, int d);

/// Brute-force cross-check for small d: factor every primitive q-division
/// polynomial for prime powers q <= prime_power_cap over Q, build all
/// candidate fields, and compute the torsion over each directly.
GrowthReport naive_oracle(const CurveQ& e, int d, int prime_power_cap = 16);

}  // namespace tg

#endif

#ifndef TG_REDUCTION_HPP
#define TG_REDUCTION_HPP

#include "tg/elliptic.hpp"

namespace tg {

/// Global minimal model (Laska-Kraus-Connell).  The result is isomorphic to
/// the input over Q and has minimal discriminant.
CurveQ minimal_model(const CurveQ& e);

/// Conductor exponent at p for a model that is minimal at p (Tate).
int conductor_exponent(const CurveQ& minimal, const Int& p);

/// Conductor of the curve (minimizes internally).
Int conductor(const CurveQ& e);

}  // namespace tg

#endif

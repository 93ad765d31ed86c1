#pragma once

#include "superalgebra.hpp"

namespace oddcone {

// Membership in the odd nilpotent cone of gl(m|n): all invariant power sums
// Tr((X+ X-)^k), k = 1..min(m, n), vanish.  Equivalently X+ X- (and then
// X- X+) is nilpotent: its rank is at most min(m, n), so vanishing of the
// first min(m, n) power sums kills every eigenvalue.
inline bool in_nilcone_gl(const OddElement& x) {
    for (const Rational& t : invariants(x))
        if (!t.is_zero()) return false;
    return true;
}

// Cone of the subalgebra: intersect with its odd part.
inline bool in_nilcone(const Kind& kind, const OddElement& x) {
    return odd_membership(kind, x) && in_nilcone_gl(x);
}

// The self-commuting variety [x, x] = 0: for odd x this means both
// X+ X- == 0 and X- X+ == 0.  It sits inside the nilpotent cone.
inline bool in_self_commuting(const OddElement& x) {
    return (x.xplus * x.xminus).is_zero() && (x.xminus * x.xplus).is_zero();
}

}  // namespace oddcone

#pragma once

#include "qtel/ratfun.hpp"

#include <functional>
#include <optional>

namespace qtel {

// Proper q-hypergeometric term F(n, k), represented by its two shift
// quotients plus an exact evaluator.
//
//   s = F(n+1, k) / F(n, k)   as an element of Q(q)(x, y)
//   t = F(n, k+1) / F(n, k)
//
// eval(n, k) returns the exact value (a Laurent polynomial or rational in
// q). vanishes(n, k) tells where F is zero. fixed_k, when available, gives
// the symbolic value of F(n, k0) as a rational function of x for a fixed
// integer k0; terms whose fixed-k values leave Q(q)(x) (Gaussian
// q-exponents) do not provide it.
struct HyperTerm {
    RatFun s;
    RatFun t;
    std::function<RatFun(long, long)> eval;
    std::function<bool(long, long)> vanishes;
    std::function<RatFun(long)> fixed_k; // may be empty

    bool has_fixed_k() const { return static_cast<bool>(fixed_k); }
};

// checks eval against s and t on the sampled range 0 <= k <= n <= nmax,
// away from zeros of F; throws InternalError on any mismatch
void check_term_consistency(const HyperTerm& term, long nmax);

} // namespace qtel

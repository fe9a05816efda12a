#include "qtel/hyperterm.hpp"

namespace qtel {

namespace {

// evaluate a shift quotient at (n, k), reporting an indeterminate or
// genuinely singular point by nullopt (those are skipped: the quotient
// representation is only required to match eval away from its poles)
std::optional<RatFun> quotient_at(const RatFun& f, long n, long k) {
    Poly den = f.den().subst_qpow(Var::X, n).subst_qpow(Var::Y, k);
    if (den.is_zero()) return std::nullopt;
    Poly num = f.num().subst_qpow(Var::X, n).subst_qpow(Var::Y, k);
    return RatFun(num, den);
}

} // namespace

void check_term_consistency(const HyperTerm& term, long nmax) {
    for (long n = 0; n <= nmax; ++n) {
        for (long k = 0; k <= n; ++k) {
            if (term.vanishes(n, k)) continue;
            RatFun f = term.eval(n, k);
            if (f.is_zero()) throw InternalError("support predicate disagrees with eval");
            if (auto sval = quotient_at(term.s, n, k)) {
                if (!(term.eval(n + 1, k) == *sval * f))
                    throw InternalError("shift quotient s inconsistent with eval at n=" +
                                        std::to_string(n) + " k=" + std::to_string(k));
            }
            if (auto tval = quotient_at(term.t, n, k)) {
                if (!(term.eval(n, k + 1) == *tval * f))
                    throw InternalError("shift quotient t inconsistent with eval at n=" +
                                        std::to_string(n) + " k=" + std::to_string(k));
            }
        }
    }
}

} // namespace qtel

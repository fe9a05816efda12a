#pragma once

#include "qtel/ratfun.hpp"

#include <random>

namespace qtel::testing {

// small random polynomials / rational functions for property tests
struct Rand {
    std::mt19937_64 rng;
    explicit Rand(std::uint64_t seed = 20240405) : rng(seed) {}

    long small(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(rng);
    }
    Rat rat() {
        long n = small(-9, 9);
        long den = small(1, 7);
        Rat r(n, den);
        r.canonicalize();
        return r;
    }
    Rat rat_nonzero() {
        for (;;) {
            Rat r = rat();
            if (r != 0) return r;
        }
    }
    Poly poly(int nterms, int qdeg = 3, int xdeg = 2, int ydeg = 0) {
        Poly p;
        for (int i = 0; i < nterms; ++i) {
            Mono m;
            m.q = static_cast<int32_t>(small(-qdeg, qdeg));
            m.x = static_cast<int32_t>(small(0, xdeg));
            m.y = static_cast<int32_t>(small(0, ydeg));
            p.add_term(m, rat());
        }
        return p;
    }
    Poly poly_nonzero(int nterms, int qdeg = 3, int xdeg = 2, int ydeg = 0) {
        for (;;) {
            Poly p = poly(nterms, qdeg, xdeg, ydeg);
            if (!p.is_zero()) return p;
        }
    }
    RatFun ratfun(int nterms = 3, int qdeg = 2, int xdeg = 2, int ydeg = 0) {
        return RatFun(poly(nterms, qdeg, xdeg, ydeg), poly_nonzero(nterms, qdeg, xdeg, ydeg));
    }
    RatFun ratfun_nonzero(int nterms = 3, int qdeg = 2, int xdeg = 2, int ydeg = 0) {
        for (;;) {
            RatFun f = ratfun(nterms, qdeg, xdeg, ydeg);
            if (!f.is_zero()) return f;
        }
    }
};

} // namespace qtel::testing

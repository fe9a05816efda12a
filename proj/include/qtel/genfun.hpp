#pragma once

#include "qtel/ratfun.hpp"

#include <string>
#include <vector>

namespace qtel {

// Exact truncated power series in z with coefficients in Q(q).
struct ZSeries {
    std::vector<RatFun> c; // c[i] multiplies z^i
    long order() const { return static_cast<long>(c.size()) - 1; }
};

// gamma(n, k) = q^{-nk} (q;q)_{n+k} / (q;q)_{n-k-1}, with the reciprocal
// convention 1/(q;q)_{-1} = 0 so that gamma(n, n) = 0; equals (1-q^n) c(n,k)
RatFun gamma_val(long n, long k);

// closed form of H(k, z) as a rational function of z over Q(q)
RatFun h_closed(long k);

// direct series sum_{i=0}^{N} gamma(k+i, k) z^i
ZSeries h_series(long k, int N);

// truncated z-expansion of a rational function with nonvanishing
// denominator at z = 0
ZSeries expand_z(const RatFun& f, int N);

struct WzReport {
    bool printed_ok = false;   // the certificate exactly as printed works
    bool identity_ok = false;  // printed or re-derived certificate works
    bool corrected = false;    // a re-derived certificate was needed
    RatFun certificate;        // the working first-order certificate
    int delta = -1;            // uniform shift with series = z^delta * closed
    long delta_checked_k = -1; // shift verified for all k up to here
    std::string detail;
};

// (i) checks the first-order contiguous identity for H_1(k, i, z) =
// gamma(k+i, k) z^i after division by H_1, re-deriving the certificate by a
// linear ansatz when the printed one fails; (ii) compares h_series against
// the z-expansion of h_closed and determines the uniform monomial shift
WzReport verify_h(long k_max, int N);

struct FSeriesReport {
    bool match = false;
    long first_mismatch = -1;
    ZSeries direct;  // sum_n (sum_k gamma(n,k) jhat(k)) z^n
    ZSeries via_h;   // the interchanged double sum through H(k, z)
};

// both computations of the generating function of (1 - q^n) J_p(n),
// truncated at order N; delta < 0 means: determine it first
FSeriesReport f_series(int p, int N, int delta = -1);

std::string genfun_report_json(const WzReport& wz, const std::vector<FSeriesReport>& fs,
                               const std::vector<int>& ps);

} // namespace qtel

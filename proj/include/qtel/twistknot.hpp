#pragma once

#include "qtel/telescope.hpp"

#include <string>
#include <vector>

namespace qtel {

// Number of full twists; p = 0 is the unknot and rejected everywhere.
// K_1 is the trefoil, K_{-1} the figure-eight knot.
struct TwistParam {
    int p;
    explicit TwistParam(int p_) : p(p_) {
        if (p == 0) throw DomainError("p = 0 (unknot) is not in the twist-knot family");
    }
};

// ---- cyclotomic kernel -------------------------------------------------

// c(n, k) as a hypergeometric term:
//   t(n,k) = -q^{-(k+1)} (1 - q^{1-n+k})(1 - q^{1+n+k})
//   s(n,k) = (1-q^{-n})(1-q^{n+k+1}) / ((1-q^{k-n})(1-q^{n+1}))
// with the Pochhammer product form as the exact evaluator and c(n,k) = 0
// for k >= n >= 1.
HyperTerm cyclotomic_kernel();

// exact value via the Pochhammer product form
RatFun cyclo_kernel_value(long n, long k);
// the same number via the quantum-integer ratio {n-k}...{n+k}/{n}
RatFun cyclo_kernel_value_qint(long n, long k);
// c(n, k0) as a rational function of x for fixed k0
RatFun cyclo_kernel_fixed_k(long k);

// ---- cyclotomic and colored Jones functions ----------------------------

// exact finite sum; a Laurent polynomial in q
RatFun jhat(int p, long n);
// J_p(n) = sum_k c(n,k) jhat_p(k)
RatFun colored_jones(int p, long n);

std::vector<RatFun> jhat_values(int p, long nmax);
// the sweep over n is independent per entry and runs in parallel on demand
std::vector<RatFun> colored_jones_values(int p, long nmax, bool parallel = false);

// the summand of the cyclotomic-function sum, as a hypergeometric term in
// (n, k); fixed-k symbolic values are not rational in x and are not provided
HyperTerm jhat_summand(int p);

// order-|p| operator in Ek with leading coefficient 1, found by
// single-certificate telescoping on the summand
BiOreOp jhat_recursion(int p);

// ---- the inhomogeneous noncommutative A-polynomial ---------------------

struct PipelineOptions {
    FindOptions find;
    bool parallel = false;
};

// full pipeline: kernel + cyclotomic recursion + multi-certificate
// telescoping; result normalized with boundary term attached
TelescopeResult noncomm_A(int p, const PipelineOptions& opt = {});

// ---- q = 1 specialization and the AJ factorization ----------------------

// bivariate polynomials in (Q, L): coefficients cleared, then q -> 1,
// x -> Q, E -> L
struct Q1Report {
    RatFun op_poly;    // A(L, Q, 1), vars: x slot = Q, y slot = L
    RatFun rhs_poly;   // B(Q, 1)
    bool degree_drop;  // did the L-degree drop at q = 1?
};
Q1Report specialize_q1(const InhomRec& rec);

struct AJReport {
    bool pass = false;
    RatFun a_nh_at_1;  // specialization of the computed operator
    RatFun a_poly;     // fixture A-polynomial with M^2 -> Q
    RatFun quotient;   // L-free quotient F_p when pass
    bool degree_drop = false;
    std::string detail;
};
// exact division of the q = 1 specialization by the fixture A-polynomial
// under the meridian-squared convention M^2 -> Q
AJReport check_AJ(int p, const TelescopeResult& result, const std::string& fixture_dir);

// ---- verification against stored fixtures ------------------------------

struct FixtureRec {
    InhomRec rec;
    int p = 0;
};
// recursion fixtures: thm0/p{+-1,+-2}.json, appB/p{+-3}.json
FixtureRec load_fixture_rec(int p, const std::string& fixture_dir);
// A-polynomial table: appC/apoly.json, entries in L and M
RatFun load_fixture_apoly(int p, const std::string& fixture_dir);

// exact comparison after canonicalization (equality up to units c(q) x^j)
bool rec_equal_up_to_unit(const InhomRec& a, const InhomRec& b);
// evaluation comparison of the canonical forms at `points` random rational
// (q, x) pairs drawn from the seeded generator
bool rec_equal_at_points(const InhomRec& a, const InhomRec& b, std::uint64_t seed, int points);

struct AnnihilationReport {
    bool pass = true;
    long first_failure = -1; // n where it failed
};
// ore_apply(A, J, n) == B(q^n) for n = 0..nmax-order, J from double summation
AnnihilationReport annihilation_check(const InhomRec& rec, int p, long nmax,
                                      bool parallel = false);

struct HosteShanahanReport {
    bool tried = false;
    bool holds_meridian = false; // M of the step operator = A-polynomial meridian (Q = M^2)
    bool holds_shadow = false;   // M of the step operator = Q directly
    std::string detail;
};
// conjectural second-order step operator in the twist parameter applied to
// the q = 1 specializations of the stored fixtures p, p+1, p+2 (same sign
// side); both variable conventions are tried and reported, never fatal
HosteShanahanReport hoste_shanahan_check(int p, const std::string& fixture_dir);

// resolves the fixture directory: explicit flag, then QTEL_FIXTURES, then
// the build-time default
std::string fixture_dir_or_default(const std::string& flag_value = "");

} // namespace qtel

#pragma once

#include "qtel/hyperterm.hpp"
#include "qtel/linsolve.hpp"
#include "qtel/oreop.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qtel {

// the p certificates C_0 .. C_{p-1}, rational in x and y
using CertSet = std::vector<RatFun>;

struct TelescopeResult {
    InhomRec rec;          // operator in E plus the telescoped boundary term
    CertSet certs;         // C_0 .. C_{p-1}
    Poly denominator;      // ansatz denominator used for C_{p-1}
    int boundary_sign = 0; // rhs = sign * G(n, 0); 0 until boundary_rhs ran
};

// The fixed certificate denominator, cleared of negative x-powers (harmless:
// x-powers are units of the coefficient field and get absorbed into the
// numerator unknowns).
//   p > 0: q^{pk} prod_{i=1-p}^{p-1} (1 - q^{k-n-i})
//   p < 0: prod_{i=1}^{2|p|} (1 - q^{k-n+|p|-i})
Poly default_denominator(int p);

// R_i(n,k) = r_i(k) c(n,k+p)/c(n,k+i) = r_i(k) prod_{j=0}^{p-i-1} t(n,k+i+j);
// rec must be normalized with leading coefficient 1
std::vector<RatFun> build_R(const BiOreOp& rec, const RatFun& t);

// back-substitution C_{j-1}(n,k) = C_j(n,k-1) + C_{p-1}(n,k) R_j(n,k-1),
// from j = p-1 down; returns [C_0, ..., C_{p-1}] with C_{p-1} = c_top
CertSet chain_certs(const RatFun& c_top, const std::vector<RatFun>& R);

// Core solver: unknowns a_0..a_m and the numerator coefficients of
// C_{p-1} = N/D with N = sum d_i(x) y^i, deg_y N <= rd. The functional
// identity is assembled as one cleared polynomial equation in y, powers of y
// are matched and the homogeneous system solved exactly. nullopt when only
// the trivial solution exists. rec.rhs is zero until boundary_rhs runs.
std::optional<TelescopeResult> multicert_telescope(const HyperTerm& kernel,
                                                   const BiOreOp& jhat_rec, int p, int m, int rd,
                                                   const Poly& D);

// independent values used to orient and check the boundary term
struct BoundaryOracle {
    std::function<RatFun(long)> jhat_value; // the holonomic factor at small indices
    std::function<RatFun(long)> sum_value;  // the full sum J(n)
    long check_to = 8;                      // annihilation check range for the sign
};

// the telescoped boundary term; picks the sign passing the annihilation
// oracle, stores it in result.boundary_sign and returns the rhs
RatFun boundary_rhs(TelescopeResult& result, const HyperTerm& kernel,
                    const BoundaryOracle& oracle);

// exact symbolic residual checks of the certificate equations; every
// returned TelescopeResult must pass them
struct ResidualReport {
    bool ok = true;
    std::string detail;
};
ResidualReport verify_telescope(const TelescopeResult& result, const HyperTerm& kernel,
                                const BiOreOp& jhat_rec);

struct FindOptions {
    int max_order_extra = 2;   // orders above the target before giving up
    int max_numdeg_extra = 10; // numerator degree escalation range
    int max_denom_extra = 2;   // extra (1 - q^{k-n-i}) factors on D
    double budget_seconds = 0; // 0 = unlimited
    bool verify = true;        // run verify_telescope on success
};

// escalation driver: m from the target order (2p-1 for p>0, 2|p| for p<0)
// upward, numerator degree from a structural bound upward, denominator from
// default_denominator with optional extra factors; throws SearchExhausted
// with diagnostics when the configured bounds run out
TelescopeResult find_recursion(const HyperTerm& kernel, const BiOreOp& jhat_rec, int p,
                               const BoundaryOracle& oracle, const FindOptions& opt = {});

// ---- classical single-certificate telescoping -------------------------

// minimal-order operator with certificate Cert such that
//   sum_i a_i(n) F(n+i, k) = (Ek - 1)(Cert * F)
// exactly; rhs of the returned recursion is the boundary term of summation
// over k >= 0
std::optional<std::pair<InhomRec, RatFun>> qzeilberger(const HyperTerm& term, int max_order);

// Termwise double-shift relation
//   sum_{i<=I, j<=J} u_ij(n) F(n+i, k+j) = 0
// with the boundary combination forced to vanish, so the collapsed operator
// sum_i (sum_j u_ij) E^i annihilates the sum over k >= 0. Returns nullopt
// when no such relation exists at this (I, J).
std::optional<OreOp> celine_q(const HyperTerm& term, int order_i, int shifts_j);

} // namespace qtel

#include "qtel/telescope.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qtel {

namespace {

const Poly kOne(1);

Poly var_x() { return Poly::variable(Var::X); }
Poly var_y() { return Poly::variable(Var::Y); }

// prod_{l=0}^{i-1} s(q^l x, y) for i = 0..m
std::vector<RatFun> shift_products(const RatFun& s, int m) {
    std::vector<RatFun> out(static_cast<size_t>(m) + 1);
    out[0] = RatFun(1);
    for (int i = 1; i <= m; ++i)
        out[static_cast<size_t>(i)] = out[static_cast<size_t>(i) - 1] * s.shift(Var::X, i - 1);
    return out;
}

// least common multiple of the denominators
Poly denominator_lcm(const std::vector<RatFun>& terms) {
    Poly l(1);
    for (auto& t : terms)
        if (!t.den().is_one()) l = poly_lcm(l, t.den());
    return l;
}

// ---- factored products -------------------------------------------------
//
// Products of rational functions kept as explicit factor lists. Factors are
// matched syntactically (everything is built from the same shifted
// primitives), so sums over a common denominator need no gcd at all: the
// common denominator is a per-factor exponent maximum and only polynomial
// multiplication is left.
struct FProd {
    Rat coeff = Rat(1);
    Mono mono;                // q Laurent; x, y, z exponents may be negative
    std::map<Poly, int> fac;  // canonical primitive factor -> exponent

    void mul_poly(Poly f, int e) {
        if (f.is_zero()) throw InternalError("zero factor in a product");
        Rat c;
        Mono mo;
        Poly prim;
        f.factor_monomial(c, mo, prim);
        coeff *= rat_pow(c, e);
        mono = mono + Mono{mo.q * e, mo.x * e, mo.y * e, mo.z * e};
        if (!prim.is_one()) {
            auto it = fac.find(prim);
            if (it == fac.end()) fac.emplace(std::move(prim), e);
            else {
                it->second += e;
                if (it->second == 0) fac.erase(it);
            }
        }
    }
    void mul_ratfun(const RatFun& f, int e = 1) {
        if (f.is_zero()) throw InternalError("zero factor in a product");
        mul_poly(f.num(), e);
        if (!f.den().is_one()) mul_poly(f.den(), -e);
    }
    FProd& operator*=(const FProd& o) {
        coeff *= o.coeff;
        mono = mono + o.mono;
        for (auto& [f, e] : o.fac) {
            auto it = fac.find(f);
            if (it == fac.end()) fac.emplace(f, e);
            else {
                it->second += e;
                if (it->second == 0) fac.erase(it);
            }
        }
        return *this;
    }
    FProd shifted(Var v, int a) const {
        FProd r;
        r.coeff = coeff;
        r.mono = mono;
        r.mono.q += a * mono.get(v);
        for (auto& [f, e] : fac) r.mul_poly(f.shift(v, a), e);
        return r;
    }
};

FProd fprod_from(const RatFun& f) {
    FProd r;
    r.mul_ratfun(f);
    return r;
}

// exact zero test of a sum of factored products; no rational-function
// normalization anywhere, only polynomial multiplication
bool fprod_sum_is_zero(const std::vector<FProd>& terms) {
    if (terms.empty()) return true;
    std::map<Poly, int> denom; // per-factor exponent of the common denominator
    Mono shift;                // common monomial clearing
    bool first = true;
    for (auto& t : terms) {
        for (auto& [f, e] : t.fac)
            if (e < 0) {
                auto it = denom.find(f);
                if (it == denom.end()) denom.emplace(f, -e);
                else it->second = std::max(it->second, -e);
            }
        if (first) {
            shift = t.mono;
            first = false;
        } else {
            shift.q = std::min(shift.q, t.mono.q);
            shift.x = std::min(shift.x, t.mono.x);
            shift.y = std::min(shift.y, t.mono.y);
            shift.z = std::min(shift.z, t.mono.z);
        }
    }
    // power cache
    std::map<std::pair<Poly, int>, Poly> powers;
    auto power = [&](const Poly& f, int e) -> const Poly& {
        auto key = std::make_pair(f, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, f.pow(static_cast<unsigned>(e))).first;
        return it->second;
    };
    Poly sum;
    for (auto& t : terms) {
        Poly num = Poly::monomial(t.coeff, t.mono - shift);
        for (auto& [f, e] : t.fac)
            if (e > 0) num *= power(f, e);
        for (auto& [f, e] : denom) {
            auto it = t.fac.find(f);
            int have = it != t.fac.end() && it->second < 0 ? -it->second : 0;
            if (e - have > 0) num *= power(f, e - have);
        }
        sum += num;
    }
    return sum.is_zero();
}

struct AssembledSystem {
    FFMatrix matrix;
    std::vector<RatFun> column_scale; // true unknown = solved / scale
};

// columns are polynomials in (q, x, y); main rows match coefficients of the
// y-powers. Column content in (q, x) is stripped and recorded so the true
// unknowns can be recovered afterwards.
AssembledSystem split_by_y(std::vector<Poly> columns, int extra_rows) {
    int ylo = 0, yhi = 0;
    bool first = true;
    for (auto& c : columns) {
        if (c.is_zero()) continue;
        int lo = c.ord(Var::Y), hi = c.deg(Var::Y);
        if (first) {
            ylo = lo;
            yhi = hi;
            first = false;
        } else {
            ylo = std::min(ylo, lo);
            yhi = std::max(yhi, hi);
        }
    }
    if (ylo < 0) throw InternalError("assembly left negative y-powers");

    std::vector<RatFun> scales(columns.size(), RatFun(1));
    for (size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].is_zero()) continue;
        Rat cont;
        Mono mono;
        Poly prim;
        columns[c].factor_monomial(cont, mono, prim);
        mono.y = 0; // y-content carries equation structure, keep it
        Mono neg{-mono.q, -mono.x, 0, 0};
        columns[c] = columns[c].mul_mono(Rat(1) / cont, neg);
        scales[c] = RatFun(Poly::monomial(cont, mono));
    }

    int nrows = yhi - ylo + 1 + extra_rows;
    AssembledSystem out{FFMatrix(nrows, static_cast<int>(columns.size())), std::move(scales)};
    for (int e = ylo; e <= yhi; ++e)
        for (size_t c = 0; c < columns.size(); ++c)
            out.matrix.at(e - ylo, static_cast<int>(c)) = columns[c].coeff_of(Var::Y, e);
    return out;
}

// tie-break among nullspace vectors: fewest total terms, deterministic order
// breaks remaining ties (map-backed polynomials give a stable ordering)
const std::vector<RatFun>* pick_solution(const std::vector<std::vector<RatFun>>& basis,
                                         int a_count) {
    const std::vector<RatFun>* best = nullptr;
    size_t best_w = 0;
    for (auto& v : basis) {
        bool a_nonzero = false;
        for (int i = 0; i < a_count; ++i)
            if (!v[static_cast<size_t>(i)].is_zero()) {
                a_nonzero = true;
                break;
            }
        if (!a_nonzero) continue;
        size_t w = 0;
        for (auto& e : v) w += e.num().nterms() + e.den().nterms();
        if (!best || w < best_w) {
            best = &v;
            best_w = w;
        }
    }
    return best;
}

} // namespace

Poly default_denominator(int p) {
    if (p == 0) throw DomainError("p = 0 has no certificate denominator");
    Poly d(1);
    const Poly x = var_x(), y = var_y();
    if (p > 0) {
        d = Poly::variable(Var::Y, p);
        for (int i = 1 - p; i <= p - 1; ++i) {
            // (1 - q^{k-n-i}), cleared of negative powers of x and q
            if (i <= 0) d *= x - Poly::variable(Var::Q, -i) * y;
            else d *= Poly::variable(Var::Q, i) * x - y;
        }
    } else {
        int P = -p;
        for (int i = 1; i <= 2 * P; ++i) {
            int e = P - i; // (1 - q^{k-n+|p|-i})
            if (e >= 0) d *= x - Poly::variable(Var::Q, e) * y;
            else d *= Poly::variable(Var::Q, -e) * x - y;
        }
    }
    return d;
}

std::vector<RatFun> build_R(const BiOreOp& rec, const RatFun& t) {
    int P = rec.order();
    if (P < 1) throw DomainError("build_R needs an operator of order >= 1");
    if (!(rec.coeff(P) == RatFun(1)))
        throw DomainError("build_R: recursion must be normalized with leading coefficient 1");
    std::vector<RatFun> R(static_cast<size_t>(P) + 1);
    RatFun tail(1); // prod_{l=i}^{P-1} t(x, q^l y), grown from the top down
    R[static_cast<size_t>(P)] = RatFun(1);
    for (int i = P - 1; i >= 0; --i) {
        tail = tail * t.shift(Var::Y, i);
        R[static_cast<size_t>(i)] = rec.coeff(i) * tail;
    }
    return R;
}

CertSet chain_certs(const RatFun& c_top, const std::vector<RatFun>& R) {
    if (R.empty()) throw DomainError("chain_certs: empty R");
    int P = static_cast<int>(R.size()) - 1;
    CertSet certs(static_cast<size_t>(P));
    certs[static_cast<size_t>(P - 1)] = c_top;
    for (int j = P - 1; j >= 1; --j)
        certs[static_cast<size_t>(j - 1)] = certs[static_cast<size_t>(j)].shift(Var::Y, -1) +
                                            c_top * R[static_cast<size_t>(j)].shift(Var::Y, -1);
    return certs;
}

namespace {

// The same back-substitution with factored denominators: sums are formed
// over the per-factor maximum denominator and reduced by gcd against each
// small factor separately, so no gcd on the full denominator product ever
// runs. Used by the pipeline where the certificates grow large.
struct FracF {
    Poly num;
    FProd den; // factor exponents >= 0 mean denominator

    RatFun to_ratfun() const {
        // trial division handles the irreducible factors completely; the
        // evaluation certificate decides whether anything composite is left
        // sharing a factor with the numerator, and only then pays for a
        // full gcd
        Poly n = num;
        Poly d = Poly::monomial(den.coeff, den.mono);
        for (auto& [f, e] : den.fac) {
            int left = e;
            Poly n2;
            while (left > 0 && try_divexact(n, f, n2)) {
                n = std::move(n2);
                --left;
            }
            if (left > 0) d *= f.pow(static_cast<unsigned>(left));
        }
        if (poly_coprime_certified(n, d)) return RatFun::from_reduced(std::move(n), std::move(d));
        return RatFun(n, d);
    }
};


FracF frac_shift_y(const FracF& a, int s) {
    FracF r;
    r.num = a.num.shift(Var::Y, s);
    r.den = a.den.shifted(Var::Y, s);
    return r;
}

FracF frac_mul(const FracF& a, const FracF& b) {
    FracF r;
    r.num = a.num * b.num;
    r.den = a.den;
    r.den *= b.den;
    return r;
}

FracF frac_add(const FracF& a, const FracF& b) {
    // common denominator by per-factor maximum
    FracF r;
    r.den.coeff = a.den.coeff * b.den.coeff;
    r.den.mono = a.den.mono + b.den.mono;
    std::map<Poly, int> merged;
    for (auto& [f, e] : a.den.fac) merged[f] = e;
    for (auto& [f, e] : b.den.fac) {
        auto it = merged.find(f);
        if (it == merged.end()) merged[f] = e;
        else it->second = std::max(it->second, e);
    }
    Poly compA = Poly::monomial(b.den.coeff, b.den.mono);
    Poly compB = Poly::monomial(a.den.coeff, a.den.mono);
    for (auto& [f, e] : merged) {
        auto ia = a.den.fac.find(f);
        auto ib = b.den.fac.find(f);
        int ea = ia == a.den.fac.end() ? 0 : ia->second;
        int eb = ib == b.den.fac.end() ? 0 : ib->second;
        if (e - ea > 0) compA = compA * f.pow(static_cast<unsigned>(e - ea));
        if (e - eb > 0) compB = compB * f.pow(static_cast<unsigned>(e - eb));
    }
    r.num = a.num * compA + b.num * compB;
    r.den.fac = std::move(merged);
    // the coeff/mono above double-count one side; fold them properly
    r.den.coeff = a.den.coeff * b.den.coeff;
    r.den.mono = a.den.mono + b.den.mono;
    return r;
}

CertSet chain_certs_factored(const RatFun& c_top_r, const Poly& D,
                             const std::vector<RatFun>& jr_coeffs, const RatFun& t, int P) {
    // c_top = N / D with D handed over separately so its factors stay known
    FracF c_top;
    c_top.num = c_top_r.num();
    c_top.den.mul_poly(c_top_r.den(), 1);
    (void)D;

    // R_j factored: r_j(y) * prod t-shifts
    std::vector<FracF> R(static_cast<size_t>(P) + 1);
    {
        FProd tail;
        for (int j = P - 1; j >= 0; --j) {
            tail *= fprod_from(t).shifted(Var::Y, j);
            FracF rj;
            rj.num = Poly(1);
            FProd whole = tail;
            whole.mul_ratfun(jr_coeffs[static_cast<size_t>(j)]);
            // split the factored product into numerator and denominator parts
            rj.num = Poly::monomial(whole.coeff, Mono{});
            Mono pos = whole.mono, neg;
            if (pos.q < 0) { neg.q = -pos.q; pos.q = 0; }
            if (pos.x < 0) { neg.x = -pos.x; pos.x = 0; }
            if (pos.y < 0) { neg.y = -pos.y; pos.y = 0; }
            if (pos.z < 0) { neg.z = -pos.z; pos.z = 0; }
            rj.num = rj.num.mul_mono(Rat(1), pos);
            rj.den.mono = neg;
            for (auto& [f, e] : whole.fac) {
                if (e > 0) rj.num = rj.num * f.pow(static_cast<unsigned>(e));
                else rj.den.fac[f] += -e;
            }
            R[static_cast<size_t>(j)] = std::move(rj);
        }
    }

    CertSet certs(static_cast<size_t>(P));
    FracF cur = c_top;
    certs[static_cast<size_t>(P - 1)] = c_top_r;
    for (int j = P - 1; j >= 1; --j) {
        FracF next = frac_add(frac_shift_y(cur, -1),
                              frac_mul(c_top, frac_shift_y(R[static_cast<size_t>(j)], -1)));
        certs[static_cast<size_t>(j - 1)] = next.to_ratfun();
        cur = std::move(next);
    }
    return certs;
}

} // namespace

namespace {

// Shared assembly for the telescoping equations
//   sum_i a_i S_i(x, y) + sum_j C(x, q^{1-j} y) W_j(x, q^{-j} y) = 0
// with C = N/D, N = sum_i d_i(x) y^i, deg_y N <= rd. Unknowns a_i, d_i.
struct MasterProblem {
    const RatFun& s;
    const std::vector<RatFun>& W;
    const Poly& D;
    int m;
    int rd;
};

struct MasterSolution {
    std::vector<RatFun> a;
    RatFun c_top; // N/D
};

std::optional<MasterSolution> solve_master(const MasterProblem& pr) {
    int P = static_cast<int>(pr.W.size()) - 1;
    std::vector<RatFun> S = shift_products(pr.s, pr.m);

    // certificate blocks W_j(x, q^{-j} y) / D(x, q^{1-j} y)
    std::vector<RatFun> block(static_cast<size_t>(P) + 1);
    for (int j = 0; j <= P; ++j)
        block[static_cast<size_t>(j)] =
            pr.W[static_cast<size_t>(j)].shift(Var::Y, -j) / RatFun(pr.D.shift(Var::Y, 1 - j));

    std::vector<RatFun> all;
    for (int i = 0; i <= pr.m; ++i) all.push_back(S[static_cast<size_t>(i)]);
    for (int j = 0; j <= P; ++j) all.push_back(block[static_cast<size_t>(j)]);
    Poly lcm = denominator_lcm(all);

    std::vector<Poly> eblock(static_cast<size_t>(P) + 1);
    for (int j = 0; j <= P; ++j) {
        const RatFun& b = block[static_cast<size_t>(j)];
        eblock[static_cast<size_t>(j)] = b.num() * divexact(lcm, b.den());
    }

    // columns: a_0..a_m then d_0..d_rd
    std::vector<Poly> cols;
    cols.reserve(static_cast<size_t>(pr.m + pr.rd + 2));
    for (int i = 0; i <= pr.m; ++i)
        cols.push_back(S[static_cast<size_t>(i)].num() *
                       divexact(lcm, S[static_cast<size_t>(i)].den()));
    for (int i = 0; i <= pr.rd; ++i) {
        Poly col;
        for (int j = 0; j <= P; ++j) {
            Mono mo;
            mo.q = (1 - j) * i; // N(x, q^{1-j} y) puts q^{(1-j) i} on y^i
            mo.y = i;
            col += eblock[static_cast<size_t>(j)].mul_mono(Rat(1), mo);
        }
        cols.push_back(std::move(col));
    }

    AssembledSystem sys = split_by_y(std::move(cols), 0);
    sys.matrix.compress();
    const bool trace = std::getenv("QTEL_TRACE") != nullptr;
    auto tick = std::chrono::steady_clock::now();
    auto lap = [&](const char* what) {
        if (!trace) return;
        auto now = std::chrono::steady_clock::now();
        fprintf(stderr, "[master] %s %.2fs\n", what,
                std::chrono::duration<double>(now - tick).count());
        tick = now;
    };
    auto basis = nullspace(sys.matrix);
    lap("nullspace");
    const auto* sol = pick_solution(basis, pr.m + 1);
    if (!sol) return std::nullopt;

    MasterSolution out;
    out.a.resize(static_cast<size_t>(pr.m) + 1);
    for (int i = 0; i <= pr.m; ++i)
        out.a[static_cast<size_t>(i)] =
            (*sol)[static_cast<size_t>(i)] / sys.column_scale[static_cast<size_t>(i)];
    RatFun N;
    for (int i = 0; i <= pr.rd; ++i) {
        RatFun di = (*sol)[static_cast<size_t>(pr.m + 1 + i)] /
                    sys.column_scale[static_cast<size_t>(pr.m + 1 + i)];
        if (!di.is_zero()) N += di * RatFun(Poly::variable(Var::Y, i));
    }
    if (N.is_zero()) return std::nullopt; // a zero certificate telescopes nothing
    lap("recover");
    out.c_top = N / RatFun(pr.D);
    lap("c_top");
    return out;
}

} // namespace

std::optional<TelescopeResult> multicert_telescope(const HyperTerm& kernel,
                                                   const BiOreOp& jhat_rec, int p, int m, int rd,
                                                   const Poly& D) {
    if (D.is_zero()) throw DomainError("ansatz denominator is zero");
    int P = jhat_rec.order();
    if (P < 1 || P != (p > 0 ? p : -p))
        throw DomainError("multicert_telescope: recursion order must be |p|");
    std::vector<RatFun> R = build_R(jhat_rec, kernel.t);
    auto sol = solve_master(MasterProblem{kernel.s, R, D, m, rd});
    if (!sol) return std::nullopt;

    TelescopeResult out;
    out.rec.op = OreOp(sol->a);
    if (out.rec.op.is_zero()) return std::nullopt;
    // plain rational arithmetic wins while the chain is short; the factored
    // path avoids large-denominator gcds once it is not
    out.certs = P >= 3 ? chain_certs_factored(sol->c_top, D, jhat_rec.coeffs(), kernel.t, P)
                       : chain_certs(sol->c_top, R);
    out.denominator = D;
    return out;
}

RatFun boundary_rhs(TelescopeResult& result, const HyperTerm& kernel,
                    const BoundaryOracle& oracle) {
    if (!kernel.has_fixed_k())
        throw DomainError("boundary term needs fixed-k symbolic kernel values");
    // G(n, 0) = sum_j C_j(n, 0) c(n, j) \hat J(j)
    RatFun g0;
    for (size_t j = 0; j < result.certs.size(); ++j) {
        RatFun cj;
        try {
            cj = result.certs[j].subst(Var::Y, Rat(1));
        } catch (const PoleError&) {
            throw PoleError("certificate C_" + std::to_string(j) + " has a pole at k = 0");
        }
        if (cj.is_zero()) continue;
        g0 += cj * kernel.fixed_k(static_cast<long>(j)) * oracle.jhat_value(static_cast<long>(j));
    }

    // orientation is fixed by the annihilation oracle; the check runs on
    // the denominator-cleared pair so that unit poles of the raw solution
    // (the pair is only determined up to a unit) cannot get in the way
    int ord = result.rec.op.order();
    long upto = oracle.check_to;
    std::vector<RatFun> values;
    for (long n = 0; n <= upto + ord; ++n) values.push_back(oracle.sum_value(n));
    for (int sign : {-1, +1}) {
        RatFun b = sign < 0 ? -g0 : g0;
        CanonicalRec cleared = canonicalize(InhomRec{result.rec.op, b});
        bool ok = true;
        for (long n = 0; n <= upto && ok; ++n) {
            try {
                RatFun lhs = cleared.rec.op.apply(values, 0, n);
                RatFun rhs =
                    cleared.rec.rhs.is_zero() ? RatFun() : cleared.rec.rhs.subst_qpow(Var::X, n);
                if (!(lhs == rhs)) ok = false;
            } catch (const PoleError&) {
                ok = false;
            }
        }
        if (ok) {
            result.boundary_sign = sign;
            result.rec.rhs = b;
            return b;
        }
    }
    throw InternalError("telescoped boundary fails the annihilation oracle with either sign");
}

ResidualReport verify_telescope(const TelescopeResult& result, const HyperTerm& kernel,
                                const BiOreOp& jhat_rec) {
    ResidualReport rep;
    int P = jhat_rec.order();
    if (static_cast<int>(result.certs.size()) != P) {
        rep.ok = false;
        rep.detail = "certificate count does not match the recursion order";
        return rep;
    }
    const RatFun& c_top = result.certs.back();
    int m = result.rec.op.order();

    // factored building blocks, shared shift instances throughout
    FProd fs = fprod_from(kernel.s);
    FProd ft = fprod_from(kernel.t);
    std::vector<FProd> S(static_cast<size_t>(m) + 1);
    for (int i = 1; i <= m; ++i) {
        S[static_cast<size_t>(i)] = S[static_cast<size_t>(i - 1)];
        S[static_cast<size_t>(i)] *= fs.shifted(Var::X, i - 1);
    }
    // R_j = r_j(y) prod_{l=j}^{P-1} t(x, q^l y)
    std::vector<FProd> R(static_cast<size_t>(P) + 1);
    {
        FProd tail;
        for (int j = P - 1; j >= 0; --j) {
            tail *= ft.shifted(Var::Y, j);
            R[static_cast<size_t>(j)] = tail;
            R[static_cast<size_t>(j)].mul_ratfun(jhat_rec.coeff(j));
        }
    }
    FProd ctop_f = fprod_from(c_top);

    auto lhs_terms = [&]() {
        std::vector<FProd> terms;
        for (int i = 0; i <= m; ++i) {
            if (result.rec.op.coeff(i).is_zero()) continue;
            FProd t = S[static_cast<size_t>(i)];
            t.mul_ratfun(result.rec.op.coeff(i));
            terms.push_back(std::move(t));
        }
        return terms;
    };

    // coefficient of Ek^0 of the functional identity:
    //   sum_i a_i S_i + C_{P-1}(x, qy) R_0 + C_0 = 0
    {
        std::vector<FProd> terms = lhs_terms();
        FProd t = ctop_f.shifted(Var::Y, 1);
        t *= R[0];
        terms.push_back(std::move(t));
        if (!result.certs[0].is_zero()) terms.push_back(fprod_from(result.certs[0]));
        if (!fprod_sum_is_zero(terms)) {
            rep.ok = false;
            rep.detail = "Ek^0 residual nonzero";
            return rep;
        }
    }
    // chain equations, coefficients of Ek^j for 1 <= j <= P-1:
    //   C_{j-1}(x, qy) - C_j - C_{P-1}(x, qy) R_j = 0
    for (int j = 1; j <= P - 1; ++j) {
        std::vector<FProd> terms;
        if (!result.certs[static_cast<size_t>(j - 1)].is_zero())
            terms.push_back(fprod_from(result.certs[static_cast<size_t>(j - 1)]).shifted(Var::Y, 1));
        if (!result.certs[static_cast<size_t>(j)].is_zero()) {
            FProd t = fprod_from(result.certs[static_cast<size_t>(j)]);
            t.coeff = -t.coeff;
            terms.push_back(std::move(t));
        }
        FProd t = ctop_f.shifted(Var::Y, 1);
        t *= R[static_cast<size_t>(j)];
        t.coeff = -t.coeff;
        terms.push_back(std::move(t));
        if (!fprod_sum_is_zero(terms)) {
            rep.ok = false;
            rep.detail = "chain residual nonzero at j = " + std::to_string(j);
            return rep;
        }
    }
    // the assembled single equation with all lower certificates eliminated:
    //   sum_i a_i S_i + sum_{j=0}^{P} C_{P-1}(x, q^{1-j} y) R_j(x, q^{-j} y) = 0
    {
        std::vector<FProd> terms = lhs_terms();
        for (int j = 0; j <= P; ++j) {
            FProd t = ctop_f.shifted(Var::Y, 1 - j);
            t *= R[static_cast<size_t>(j)].shifted(Var::Y, -j);
            terms.push_back(std::move(t));
        }
        if (!fprod_sum_is_zero(terms)) {
            rep.ok = false;
            rep.detail = "combined telescoping residual nonzero";
            return rep;
        }
    }
    return rep;
}

namespace {

Poly extended_denominator(int p, int extra) {
    Poly d = default_denominator(p);
    if (extra <= 0) return d;
    const Poly x = var_x(), y = var_y();
    // widen the i-range of (1 - q^{k-n-i}) symmetrically
    int lo, hi;
    if (p > 0) {
        lo = 1 - p;
        hi = p - 1;
    } else {
        lo = -(-p);   // smallest -i is -|p|, i.e. i up to |p|
        hi = -p - 1;  // largest exponent |p|-1
    }
    for (int e = 1; e <= extra; ++e) {
        for (int i : {lo - e, hi + e}) {
            if (i <= 0) d *= x - Poly::variable(Var::Q, -i) * y;
            else d *= Poly::variable(Var::Q, i) * x - y;
        }
    }
    return d;
}

} // namespace

TelescopeResult find_recursion(const HyperTerm& kernel, const BiOreOp& jhat_rec, int p,
                               const BoundaryOracle& oracle, const FindOptions& opt) {
    int P = p > 0 ? p : -p;
    if (jhat_rec.order() != P) throw DomainError("find_recursion: recursion order must be |p|");
    int target = p > 0 ? 2 * p - 1 : 2 * P;
    auto t0 = std::chrono::steady_clock::now();
    SolverDeadline deadline(opt.budget_seconds);
    std::ostringstream tried;

    for (int dex = 0; dex <= opt.max_denom_extra; ++dex) {
        Poly D = extended_denominator(p, dex);
        int rd0 = D.deg(Var::Y) + P + 1;
        for (int m = target; m <= target + opt.max_order_extra; ++m) {
            for (int rd = rd0; rd <= rd0 + opt.max_numdeg_extra; rd += 2) {
                if (opt.budget_seconds > 0) {
                    double el =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
                    if (el > opt.budget_seconds)
                        throw SearchExhausted("budget exhausted; tried " + tried.str());
                }
                tried << "(m=" << m << ",rd=" << rd << ",dex=" << dex << ") ";
                const bool trace = std::getenv("QTEL_TRACE") != nullptr;
                auto tA = std::chrono::steady_clock::now();
                if (trace) fprintf(stderr, "[find] try m=%d rd=%d dex=%d\n", m, rd, dex);
                auto res = multicert_telescope(kernel, jhat_rec, p, m, rd, D);
                if (trace)
                    fprintf(stderr, "[find]   solve %.2fs %s\n",
                            std::chrono::duration<double>(std::chrono::steady_clock::now() - tA)
                                .count(),
                            res ? "hit" : "miss");
                if (!res) continue;
                tA = std::chrono::steady_clock::now();
                boundary_rhs(*res, kernel, oracle);
                if (trace)
                    fprintf(stderr, "[find]   boundary %.2fs\n",
                            std::chrono::duration<double>(std::chrono::steady_clock::now() - tA)
                                .count());
                if (opt.verify) {
                    tA = std::chrono::steady_clock::now();
                    ResidualReport rep = verify_telescope(*res, kernel, jhat_rec);
                    if (trace)
                        fprintf(stderr, "[find]   verify %.2fs\n",
                                std::chrono::duration<double>(std::chrono::steady_clock::now() - tA)
                                    .count());
                    if (!rep.ok) throw InternalError("residual check failed: " + rep.detail);
                }
                return std::move(*res);
            }
        }
    }
    throw SearchExhausted("no telescoping relation found; tried " + tried.str());
}

// ---- classical single-certificate telescoping -------------------------

std::optional<std::pair<InhomRec, RatFun>> qzeilberger(const HyperTerm& term, int max_order) {
    if (max_order < 1) throw DomainError("qzeilberger needs max_order >= 1");
    const RatFun& s = term.s;
    const RatFun& t = term.t;

    // Candidate denominators grow from the denominators of the building
    // quotients outward: y-shift windows of den(t) * den(S_i); the rescue
    // levels add the numerator factors of t. Cheap candidates are tried
    // across all orders before expensive ones, orders ascending within a
    // level, so the minimal order still wins at each level.
    for (int level = 0; level <= 3; ++level) {
        int window = level % 2;
        bool with_num = level >= 2;
        for (int m = 1; m <= max_order; ++m) {
            std::vector<RatFun> S = shift_products(s, m);
            Poly base = t.den();
            for (int i = 1; i <= m; ++i) base *= s.shift(Var::X, i - 1).den();
            if (with_num) base *= t.num();

            Poly D = Poly::variable(Var::Y, m + 1 + 2 * window);
            for (int j = -window; j <= window; ++j) D *= base.shift(Var::Y, j);
            {
                // strip x,q-monomial content; it is a unit here
                Rat c;
                Mono mo;
                Poly prim;
                D.factor_monomial(c, mo, prim);
                D = prim.mul_mono(Rat(1), Mono{0, 0, mo.y, 0});
            }
            if (D.deg(Var::Y) > 40) continue;
            if (std::getenv("QTEL_TRACE")) fprintf(stderr, "[qz] level=%d m=%d Dydeg=%d\n", level, m, D.deg(Var::Y));
            int rd0 = D.deg(Var::Y) + 1;
            for (int rd = rd0; rd <= rd0 + 4; rd += 2) {
                // W_0 = -t, W_1 = 1 turns the master equation into
                // sum_i a_i S_i = C(x, qy) t(x, y) - C(x, y)
                std::vector<RatFun> W = {-t, RatFun(1)};
                auto sol = solve_master(MasterProblem{s, W, D, m, rd});
                if (!sol) continue;

                // the certificate identity, checked exactly (factored sum)
                {
                    std::vector<FProd> terms;
                    for (int i = 0; i <= m; ++i) {
                        if (sol->a[static_cast<size_t>(i)].is_zero()) continue;
                        FProd u;
                        u.mul_ratfun(sol->a[static_cast<size_t>(i)]);
                        u.mul_ratfun(S[static_cast<size_t>(i)]);
                        terms.push_back(std::move(u));
                    }
                    FProd ct = fprod_from(sol->c_top);
                    FProd t1 = ct.shifted(Var::Y, 1);
                    t1.mul_ratfun(t);
                    t1.coeff = -t1.coeff;
                    terms.push_back(std::move(t1));
                    terms.push_back(std::move(ct));
                    if (!fprod_sum_is_zero(terms))
                        throw InternalError("qzeilberger certificate identity failed");
                }

                // boundary of summation over k >= 0: -Cert(n, 0) F(n, 0)
                RatFun b;
                RatFun cert0 = sol->c_top.subst(Var::Y, Rat(1));
                if (!cert0.is_zero()) {
                    if (!term.has_fixed_k())
                        throw DomainError(
                            "boundary term is not rational: the certificate does not vanish at "
                            "k = 0 and the term has no fixed-k symbolic values");
                    b = -(cert0 * term.fixed_k(0));
                }
                OreOp op(sol->a);
                if (op.order() < 1) continue;
                return std::make_pair(InhomRec{op, b}, sol->c_top);
            }
        }
    }
    return std::nullopt;
}

std::optional<OreOp> celine_q(const HyperTerm& term, int order_i, int shifts_j) {
    if (order_i < 0 || shifts_j < 0) throw DomainError("celine_q needs I, J >= 0");
    const int I = order_i, J = shifts_j;
    const RatFun& s = term.s;
    const RatFun& t = term.t;
    std::vector<RatFun> S = shift_products(s, I);

    // Phi_{ij} = F(n+i, k+j) / F(n, k) = S_i(x, y) prod_{l<j} t(q^i x, q^l y)
    std::vector<RatFun> phi(static_cast<size_t>((I + 1) * (J + 1)));
    for (int i = 0; i <= I; ++i) {
        RatFun ti = t.shift(Var::X, i);
        RatFun acc = S[static_cast<size_t>(i)];
        phi[static_cast<size_t>(i * (J + 1))] = acc;
        for (int j = 1; j <= J; ++j) {
            acc = acc * ti.shift(Var::Y, j - 1);
            phi[static_cast<size_t>(i * (J + 1) + j)] = acc;
        }
    }

    Poly lcm = denominator_lcm(phi);
    std::vector<Poly> cols;
    for (auto& f : phi) cols.push_back(f.num() * divexact(lcm, f.den()));

    // Boundary rows. First: summation over k >= 0 reproduces the plain sum
    // only if sum_{ij} u_ij sum_{l<j} F(n+i, l) vanishes. Second: on the
    // strip n < k <= n+I the term F(n, k) vanishes while shifted entries do
    // not, so the relation is forced there explicitly (reference point
    // (n, n); skipped for terms vanishing on the diagonal).
    std::vector<std::vector<RatFun>> extra;
    {
        std::vector<RatFun> row(phi.size());
        for (int i = 0; i <= I; ++i) {
            RatFun si1 = S[static_cast<size_t>(i)].subst(Var::Y, Rat(1));
            RatFun ti = t.shift(Var::X, i);
            RatFun chain(1); // F(n+i, l) / F(n+i, 0)
            RatFun acc;      // sum over l < j
            for (int j = 0; j <= J; ++j) {
                row[static_cast<size_t>(i * (J + 1) + j)] = si1 * acc;
                acc += chain;
                chain = chain * ti.subst_qpow(Var::Y, j);
            }
        }
        extra.push_back(std::move(row));
    }
    bool diagonal_ok = true;
    if (!term.vanishes(1, 1)) {
        try {
            for (int delta = 1; delta <= I && diagonal_ok; ++delta) {
                std::vector<RatFun> row(phi.size());
                for (int i = 0; i <= I; ++i) {
                    RatFun chain(1); // F(n+i, n+c) / F(n, n)
                    for (int l = 0; l < i; ++l)
                        chain = chain * s.shift(Var::X, l).subst_var_mono(Var::Y, Var::X, 0);
                    RatFun ti = t.shift(Var::X, i);
                    for (int c = 0; c < delta; ++c)
                        chain = chain * ti.subst_var_mono(Var::Y, Var::X, c);
                    for (int j = 0; j <= J; ++j) {
                        row[static_cast<size_t>(i * (J + 1) + j)] = chain;
                        chain = chain * ti.subst_var_mono(Var::Y, Var::X, delta + j);
                    }
                }
                extra.push_back(std::move(row));
            }
        } catch (const PoleError&) {
            diagonal_ok = false;
            while (extra.size() > 1) extra.pop_back();
        }
    }

    AssembledSystem sys = split_by_y(std::move(cols), static_cast<int>(extra.size()));
    int base_rows = sys.matrix.rows() - static_cast<int>(extra.size());
    for (size_t r = 0; r < extra.size(); ++r) {
        // rescale to the stripped columns, then clear the row denominator
        std::vector<RatFun> entries(extra[r].size());
        Poly den(1);
        for (size_t c = 0; c < extra[r].size(); ++c) {
            entries[c] = extra[r][c] / sys.column_scale[c];
            if (!entries[c].den().is_one()) den = poly_lcm(den, entries[c].den());
        }
        for (size_t c = 0; c < entries.size(); ++c) {
            if (entries[c].is_zero()) continue;
            sys.matrix.at(base_rows + static_cast<int>(r), static_cast<int>(c)) =
                entries[c].num() * divexact(den, entries[c].den());
        }
    }

    sys.matrix.compress();
    auto basis = nullspace(sys.matrix);

    // any kernel vector with a nonzero collapsed operator will do; prefer
    // the sparsest
    std::optional<OreOp> best;
    size_t best_w = 0;
    for (auto& sol : basis) {
        std::vector<RatFun> a(static_cast<size_t>(I) + 1);
        for (int i = 0; i <= I; ++i)
            for (int j = 0; j <= J; ++j) {
                size_t c = static_cast<size_t>(i * (J + 1) + j);
                a[static_cast<size_t>(i)] += sol[c] / sys.column_scale[c];
            }
        OreOp op(a);
        if (op.is_zero()) continue;
        size_t w = 0;
        for (auto& e : sol) w += e.num().nterms() + e.den().nterms();
        if (!best || w < best_w) {
            best = std::move(op);
            best_w = w;
        }
    }
    return best;
}

} // namespace qtel

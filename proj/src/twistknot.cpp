#include "qtel/twistknot.hpp"
#include "qtel/parallel.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace qtel {

namespace {

const Poly kOne(1);

Poly qpow(long e) { return Poly::variable(Var::Q, static_cast<int>(e)); }

// (q; q)_j as a polynomial, j >= 0
Poly qfac(long j) {
    Poly r(1);
    for (long i = 1; i <= j; ++i) r *= kOne - qpow(i);
    return r;
}

} // namespace

// ---- cyclotomic kernel --------------------------------------------------

RatFun cyclo_kernel_value(long n, long k) {
    if (k < 0 || n < 0) throw DomainError("kernel values need n, k >= 0");
    // (-1)^k q^{-k(k+1)/2} (q^{1-n}; q)_k (q^{1+n}; q)_k
    Poly num(1);
    for (long j = 0; j < k; ++j) {
        num *= kOne - qpow(1 - n + j);
        num *= kOne - qpow(1 + n + j);
    }
    if (k % 2) num = -num;
    num = num.mul_mono(Rat(1), Mono{static_cast<int32_t>(-k * (k + 1) / 2), 0, 0, 0});
    return RatFun(num);
}

RatFun cyclo_kernel_value_qint(long n, long k) {
    if (k < 0 || n < 0) throw DomainError("kernel values need n, k >= 0");
    if (k == 0) return RatFun(1); // the product collapses to {n}/{n}
    if (n == 0) throw DomainError("the quantum-integer form needs n >= 1 for k >= 1");
    // q^{-kn} prod_{j=n-k}^{n+k} (q^j - 1) / (q^n - 1)
    Poly num(1);
    for (long j = n - k; j <= n + k; ++j) {
        if (j == n) continue;
        num *= qpow(j) - kOne;
    }
    num = num.mul_mono(Rat(1), Mono{static_cast<int32_t>(-k * n), 0, 0, 0});
    return RatFun(num);
}

RatFun cyclo_kernel_fixed_k(long k) {
    if (k < 0) throw DomainError("fixed k must be >= 0");
    const Poly x = Poly::variable(Var::X);
    Poly num(1);
    Poly den(1);
    for (long j = 0; j < k; ++j) {
        // (1 - q^{1-n+j}) = (x - q^{1+j})/x, (1 - q^{1+n+j}) = 1 - q^{1+j} x
        num *= x - qpow(1 + j);
        num *= kOne - qpow(1 + j) * x;
        den *= x;
    }
    if (k % 2) num = -num;
    den = den.mul_mono(Rat(1), Mono{static_cast<int32_t>(k * (k + 1) / 2), 0, 0, 0});
    return RatFun(num, den);
}

HyperTerm cyclotomic_kernel() {
    HyperTerm term;
    const Poly x = Poly::variable(Var::X);
    const Poly y = Poly::variable(Var::Y);
    const Poly q = Poly::variable(Var::Q);
    // t = -q^{-(k+1)} (1 - q^{1-n+k})(1 - q^{1+n+k}) = -(x - qy)(1 - qxy)/(qxy)
    term.t = RatFun(-(x - q * y) * (kOne - q * x * y), q * x * y);
    // s = (1-q^{-n})(1-q^{n+k+1}) / ((1-q^{k-n})(1-q^{n+1}))
    //   = (x-1)(1-qxy) / ((x-y)(1-qx))
    term.s = RatFun((x - kOne) * (kOne - q * x * y), (x - y) * (kOne - q * x));
    term.eval = [](long n, long k) { return cyclo_kernel_value(n, k); };
    term.vanishes = [](long n, long k) { return n >= 1 && k >= n; };
    term.fixed_k = [](long k) { return cyclo_kernel_fixed_k(k); };
    return term;
}

// ---- cyclotomic function and colored Jones ------------------------------

RatFun jhat(int p, long n) {
    TwistParam check(p);
    if (n < 0) throw DomainError("jhat needs n >= 0");
    // sum_{k=0}^{n} q^{n(n+3)/2 + p k(k+1) + k(k-1)/2} (-1)^{n+k+1}
    //              (q^{2k+1} - 1) (q;q)_n / ((q;q)_{n+k+1} (q;q)_{n-k})
    RatFun acc;
    Poly qq_n = qfac(n);
    for (long k = 0; k <= n; ++k) {
        long e = n * (n + 3) / 2 + static_cast<long>(p) * k * (k + 1) + k * (k - 1) / 2;
        Poly num = (qpow(2 * k + 1) - kOne) * qq_n;
        num = num.mul_mono(Rat(1), Mono{static_cast<int32_t>(e), 0, 0, 0});
        if ((n + k + 1) % 2) num = -num;
        Poly den = qfac(n + k + 1) * qfac(n - k);
        acc += RatFun(num, den);
    }
    if (!acc.is_q_laurent())
        throw InternalError("cyclotomic function value is not a Laurent polynomial");
    return acc;
}

RatFun colored_jones(int p, long n) {
    TwistParam check(p);
    if (n < 0) throw DomainError("colored_jones needs n >= 0");
    RatFun acc;
    for (long k = 0; k <= n; ++k) acc += cyclo_kernel_value(n, k) * jhat(p, k);
    return acc;
}

std::vector<RatFun> jhat_values(int p, long nmax) {
    std::vector<RatFun> v(static_cast<size_t>(nmax) + 1);
    for (long n = 0; n <= nmax; ++n) v[static_cast<size_t>(n)] = jhat(p, n);
    return v;
}

std::vector<RatFun> colored_jones_values(int p, long nmax, bool parallel) {
    std::vector<RatFun> v(static_cast<size_t>(nmax) + 1);
    par::for_index(0, nmax + 1, [&](long n) { v[static_cast<size_t>(n)] = colored_jones(p, n); },
                   parallel);
    return v;
}

HyperTerm jhat_summand(int p) {
    TwistParam check(p);
    HyperTerm term;
    const Poly x = Poly::variable(Var::X);
    const Poly y = Poly::variable(Var::Y);
    const Poly q = Poly::variable(Var::Q);
    // s = -q^{n+2}(1-q^{n+1}) / ((1-q^{n+k+2})(1-q^{n+1-k}))
    //   = -q^2 x (1-qx) y / ((1-q^2 x y)(y-qx))
    term.s = RatFun(-(q * q * x * y) * (kOne - q * x), (kOne - q * q * x * y) * (y - q * x));
    // t = -q^{2p(k+1)+k}(q^{2k+3}-1)(1-q^{n-k}) / ((q^{2k+1}-1)(1-q^{n+k+2}))
    //   = -q^{2p} y^{2p} (q^3 y^2 - 1)(y-x) / ((q y^2 - 1)(1-q^2 x y))
    {
        Poly num = -(qpow(3) * y * y - kOne) * (y - x);
        Poly den = (q * y * y - kOne) * (kOne - q * q * x * y);
        Mono shift{static_cast<int32_t>(2 * p), 0, 0, 0};
        if (p > 0) shift.y = static_cast<int32_t>(2 * p);
        else den = den.mul_mono(Rat(1), Mono{0, 0, static_cast<int32_t>(-2 * p), 0});
        num = num.mul_mono(Rat(1), Mono{shift.q, 0, shift.y, 0});
        term.t = RatFun(num, den);
    }
    term.eval = [p](long n, long k) -> RatFun {
        if (n < 0 || k < 0) throw DomainError("summand values need n, k >= 0");
        if (k > n) return RatFun();
        long e = n * (n + 3) / 2 + static_cast<long>(p) * k * (k + 1) + k * (k - 1) / 2;
        Poly num = (qpow(2 * k + 1) - kOne) * qfac(n);
        num = num.mul_mono(Rat(1), Mono{static_cast<int32_t>(e), 0, 0, 0});
        if ((n + k + 1) % 2) num = -num;
        return RatFun(num, qfac(n + k + 1) * qfac(n - k));
    };
    term.vanishes = [](long n, long k) { return k > n; };
    // fixed-k values carry q^{n(n+3)/2} and are not rational in x
    return term;
}

BiOreOp jhat_recursion(int p) {
    TwistParam check(p);
    int P = p > 0 ? p : -p;
    auto zb = qzeilberger(jhat_summand(p), P);
    if (!zb) throw SearchExhausted("no order-|p| recursion found for the cyclotomic function");
    const auto& [rec, cert] = *zb;
    if (rec.op.order() != P)
        throw InternalError("cyclotomic recursion has unexpected order " +
                            std::to_string(rec.op.order()));
    if (!rec.rhs.is_zero())
        throw InternalError("cyclotomic recursion is not homogeneous");
    // rename the sequence variable: the recursion acts on k, coefficients
    // rational in y
    std::vector<RatFun> coeffs;
    for (auto& c : rec.op.coeffs()) coeffs.push_back(c.swap_vars(Var::X, Var::Y));
    return BiOreOp(std::move(coeffs)).monic();
}

// ---- pipeline ------------------------------------------------------------

TelescopeResult noncomm_A(int p, const PipelineOptions& opt) {
    TwistParam check(p);
    HyperTerm kernel = cyclotomic_kernel();
    BiOreOp rec = jhat_recursion(p);
    BoundaryOracle oracle;
    oracle.jhat_value = [p](long j) { return jhat(p, j); };
    oracle.sum_value = [p](long n) { return colored_jones(p, n); };
    TelescopeResult res = find_recursion(kernel, rec, p, oracle, opt.find);

    // canonical unit normalization, applied consistently to the operator,
    // the boundary term and the certificates
    CanonicalRec canon = canonicalize(res.rec);
    res.rec = canon.rec;
    for (auto& c : res.certs) c = canon.scale * c;
    return res;
}

// ---- q = 1 specialization ------------------------------------------------

Q1Report specialize_q1(const InhomRec& rec) {
    InhomRec work = rec;
    for (auto& c : rec.op.coeffs())
        if (!c.is_poly()) {
            work = canonicalize(rec).rec;
            break;
        }
    Q1Report rep;
    int ord = work.op.order();
    RatFun L = RatFun(Poly::variable(Var::Y));
    bool drop = true;
    for (int i = 0; i <= ord; ++i) {
        RatFun ci = work.op.coeff(i).subst_q1();
        if (i == ord) drop = ci.is_zero();
        rep.op_poly += ci * L.pow(i);
    }
    rep.degree_drop = drop;
    rep.rhs_poly = work.rhs.is_zero() ? RatFun() : work.rhs.subst_q1();
    return rep;
}

// ---- fixtures -------------------------------------------------------------

std::string fixture_dir_or_default(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("QTEL_FIXTURES")) return env;
#ifdef QTEL_FIXTURES_DEFAULT
    return QTEL_FIXTURES_DEFAULT;
#else
    return "fixtures";
#endif
}

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture file " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace

FixtureRec load_fixture_rec(int p, const std::string& fixture_dir) {
    TwistParam check(p);
    std::string sub = (p >= -2 && p <= 2) ? "thm0" : "appB";
    std::string path = fixture_dir + "/" + sub + "/p" + std::to_string(p) + ".json";
    nlohmann::json j = load_json(path);
    auto sym = ExprSymbols::operator_e();
    FixtureRec out;
    out.p = p;
    std::vector<RatFun> coeffs;
    for (auto& c : j.at("coeffs")) coeffs.push_back(parse_ratfun(c.get<std::string>(), sym));
    out.rec.op = OreOp(std::move(coeffs));
    if (!j.at("rhs").is_null())
        out.rec.rhs = parse_ratfun(j.at("rhs").get<std::string>(), sym);
    return out;
}

RatFun load_fixture_apoly(int p, const std::string& fixture_dir) {
    TwistParam check(p);
    nlohmann::json j = load_json(fixture_dir + "/appC/apoly.json");
    std::string key = std::to_string(p);
    if (!j.contains(key)) throw FixtureError("no A-polynomial entry for p = " + key);
    return parse_ratfun(j.at(key).get<std::string>(), ExprSymbols::comm_lm());
}

// ---- comparisons -----------------------------------------------------------

bool rec_equal_up_to_unit(const InhomRec& a, const InhomRec& b) {
    CanonicalRec ca = canonicalize(a);
    CanonicalRec cb = canonicalize(b);
    return ca.rec.op == cb.rec.op && ca.rec.rhs == cb.rec.rhs;
}

bool rec_equal_at_points(const InhomRec& a, const InhomRec& b, std::uint64_t seed, int points) {
    CanonicalRec ca = canonicalize(a);
    CanonicalRec cb = canonicalize(b);
    if (ca.rec.op.order() != cb.rec.op.order()) return false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(2, 211), den(1, 37);
    int done = 0;
    int guard = 0;
    while (done < points) {
        if (++guard > 100 * points) throw InternalError("cannot find pole-free sample points");
        Rat q(num(rng), den(rng)), x(num(rng), den(rng));
        q.canonicalize();
        x.canonicalize();
        if (q == 1 || q == 0 || x == 0 || x == 1) continue;
        try {
            for (int i = 0; i <= ca.rec.op.order(); ++i) {
                if (ca.rec.op.coeff(i).eval(q, x, Rat(0)) != cb.rec.op.coeff(i).eval(q, x, Rat(0)))
                    return false;
            }
            Rat ra = ca.rec.rhs.is_zero() ? Rat(0) : ca.rec.rhs.eval(q, x, Rat(0));
            Rat rb = cb.rec.rhs.is_zero() ? Rat(0) : cb.rec.rhs.eval(q, x, Rat(0));
            if (ra != rb) return false;
        } catch (const PoleError&) {
            continue;
        }
        ++done;
    }
    return true;
}

// ---- checks ---------------------------------------------------------------

AJReport check_AJ(int p, const TelescopeResult& result, const std::string& fixture_dir) {
    if (p < -3 || p > 3) throw DomainError("A-polynomial fixtures cover -3 <= p <= 3 only");
    AJReport rep;
    Q1Report q1 = specialize_q1(result.rec);
    rep.a_nh_at_1 = q1.op_poly;
    rep.degree_drop = q1.degree_drop;

    RatFun apoly = load_fixture_apoly(p, fixture_dir);
    if (!apoly.is_poly()) throw FixtureError("A-polynomial fixture is not polynomial");
    // even meridian powers, then M^2 -> Q
    Poly halved;
    for (auto& [m, c] : apoly.num().terms()) {
        if (m.x % 2 != 0) {
            rep.detail = "odd meridian exponent in the A-polynomial fixture";
            return rep;
        }
        Mono mm = m;
        mm.x /= 2;
        halved.add_term(mm, c);
    }
    rep.a_poly = RatFun(halved);

    if (q1.degree_drop) {
        rep.detail = "L-degree dropped at q = 1";
        return rep;
    }

    // exact division in L over Q(Q)
    auto dividend = q1.op_poly.num().split_by(Var::Y);
    auto divisor = halved.split_by(Var::Y);
    if (!q1.op_poly.is_poly()) throw InternalError("q = 1 specialization is not polynomial");
    int dl = dividend.empty() ? -1 : dividend.rbegin()->first;
    int vl = divisor.empty() ? -1 : divisor.rbegin()->first;
    if (vl < 0 || dl < vl) {
        rep.detail = "degree mismatch between specialization and A-polynomial";
        return rep;
    }
    std::map<int, RatFun> rem;
    for (auto& [e, c] : dividend) rem[e] = RatFun(c);
    std::map<int, RatFun> quot;
    RatFun vlead = RatFun(divisor.rbegin()->second);
    for (int e = dl; e >= vl; --e) {
        auto it = rem.find(e);
        if (it == rem.end() || it->second.is_zero()) continue;
        RatFun f = it->second / vlead;
        quot[e - vl] = f;
        for (auto& [de, dc] : divisor) {
            rem[de + e - vl] -= f * RatFun(dc);
        }
    }
    for (auto& [e, c] : rem)
        if (!c.is_zero()) {
            rep.detail = "nonzero remainder in the AJ division";
            return rep;
        }
    RatFun quotient;
    bool lfree = true;
    for (auto& [e, c] : quot) {
        if (c.is_zero()) continue;
        if (e != 0) lfree = false;
        quotient += c * RatFun(Poly::variable(Var::Y, e));
    }
    rep.quotient = quotient;
    if (!lfree) {
        rep.detail = "quotient depends on L";
        return rep;
    }
    rep.pass = true;
    return rep;
}

AnnihilationReport annihilation_check(const InhomRec& rec, int p, long nmax, bool parallel) {
    TwistParam check(p);
    int ord = rec.op.order();
    if (nmax < ord) throw DomainError("annihilation check needs nmax >= order");
    std::vector<RatFun> values = colored_jones_values(p, nmax, parallel);
    long count = nmax - ord + 1;
    std::vector<char> ok(static_cast<size_t>(count), 0);
    par::for_index(0, count,
                   [&](long n) {
                       RatFun lhs = rec.op.apply(values, 0, n);
                       RatFun rhs = rec.rhs.is_zero() ? RatFun() : rec.rhs.subst_qpow(Var::X, n);
                       ok[static_cast<size_t>(n)] = (lhs == rhs) ? 1 : 0;
                   },
                   parallel);
    AnnihilationReport rep;
    for (long n = 0; n < count; ++n)
        if (!ok[static_cast<size_t>(n)]) {
            rep.pass = false;
            rep.first_failure = n;
            break;
        }
    return rep;
}

HosteShanahanReport hoste_shanahan_check(int p, const std::string& fixture_dir) {
    HosteShanahanReport rep;
    int p2 = p + 2;
    if (p == 0 || p2 == 0 || (p < 0) != (p2 < 0)) {
        rep.detail = "triple must stay on one sign side";
        return rep;
    }
    if (p < -3 || p2 > 3) {
        rep.detail = "fixtures cover -3 <= p <= 3 only";
        return rep;
    }
    rep.tried = true;

    std::vector<RatFun> shadows;
    for (int j = p; j <= p + 2; ++j) {
        FixtureRec f = load_fixture_rec(j, fixture_dir);
        shadows.push_back(specialize_q1(f.rec).op_poly);
    }

    const Poly M = Poly::variable(Var::X);
    const Poly L = Poly::variable(Var::Y);
    RatFun m(M), l(L), one(1);
    RatFun mid = (m - one).pow(2) * (m + one).pow(2) *
                 (m.pow(4) - l * m.pow(4) + RatFun(2) * l * m.pow(3) + l * l * m * m + m * m +
                  RatFun(2) * l * m * m + RatFun(2) * l * m + l * l - l);
    RatFun big = m * m * (m - one).pow(4) * (m + one).pow(4) * (l + m).pow(4);

    auto step = [&](const RatFun& f0, const RatFun& f1, const RatFun& f2) {
        return p > 0 ? big * f0 - mid * f1 + f2 : f0 - mid * f1 + big * f2;
    };

    // meridian convention: the specialization variable Q is M^2
    {
        std::vector<RatFun> g;
        for (auto& s : shadows) {
            Poly doubled;
            for (auto& [mo, c] : s.num().terms()) {
                Mono mm = mo;
                mm.x *= 2;
                doubled.add_term(mm, c);
            }
            g.push_back(RatFun(doubled));
        }
        rep.holds_meridian = step(g[0], g[1], g[2]).is_zero();
    }
    // shadow convention: M is Q itself
    rep.holds_shadow = step(shadows[0], shadows[1], shadows[2]).is_zero();

    if (!rep.holds_meridian && !rep.holds_shadow)
        rep.detail = "step operator annihilates neither variable convention";
    return rep;
}

} // namespace qtel

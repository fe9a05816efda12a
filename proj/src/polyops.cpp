#include "qtel/poly.hpp"

#include <algorithm>

// Division and gcd over Q[q^(+/-1), x, y, z]. Units of that ring are c*q^j,
// so gcd results are normalized to have no q-monomial factor, integer-primitive
// coefficients and a positive leading term. The gcd itself is a subresultant
// PRS on the recursive view (((Q[q])[z])[y])[x], with contents removed at each
// level to control growth.

namespace qtel {

namespace {

Poly q_shift_to_ordinary(const Poly& a, int& shift) {
    shift = a.is_zero() ? 0 : a.ord(Var::Q);
    if (shift == 0) return a;
    Poly r;
    for (auto& [m, c] : a.terms()) {
        Mono mm = m;
        mm.q -= shift;
        r.add_term(mm, c);
    }
    return r;
}

Poly mul_qpow(const Poly& a, int e) {
    if (e == 0) return a;
    Mono m;
    m.q = e;
    return a.mul_mono(Rat(1), m);
}

// main-variable view helpers -------------------------------------------

int main_var_degree(const Poly& a, Var v) { return a.deg(v); }

Poly lead_coeff(const Poly& a, Var v) { return a.coeff_of(v, a.deg(v)); }

Poly mul_varpow(const Poly& a, Var v, int e) {
    Mono m;
    m.set(v, e);
    return a.mul_mono(Rat(1), m);
}

// pseudo-remainder of a by b in the variable v:
//   lc(b)^(deg a - deg b + 1) * a = q*b + prem
Poly prem(Poly a, const Poly& b, Var v) {
    int db = b.deg(v);
    Poly lb = lead_coeff(b, v);
    int e = a.deg(v) - db + 1;
    while (!a.is_zero() && a.deg(v) >= db) {
        Poly la = lead_coeff(a, v);
        a = lb * a - mul_varpow(la * b, v, a.deg(v) - db);
        --e;
    }
    if (e > 0) {
        Poly f = lb.pow(static_cast<unsigned>(e));
        a = f * a;
    }
    return a;
}

Poly gcd_rec(const Poly& a, const Poly& b, int vi);

// gcd of the v-coefficients of a (content with respect to v)
Poly content_in(const Poly& a, Var v, int vi) {
    auto parts = a.split_by(v);
    Poly g;
    for (auto& [e, p] : parts) {
        g = gcd_rec(g, p, vi + 1);
        if (g.is_one()) break;
    }
    return g;
}

Poly normalize_unit(Poly g) {
    if (g.is_zero()) return g;
    Rat c;
    Mono m;
    Poly prim;
    g.factor_monomial(c, m, prim);
    m.q = 0; // q-powers are units, keep x,y,z monomial part
    return prim.mul_mono(Rat(1), m);
}

const Var kVarOrder[4] = {Var::X, Var::Y, Var::Z, Var::Q};

// ---- evaluation pre-check ------------------------------------------------
//
// Sound coprimality test: g = gcd(A, B) evaluated at any point divides the
// gcd of the images, and when the leading v-coefficients of A and B survive
// the evaluation, deg_v(g) is preserved. So a degree-0 image gcd in every
// variable proves the gcd is a unit.

// dense univariate gcd degree over Q via an integer primitive remainder
// sequence; content is stripped every step so coefficients stay small
int univariate_gcd_degree(const std::vector<Rat>& ra, const std::vector<Rat>& rb) {
    auto to_int = [](const std::vector<Rat>& p) {
        Int l(1);
        for (auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        std::vector<Int> out(p.size());
        for (size_t i = 0; i < p.size(); ++i) {
            Rat s = p[i] * Rat(l);
            out[i] = s.get_num();
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    };
    auto strip = [](std::vector<Int>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
        if (p.empty()) return;
        Int g(0);
        for (auto& c : p) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) return;
        }
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    };
    std::vector<Int> a = to_int(ra), b = to_int(rb);
    strip(a);
    strip(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        // integer pseudo-remainder a <- lc(b)^k a mod b
        while (!a.empty() && a.size() >= b.size()) {
            Int lead = a.back();
            size_t off = a.size() - b.size();
            for (size_t i = 0; i + 1 < a.size(); ++i) {
                a[i] *= b.back();
                if (i >= off) a[i] -= lead * b[i - off];
            }
            a.pop_back();
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        strip(a);
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

// image of p with every variable except v evaluated; nullopt when v itself
// is the evaluated set (unused)
std::vector<Rat> image_in(const Poly& p, Var v, const Rat vals[4], int qshift) {
    std::vector<Rat> out;
    for (auto& [m, c] : p.terms()) {
        Rat x = c;
        for (Var w : {Var::Q, Var::X, Var::Y, Var::Z}) {
            if (w == v) continue;
            int e = m.get(w) - (w == Var::Q ? qshift : 0);
            if (e != 0) x *= rat_pow(vals[static_cast<int>(w)], e);
        }
        size_t d = static_cast<size_t>(m.get(v) - (v == Var::Q ? qshift : 0));
        if (out.size() <= d) out.resize(d + 1, Rat(0));
        out[d] += x;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// true when the evaluation certifies a trivial gcd
bool coprime_by_evaluation(const Poly& a, const Poly& b) {
    static const Rat points[3][4] = {
        {Rat(3, 2), Rat(5, 3), Rat(7, 4), Rat(9, 5)},
        {Rat(5, 2), Rat(7, 2), Rat(11, 3), Rat(13, 4)},
        {Rat(7, 3), Rat(11, 5), Rat(13, 2), Rat(17, 3)},
    };
    int qa = a.ord(Var::Q), qb = b.ord(Var::Q);
    for (Var v : {Var::Q, Var::X, Var::Y, Var::Z}) {
        bool ina = a.depends_on(v), inb = b.depends_on(v);
        if (!ina || !inb) continue;
        int da = a.deg(v), db = b.deg(v);
        bool certified = false;
        for (auto& pt : points) {
            std::vector<Rat> ia = image_in(a, v, pt, v == Var::Q ? 0 : qa);
            std::vector<Rat> ib = image_in(b, v, pt, v == Var::Q ? 0 : qb);
            // leading coefficients must survive for the degree argument
            if (static_cast<int>(ia.size()) - 1 != da - (v == Var::Q ? qa : 0)) continue;
            if (static_cast<int>(ib.size()) - 1 != db - (v == Var::Q ? qb : 0)) continue;
            if (univariate_gcd_degree(ia, ib) == 0) {
                certified = true;
                break;
            }
        }
        if (!certified) return false;
    }
    return true;
}

Poly gcd_rec(const Poly& a, const Poly& b, int vi) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    if (a.is_rational() || b.is_rational()) return Poly(1);

    // skip variables absent from both
    while (vi < 4 && !a.depends_on(kVarOrder[vi]) && !b.depends_on(kVarOrder[vi])) ++vi;
    if (vi >= 4) return Poly(1);
    Var v = kVarOrder[vi];

    Poly ca = content_in(a, v, vi);
    Poly cb = content_in(b, v, vi);
    Poly c = gcd_rec(ca, cb, vi + 1);
    Poly ap = divexact(a, ca);
    Poly bp = divexact(b, cb);

    if (main_var_degree(ap, v) < main_var_degree(bp, v)) std::swap(ap, bp);
    if (!bp.depends_on(v)) {
        // primitive part in v of bp is a unit times a constant-in-v poly that
        // is itself primitive: gcd of the primitive parts is 1 in that case
        return normalize_unit(c);
    }

    // subresultant PRS
    Poly g(1), h(1);
    for (;;) {
        int d = main_var_degree(ap, v) - main_var_degree(bp, v);
        Poly r = prem(ap, bp, v);
        if (r.is_zero()) break;
        if (!r.depends_on(v)) {
            bp = Poly(1);
            break;
        }
        ap = bp;
        Poly divisor = g * h.pow(static_cast<unsigned>(d));
        bp = divexact(r, divisor);
        g = lead_coeff(ap, v);
        if (d > 0) {
            h = divexact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
        } else if (d == 0) {
            // h unchanged
        }
    }
    if (!bp.depends_on(v)) return normalize_unit(c);
    Poly pp = divexact(bp, content_in(bp, v, vi));
    return normalize_unit(c * pp);
}

} // namespace

bool try_divexact(const Poly& a, const Poly& b, Poly& quot) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero()) {
        quot = Poly();
        return true;
    }
    int sa = 0, sb = 0;
    Poly ra = q_shift_to_ordinary(a, sa);
    Poly rb = q_shift_to_ordinary(b, sb);
    Poly q;
    const auto& ltb = rb.leading();
    while (!ra.is_zero()) {
        const auto& lta = ra.leading();
        if (!ltb.first.divides(lta.first)) return false;
        Mono m = lta.first - ltb.first;
        Rat c = lta.second / ltb.second;
        q.add_term(m, c);
        ra = ra - rb.mul_mono(c, m);
    }
    quot = mul_qpow(q, sa - sb);
    return true;
}

Poly divexact(const Poly& a, const Poly& b) {
    Poly q;
    if (!try_divexact(a, b, q)) throw InternalError("non-exact polynomial division");
    return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    if (a == b) return normalize_unit(a);

    // split off monomial parts first; they reduce to exponent arithmetic
    Rat ca, cb;
    Mono ma, mb;
    Poly pa, pb;
    a.factor_monomial(ca, ma, pa);
    b.factor_monomial(cb, mb, pb);
    Mono mg{0, std::min(ma.x, mb.x), std::min(ma.y, mb.y), std::min(ma.z, mb.z)};

    Poly g;
    if (pa.is_rational() || pb.is_rational()) {
        g = Poly(1);
    } else if (pa.nterms() + pb.nterms() > 16 && coprime_by_evaluation(pa, pb)) {
        g = Poly(1);
    } else {
        g = gcd_rec(pa, pb, 0);
    }
    return g.mul_mono(Rat(1), mg);
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return divexact(a * b, poly_gcd(a, b));
}

bool poly_coprime_certified(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return false;
    Rat ca, cb;
    Mono ma, mb;
    Poly pa, pb;
    a.factor_monomial(ca, ma, pa);
    b.factor_monomial(cb, mb, pb);
    // shared monomial content is a common factor in x, y, z
    if ((ma.x > 0 && mb.x > 0) || (ma.y > 0 && mb.y > 0) || (ma.z > 0 && mb.z > 0)) return false;
    if (pa.is_rational() || pb.is_rational()) return true;
    return coprime_by_evaluation(pa, pb);
}

} // namespace qtel

#pragma once

#include "qtel/common.hpp"

#include <map>
#include <vector>
#include <string>
#include <array>
#include <functional>

namespace qtel {

// Variables of the polynomial universe. q is the base deformation
// parameter; x, y stand for q^n and q^k; z is the series variable of the
// generating-function checks. Exponents of q may be negative (Laurent),
// the others are always >= 0.
enum class Var : int { Q = 0, X = 1, Y = 2, Z = 3 };

struct Mono {
    int32_t q = 0, x = 0, y = 0, z = 0;

    int32_t get(Var v) const {
        switch (v) {
            case Var::Q: return q;
            case Var::X: return x;
            case Var::Y: return y;
            case Var::Z: return z;
        }
        return 0;
    }
    void set(Var v, int32_t e) {
        switch (v) {
            case Var::Q: q = e; break;
            case Var::X: x = e; break;
            case Var::Y: y = e; break;
            case Var::Z: z = e; break;
        }
    }

    // lex order x > y > z, q-degree last; "leading term" means the largest
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        if (a.z != b.z) return a.z < b.z;
        return a.q < b.q;
    }
    friend bool operator==(const Mono& a, const Mono& b) {
        return a.q == b.q && a.x == b.x && a.y == b.y && a.z == b.z;
    }

    Mono operator+(const Mono& o) const { return Mono{q + o.q, x + o.x, y + o.y, z + o.z}; }
    Mono operator-(const Mono& o) const { return Mono{q - o.q, x - o.x, y - o.y, z - o.z}; }
    bool divides(const Mono& o) const {
        return q <= o.q && x <= o.x && y <= o.y && z <= o.z;
    }
};

struct VarNames {
    std::string q = "q", x = "x", y = "y", z = "z";
    const std::string& of(Var v) const {
        switch (v) {
            case Var::Q: return q;
            case Var::X: return x;
            case Var::Y: return y;
            case Var::Z: return z;
        }
        return q;
    }
};

// Sparse polynomial in (q, x, y, z) over Q. No stored zero coefficients.
class Poly {
public:
    using Terms = std::map<Mono, Rat>;

    Poly() = default;
    Poly(long v) { if (v != 0) terms_[Mono{}] = Rat(v); }
    Poly(const Rat& v) { if (v != 0) terms_[Mono{}] = v; }

    static Poly variable(Var v, int e = 1) {
        if (v != Var::Q && e < 0) throw DomainError("negative exponent outside q");
        Poly p;
        if (e == 0) return Poly(1);
        Mono m;
        m.set(v, e);
        p.terms_[m] = Rat(1);
        return p;
    }
    static Poly monomial(const Rat& c, const Mono& m) {
        Poly p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == Mono{} && terms_.begin()->second == 1;
    }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
    }
    bool is_monomial() const { return terms_.size() == 1; }
    Rat rational_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_rational()) throw InternalError("rational_value on non-constant poly");
        return terms_.begin()->second;
    }

    size_t nterms() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    const std::pair<const Mono, Rat>& leading() const {
        if (terms_.empty()) throw InternalError("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    bool depends_on(Var v) const {
        for (auto& [m, c] : terms_)
            if (m.get(v) != 0) return true;
        return false;
    }
    // max / min exponent of v; both 0 on the zero polynomial
    int deg(Var v) const {
        int d = 0;
        bool first = true;
        for (auto& [m, c] : terms_) {
            int e = m.get(v);
            if (first || e > d) d = e;
            first = false;
        }
        return d;
    }
    int ord(Var v) const {
        int d = 0;
        bool first = true;
        for (auto& [m, c] : terms_) {
            int e = m.get(v);
            if (first || e < d) d = e;
            first = false;
        }
        return d;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    // arbitrary but deterministic total order (used for canonical tie-breaking)
    friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        if (a.terms_.empty() || b.terms_.empty()) return r;
        // iterate over the smaller operand
        const Poly& s = a.terms_.size() <= b.terms_.size() ? a : b;
        const Poly& l = a.terms_.size() <= b.terms_.size() ? b : a;
        for (auto& [ms, cs] : s.terms_)
            for (auto& [ml, cl] : l.terms_)
                r.add_term(ms + ml, cs * cl);
        return r;
    }
    friend Poly operator*(const Poly& a, const Rat& c) {
        Poly r;
        if (c == 0) return r;
        r = a;
        for (auto& [m, cc] : r.terms_) cc *= c;
        return r;
    }
    friend Poly operator*(const Rat& c, const Poly& a) { return a * c; }

    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }
    Poly& operator*=(const Rat& c) { *this = *this * c; return *this; }

    Poly pow(unsigned e) const {
        Poly acc(1), b = *this;
        while (e) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    }

    void add_term(const Mono& m, const Rat& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly mul_mono(const Rat& c, const Mono& m) const {
        Poly r;
        if (c == 0) return r;
        for (auto& [mm, cc] : terms_) r.terms_[mm + m] = cc * c;
        return r;
    }

    // v -> q^a * v  (pure exponent bookkeeping)
    Poly shift(Var v, int a) const {
        if (v == Var::Q) throw InternalError("cannot shift q");
        if (a == 0) return *this;
        Poly r;
        for (auto& [m, c] : terms_) {
            Mono mm = m;
            mm.q += a * m.get(v);
            r.terms_[mm] = c;
        }
        return r;
    }

    // substitute a rational value for one variable
    Poly subst(Var v, const Rat& val) const {
        Poly r;
        for (auto& [m, c] : terms_) {
            Mono mm = m;
            int e = m.get(v);
            mm.set(v, 0);
            r.add_term(mm, c * rat_pow(val, e));
        }
        return r;
    }

    // x -> q^n (so q^a x^b -> q^{a+nb}); works for y, z too
    Poly subst_qpow(Var v, long n) const {
        if (v == Var::Q) throw InternalError("subst_qpow on q");
        Poly r;
        for (auto& [m, c] : terms_) {
            Mono mm = m;
            mm.q += static_cast<int32_t>(n) * m.get(v);
            mm.set(v, 0);
            r.add_term(mm, c);
        }
        return r;
    }

    // from -> q^c * to  (e.g. y -> q^c x along a lattice line)
    Poly subst_var_mono(Var from, Var to, int c) const {
        if (from == Var::Q || to == Var::Q) throw InternalError("subst_var_mono on q");
        Poly r;
        for (auto& [m, co] : terms_) {
            Mono mm = m;
            int e = m.get(from);
            mm.set(from, 0);
            mm.set(to, mm.get(to) + e);
            mm.q += c * e;
            r.add_term(mm, co);
        }
        return r;
    }

    // swap the roles of two variables
    Poly swap_vars(Var a, Var b) const {
        Poly r;
        for (auto& [m, c] : terms_) {
            Mono mm = m;
            int ea = m.get(a), eb = m.get(b);
            mm.set(a, eb);
            mm.set(b, ea);
            r.terms_[mm] = c;
        }
        return r;
    }

    Rat eval(const Rat& q, const Rat& x, const Rat& y, const Rat& z) const {
        Rat acc(0);
        for (auto& [m, c] : terms_) {
            acc += c * rat_pow(q, m.q) * rat_pow(x, m.x) * rat_pow(y, m.y) * rat_pow(z, m.z);
        }
        return acc;
    }

    Poly coeff_of(Var v, int e) const {
        Poly r;
        for (auto& [m, c] : terms_) {
            if (m.get(v) == e) {
                Mono mm = m;
                mm.set(v, 0);
                r.terms_[mm] = c;
            }
        }
        return r;
    }

    std::map<int, Poly> split_by(Var v) const {
        std::map<int, Poly> r;
        for (auto& [m, c] : terms_) {
            Mono mm = m;
            int e = m.get(v);
            mm.set(v, 0);
            r[e].terms_[mm] = c;
        }
        return r;
    }

    // positive gcd of all rational coefficients (0 for the zero polynomial)
    Rat content_rat() const {
        Rat g(0);
        for (auto& [m, c] : terms_) {
            g = rat_gcd(g, c);
            if (g == 1) break;
        }
        return g;
    }

    // common monomial factor of all terms (min exponent per variable)
    Mono monomial_content() const {
        Mono r;
        bool first = true;
        for (auto& [m, c] : terms_) {
            if (first) {
                r = m;
                first = false;
            } else {
                r.q = std::min(r.q, m.q);
                r.x = std::min(r.x, m.x);
                r.y = std::min(r.y, m.y);
                r.z = std::min(r.z, m.z);
            }
        }
        return r;
    }

    // this == c * mono * prim with prim integer-primitive, positive leading
    // coefficient and trivial monomial content
    void factor_monomial(Rat& c, Mono& mono, Poly& prim) const {
        if (is_zero()) {
            c = 0;
            mono = Mono{};
            prim = Poly();
            return;
        }
        mono = monomial_content();
        Rat cont = content_rat();
        if (terms_.rbegin()->second < 0) cont = -cont;
        c = cont;
        prim = Poly();
        for (auto& [m, cc] : terms_) prim.terms_[m - mono] = cc / cont;
    }

    std::string to_string(const VarNames& names = VarNames{}) const;

private:
    Terms terms_;
};

// --- division and gcd over Q[q,x,y,z] ---------------------------------
// Inputs may be Laurent in q; results are normalized as documented.

// exact division; throws InternalError when not exact
Poly divexact(const Poly& a, const Poly& b);
bool try_divexact(const Poly& a, const Poly& b, Poly& quot);

// gcd, integer-primitive with positive leading coefficient; pure q-powers
// and rational factors are treated as units (never part of the result)
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);

// sound one-sided coprimality certificate by evaluation: true means
// gcd(a, b) is a unit, false means unknown
bool poly_coprime_certified(const Poly& a, const Poly& b);

} // namespace qtel

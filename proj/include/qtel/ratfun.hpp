#pragma once

#include "qtel/poly.hpp"

#include <optional>

namespace qtel {

// Canonical fraction of polynomials over Q in (q, x, y, z).
//
// Normal form: num and den are ordinary (no negative q-powers), share no
// polynomial factor, carry no common q-monomial, and den's leading term
// (lex x > y > z, q-degree last) has coefficient 1. Equality is structural.
class RatFun {
public:
    RatFun() : num_(), den_(1) {}
    RatFun(long v) : num_(v), den_(1) {}
    RatFun(const Rat& v) : num_(v), den_(1) {}
    RatFun(const Poly& p) : num_(p), den_(1) { normalize_monomial_only_(); }
    RatFun(const Poly& num, const Poly& den) : num_(num), den_(den) { normalize_(); }

    static RatFun variable(Var v, int e = 1) {
        if (e >= 0 || v == Var::Q) return RatFun(Poly::variable(v, e));
        return RatFun(Poly(1), Poly::variable(v, -e));
    }

    // trusted constructor: the caller guarantees num and den share no
    // polynomial factor; only the monomial and unit normalization runs
    static RatFun from_reduced(Poly num, Poly den) {
        RatFun r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        r.normalize_monomial_only_();
        return r;
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_one(); }
    bool is_rational() const { return num_.is_rational() && den_.is_one(); }
    Rat rational_value() const {
        if (!is_rational()) throw InternalError("rational_value on non-constant");
        return num_.rational_value();
    }
    // true when the value is a Laurent polynomial in q alone
    bool is_q_laurent() const { return den_.is_monomial() && !num_.depends_on(Var::X) &&
                                       !num_.depends_on(Var::Y) && !num_.depends_on(Var::Z) &&
                                       !den_.depends_on(Var::X) && !den_.depends_on(Var::Y) &&
                                       !den_.depends_on(Var::Z); }

    bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    RatFun operator-() const {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);

    RatFun& operator+=(const RatFun& b) { *this = *this + b; return *this; }
    RatFun& operator-=(const RatFun& b) { *this = *this - b; return *this; }
    RatFun& operator*=(const RatFun& b) { *this = *this * b; return *this; }
    RatFun& operator/=(const RatFun& b) { *this = *this / b; return *this; }

    RatFun inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        return RatFun(den_, num_);
    }
    RatFun pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RatFun acc(1), b = *this;
        unsigned long n = static_cast<unsigned long>(e);
        while (n) {
            if (n & 1) acc = acc * b;
            b = b * b;
            n >>= 1;
        }
        return acc;
    }

    // v -> q^a * v
    RatFun shift(Var v, int a) const {
        RatFun r;
        r.num_ = num_.shift(v, a);
        r.den_ = den_.shift(v, a);
        r.normalize_monomial_only_();
        r.fix_den_lead_();
        return r;
    }

    // substitute a rational value; throws PoleError when den vanishes
    RatFun subst(Var v, const Rat& val) const {
        Poly d = den_.subst(v, val);
        if (d.is_zero()) throw PoleError("substitution hits a pole");
        return RatFun(num_.subst(v, val), d);
    }
    // v -> q^n
    RatFun subst_qpow(Var v, long n) const {
        Poly d = den_.subst_qpow(v, n);
        if (d.is_zero()) throw PoleError("substitution hits a pole");
        return RatFun(num_.subst_qpow(v, n), d);
    }
    RatFun subst_q1() const {
        Poly d = den_.subst(Var::Q, Rat(1));
        if (d.is_zero()) throw PoleError("q = 1 is a pole");
        return RatFun(num_.subst(Var::Q, Rat(1)), d);
    }
    RatFun subst_var_mono(Var from, Var to, int c) const {
        Poly d = den_.subst_var_mono(from, to, c);
        if (d.is_zero()) throw PoleError("substitution hits a pole");
        return RatFun(num_.subst_var_mono(from, to, c), d);
    }
    RatFun swap_vars(Var a, Var b) const {
        RatFun r;
        r.num_ = num_.swap_vars(a, b);
        r.den_ = den_.swap_vars(a, b);
        r.fix_den_lead_();
        return r;
    }

    Rat eval(const Rat& q, const Rat& x, const Rat& y, const Rat& z = Rat(0)) const {
        Rat d = den_.eval(q, x, y, z);
        if (d == 0) throw PoleError("evaluation at a pole");
        return num_.eval(q, x, y, z) / d;
    }

    std::string to_string(const VarNames& names = VarNames{}) const;

private:
    void normalize_();
    void normalize_monomial_only_(); // only q-shift, assumes gcd already trivial
    void fix_den_lead_();

    Poly num_, den_;
};

// canonicalizing constructor as a free function
inline RatFun ratfun_normalize(const Poly& num, const Poly& den) { return RatFun(num, den); }

// (base; q)_count, the three-case q-Pochhammer with negative count as a
// reciprocal product
RatFun qpoch(const RatFun& base, long count);

// substitute any subset of {q, x, y} by rational values (nullopt = keep symbolic)
RatFun substitute(const RatFun& f, std::optional<Rat> q_val, std::optional<Rat> x_val,
                  std::optional<Rat> y_val);

} // namespace qtel

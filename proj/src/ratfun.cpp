#include "qtel/ratfun.hpp"

#include <sstream>

namespace qtel {

void RatFun::fix_den_lead_() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    Rat lc = den_.leading().second;
    if (lc != 1) {
        Rat inv = Rat(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

void RatFun::normalize_monomial_only_() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    // cancel the common monomial content; for q the full common power, so
    // that both sides end up ordinary in q
    Mono mn = num_.monomial_content();
    Mono md = den_.monomial_content();
    Mono common{std::min(mn.q, md.q), std::min(mn.x, md.x), std::min(mn.y, md.y),
                std::min(mn.z, md.z)};
    if (!(common == Mono{})) {
        Mono neg{-common.q, -common.x, -common.y, -common.z};
        num_ = num_.mul_mono(Rat(1), neg);
        den_ = den_.mul_mono(Rat(1), neg);
    }
    fix_den_lead_();
}

void RatFun::normalize_() {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    normalize_monomial_only_();
    if (!den_.is_one()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_one()) {
            num_ = divexact(num_, g);
            den_ = divexact(den_, g);
        }
        normalize_monomial_only_();
    }
}

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFun r;
    if (a.den_ == b.den_) {
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
        r.normalize_();
        return r;
    }
    if (a.den_.is_one() && b.den_.is_one()) {
        r.num_ = a.num_ + b.num_;
        r.den_ = Poly(1);
        r.normalize_monomial_only_();
        return r;
    }
    // Henrici: cancel the common part of the denominators first
    Poly g = poly_gcd(a.den_, b.den_);
    if (g.is_one()) {
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        r.den_ = a.den_ * b.den_;
    } else {
        Poly da = divexact(a.den_, g);
        Poly db = divexact(b.den_, g);
        r.num_ = a.num_ * db + b.num_ * da;
        r.den_ = a.den_ * db;
    }
    r.normalize_();
    return r;
}

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    RatFun r;
    if (a.den_.is_one() && b.den_.is_one()) {
        r.num_ = a.num_ * b.num_;
        r.den_ = Poly(1);
        r.normalize_monomial_only_();
        return r;
    }
    // cross-cancellation keeps the gcd calls small
    Poly g1 = poly_gcd(a.num_, b.den_);
    Poly g2 = poly_gcd(b.num_, a.den_);
    Poly an = g1.is_one() ? a.num_ : divexact(a.num_, g1);
    Poly bd = g1.is_one() ? b.den_ : divexact(b.den_, g1);
    Poly bn = g2.is_one() ? b.num_ : divexact(b.num_, g2);
    Poly ad = g2.is_one() ? a.den_ : divexact(a.den_, g2);
    r.num_ = an * bn;
    r.den_ = ad * bd;
    r.normalize_monomial_only_();
    return r;
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw DivisionByZero("rational function division by zero");
    return a * b.inverse();
}

std::string RatFun::to_string(const VarNames& names) const {
    // print with integer coefficients so the result stays inside the
    // expression grammar
    Int l(1);
    for (auto& [m, c] : num_.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    for (auto& [m, c] : den_.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    Poly n = num_ * Rat(l);
    Poly d = den_ * Rat(l);
    if (d.is_one()) return n.to_string(names);
    std::ostringstream os;
    std::string ns = n.to_string(names);
    std::string ds = d.to_string(names);
    // the denominator must bind as one factor
    bool par_d = d.nterms() > 1 || ds.find('*') != std::string::npos;
    if (n.nterms() > 1) os << "(" << ns << ")";
    else os << ns;
    os << "/";
    if (par_d) os << "(" << ds << ")";
    else os << ds;
    return os.str();
}

RatFun qpoch(const RatFun& base, long count) {
    RatFun acc(1);
    const RatFun q = RatFun(Poly::variable(Var::Q));
    if (count >= 0) {
        for (long j = 0; j < count; ++j)
            acc *= RatFun(1) - base * RatFun(Poly::variable(Var::Q, static_cast<int>(j)));
        return acc;
    }
    for (long j = 1; j <= -count; ++j) {
        RatFun f = RatFun(1) - base * RatFun(Poly::variable(Var::Q, static_cast<int>(-j)));
        if (f.is_zero()) throw PoleError("vanishing factor in reciprocal q-Pochhammer");
        acc *= f;
    }
    return acc.inverse();
}

RatFun substitute(const RatFun& f, std::optional<Rat> q_val, std::optional<Rat> x_val,
                  std::optional<Rat> y_val) {
    RatFun r = f;
    if (q_val) r = r.subst(Var::Q, *q_val);
    if (x_val) r = r.subst(Var::X, *x_val);
    if (y_val) r = r.subst(Var::Y, *y_val);
    return r;
}

} // namespace qtel

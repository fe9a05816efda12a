#pragma once

#include "qtel/expr.hpp"

#include <vector>
#include <span>

namespace qtel {

// Skew operator sum a_i(x) E^i with E f(x) = f(qx) E; a_i rational in x
// over Q(q). The zero operator has no coefficients.
class OreOp {
public:
    OreOp() = default;
    explicit OreOp(std::vector<RatFun> coeffs) : c_(std::move(coeffs)) { trim_(); check_vars_(); }

    static OreOp identity() { return OreOp({RatFun(1)}); }
    static OreOp shift(int e = 1) {
        std::vector<RatFun> c(static_cast<size_t>(e) + 1);
        c.back() = RatFun(1);
        return OreOp(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int order() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const RatFun& coeff(int i) const {
        static const RatFun zero;
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<RatFun>& coeffs() const { return c_; }

    friend OreOp operator+(const OreOp& a, const OreOp& b);
    friend OreOp operator-(const OreOp& a, const OreOp& b);
    friend OreOp operator*(const OreOp& a, const OreOp& b); // skew product
    friend OreOp operator*(const RatFun& c, const OreOp& a);
    friend bool operator==(const OreOp& a, const OreOp& b) { return a.c_ == b.c_; }

    // sum a_i(q^n) * values[n + i - n0]; exact
    RatFun apply(std::span<const RatFun> values, long n0, long n) const;

    std::string to_string(const ExprSymbols& sym = ExprSymbols::operator_e()) const;

private:
    void trim_() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void check_vars_() const {
        for (auto& c : c_)
            if (c.depends_on(Var::Y) || c.depends_on(Var::Z))
                throw DomainError("OreOp coefficients must be rational in x only");
    }

    std::vector<RatFun> c_;
};

// A J = rhs with rhs rational in x
struct InhomRec {
    OreOp op;
    RatFun rhs;
};

// order-(I+1) operator annihilating every solution of rec (op order I)
OreOp homogenize(const InhomRec& rec);

// Operator in Ek (Ek g(y) = g(qy) Ek) with coefficients rational in x, y.
class BiOreOp {
public:
    BiOreOp() = default;
    explicit BiOreOp(std::vector<RatFun> coeffs) : c_(std::move(coeffs)) {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    int order() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const RatFun& coeff(int i) const {
        static const RatFun zero;
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<size_t>(i)];
    }
    const std::vector<RatFun>& coeffs() const { return c_; }

    // divide through by the leading coefficient
    BiOreOp monic() const {
        if (c_.empty()) throw DomainError("monic of zero operator");
        std::vector<RatFun> r = c_;
        RatFun lead = r.back();
        for (auto& c : r) c = c / lead;
        return BiOreOp(std::move(r));
    }

    // sum r_i(q^k) * values[k + i - k0]
    RatFun apply(std::span<const RatFun> values, long k0, long k) const;

    std::string to_string() const;

private:
    std::vector<RatFun> c_;
};

// Canonical representative of an operator class up to units c(q) * x^j:
// denominators cleared, q-only content and common x-power removed, leading
// term of the top coefficient scaled to 1. `scale` maps the input to the
// canonical form (canonical = scale * input), so pairs (A, b) stay aligned.
struct CanonicalOp {
    OreOp op;
    RatFun scale;
};
CanonicalOp canonicalize(const OreOp& a);

struct CanonicalRec {
    InhomRec rec;
    RatFun scale;
};
CanonicalRec canonicalize(const InhomRec& rec);

std::string inhomrec_to_json(const InhomRec& rec, const std::vector<RatFun>* certs = nullptr);

} // namespace qtel

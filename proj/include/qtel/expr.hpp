#pragma once

#include "qtel/ratfun.hpp"

#include <map>
#include <string>
#include <vector>

namespace qtel {

// Expression grammar shared by fixtures, JSON emission and the CLI:
// integers, symbols, + - * ^ ( ), with q^(a*n+b) understood as q^b * x^a
// (and q^(a*k+b) as q^b * y^a). Whitespace is insignificant.
//
// A symbol table decides what the names mean. Operator symbols (E, Ek)
// produce skew polynomials: E f(x) = f(qx) E, Ek f(y) = f(qy) Ek.

struct ExprSymbols {
    std::map<std::string, Var> vars;        // plain commutative variables
    std::map<std::string, Var> sugar;       // exponent symbols: n -> X, k -> Y
    std::string op;                         // "" when no operator symbol
    bool op_twists = false;                 // skew multiplication?
    Var twist_var = Var::X;                 // variable the operator shifts
    VarNames names;                         // printing names

    // q, x, y with operator E acting on x
    static ExprSymbols operator_e();
    // q, x, y with operator Ek acting on y
    static ExprSymbols operator_ek();
    // commutative polynomials in M (-> x slot) and L (-> y slot)
    static ExprSymbols comm_lm();
    // commutative polynomials in Q (-> x slot) and L (-> y slot)
    static ExprSymbols comm_lq();
    // q, z only (series world)
    static ExprSymbols series_z();
};

// polynomial in the operator symbol with RatFun coefficients; key 0 alone
// for plain scalar expressions
struct ExprValue {
    std::map<int, RatFun> coeffs;

    RatFun scalar() const {
        for (auto& [e, c] : coeffs)
            if (e != 0 && !c.is_zero()) throw ParseError("operator symbol not allowed here");
        auto it = coeffs.find(0);
        return it == coeffs.end() ? RatFun() : it->second;
    }
    int op_degree() const {
        int d = 0;
        for (auto& [e, c] : coeffs)
            if (!c.is_zero() && e > d) d = e;
        return d;
    }
};

ExprValue parse_expr(const std::string& text, const ExprSymbols& symbols);

inline RatFun parse_ratfun(const std::string& text, const ExprSymbols& symbols) {
    return parse_expr(text, symbols).scalar();
}

std::string ratfun_to_latex(const RatFun& f, const VarNames& names);

} // namespace qtel

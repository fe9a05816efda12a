#include "qtel/expr.hpp"

#include <cctype>
#include <sstream>

namespace qtel {

ExprSymbols ExprSymbols::operator_e() {
    ExprSymbols s;
    s.vars = {{"q", Var::Q}, {"x", Var::X}, {"y", Var::Y}};
    s.sugar = {{"n", Var::X}, {"k", Var::Y}};
    s.op = "E";
    s.op_twists = true;
    s.twist_var = Var::X;
    return s;
}

ExprSymbols ExprSymbols::operator_ek() {
    ExprSymbols s = operator_e();
    s.op = "Ek";
    s.twist_var = Var::Y;
    return s;
}

ExprSymbols ExprSymbols::comm_lm() {
    ExprSymbols s;
    s.vars = {{"M", Var::X}, {"L", Var::Y}};
    s.names.x = "M";
    s.names.y = "L";
    return s;
}

ExprSymbols ExprSymbols::comm_lq() {
    ExprSymbols s;
    s.vars = {{"Q", Var::X}, {"L", Var::Y}};
    s.names.x = "Q";
    s.names.y = "L";
    return s;
}

ExprSymbols ExprSymbols::series_z() {
    ExprSymbols s;
    s.vars = {{"q", Var::Q}, {"z", Var::Z}};
    return s;
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;
    const ExprSymbols& sym;

    Parser(const std::string& t, const ExprSymbols& s) : text(t), sym(s) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos) + " in \"" + text + "\"");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    long parse_int() {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("integer expected");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return neg ? -v : v;
    }

    std::string parse_symbol() {
        skip_ws();
        std::string s;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_')) {
            s += text[pos];
            ++pos;
        }
        if (s.empty()) fail("symbol expected");
        return s;
    }

    // linear form in the sugar symbols: a*n + b, n + 1, -n, 12 + 3*k, ...
    // returns the exponent contribution as (q-power, per-variable powers)
    RatFun parse_sugar_exponent() {
        long cq = 0;
        std::map<Var, long> cv;
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (eat('-')) sign = -1;
            else if (eat('+')) sign = 1;
            else if (!first) break;
            skip_ws();
            long coef = 1;
            bool have_coef = false;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coef = parse_int();
                have_coef = true;
            }
            skip_ws();
            bool have_sym = false;
            if (have_coef) {
                if (eat('*')) have_sym = true;
            } else {
                have_sym = true;
            }
            if (have_sym) {
                std::string name = parse_symbol();
                auto it = sym.sugar.find(name);
                if (it == sym.sugar.end()) fail("unknown exponent symbol '" + name + "'");
                cv[it->second] += sign * coef;
            } else {
                cq += sign * coef;
            }
            first = false;
            if (peek() != '+' && peek() != '-') break;
        }
        RatFun r = RatFun::variable(Var::Q, static_cast<int>(cq));
        for (auto& [v, a] : cv) r *= RatFun::variable(v, static_cast<int>(a));
        return r;
    }

    ExprValue parse_expression() {
        ExprValue v = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                v = add(v, parse_term());
            } else if (c == '-') {
                ++pos;
                v = add(v, negate(parse_term()));
            } else {
                break;
            }
        }
        return v;
    }

    ExprValue parse_term() {
        ExprValue v = parse_factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                v = mul(v, parse_factor());
            } else if (c == '/') {
                // division by scalars; needed so printed rational functions
                // (certificates) can be read back
                ++pos;
                RatFun d = parse_factor().scalar();
                if (d.is_zero()) fail("division by zero");
                ExprValue s;
                s.coeffs[0] = d.inverse();
                v = mul(v, s);
            } else {
                break;
            }
        }
        return v;
    }

    ExprValue parse_factor() {
        ExprValue b = parse_base();
        if (peek() == '^') {
            ++pos;
            bool is_q_base = b.coeffs.size() == 1 && b.coeffs.count(0) &&
                             b.coeffs.at(0) == RatFun(Poly::variable(Var::Q));
            long e;
            skip_ws();
            if (eat('(')) {
                // inside parens: an integer, or for base q a linear form in
                // the sugar symbols
                if (is_q_base) {
                    RatFun r = parse_sugar_exponent();
                    skip_ws();
                    if (!eat(')')) fail("')' expected after exponent");
                    ExprValue out;
                    out.coeffs[0] = r;
                    return out;
                }
                e = parse_int();
                skip_ws();
                if (!eat(')')) fail("')' expected after exponent");
            } else if (is_q_base && pos < text.size() &&
                       (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                // bare sugar exponent: q^n, q^k
                std::string name = parse_symbol();
                auto it = sym.sugar.find(name);
                if (it == sym.sugar.end()) fail("unknown exponent symbol '" + name + "'");
                ExprValue out;
                out.coeffs[0] = RatFun(Poly::variable(it->second));
                return out;
            } else {
                e = parse_int();
            }
            return power(b, e);
        }
        return b;
    }

    ExprValue parse_base() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            ExprValue v = parse_expression();
            skip_ws();
            if (!eat(')')) fail("')' expected");
            return v;
        }
        if (c == '-') {
            ++pos;
            return negate(parse_factor());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = parse_int();
            ExprValue out;
            out.coeffs[0] = RatFun(v);
            return out;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = parse_symbol();
            if (!sym.op.empty() && name == sym.op) {
                ExprValue out;
                out.coeffs[1] = RatFun(1);
                return out;
            }
            auto it = sym.vars.find(name);
            if (it == sym.vars.end()) fail("unknown symbol '" + name + "'");
            ExprValue out;
            out.coeffs[0] = RatFun(Poly::variable(it->second));
            return out;
        }
        fail("unexpected character");
    }

    // --- ExprValue algebra -------------------------------------------

    ExprValue add(const ExprValue& a, const ExprValue& b) const {
        ExprValue r = a;
        for (auto& [e, c] : b.coeffs) {
            auto it = r.coeffs.find(e);
            if (it == r.coeffs.end()) r.coeffs[e] = c;
            else it->second += c;
        }
        prune(r);
        return r;
    }
    ExprValue negate(const ExprValue& a) const {
        ExprValue r = a;
        for (auto& [e, c] : r.coeffs) c = -c;
        return r;
    }
    ExprValue mul(const ExprValue& a, const ExprValue& b) const {
        ExprValue r;
        for (auto& [ea, ca] : a.coeffs) {
            for (auto& [eb, cb] : b.coeffs) {
                RatFun c = ca * (sym.op_twists && ea != 0 ? cb.shift(sym.twist_var, ea) : cb);
                auto it = r.coeffs.find(ea + eb);
                if (it == r.coeffs.end()) r.coeffs[ea + eb] = c;
                else it->second += c;
            }
        }
        prune(r);
        return r;
    }
    ExprValue power(const ExprValue& b, long e) const {
        if (e < 0) {
            RatFun s = b.scalar(); // negative powers only for scalars
            ExprValue out;
            out.coeffs[0] = s.pow(e);
            return out;
        }
        ExprValue acc;
        acc.coeffs[0] = RatFun(1);
        ExprValue base = b;
        unsigned long n = static_cast<unsigned long>(e);
        while (n) {
            if (n & 1) acc = mul(acc, base);
            base = mul(base, base);
            n >>= 1;
        }
        return acc;
    }
    static void prune(ExprValue& v) {
        for (auto it = v.coeffs.begin(); it != v.coeffs.end();) {
            if (it->second.is_zero()) it = v.coeffs.erase(it);
            else ++it;
        }
    }
};

} // namespace

ExprValue parse_expr(const std::string& text, const ExprSymbols& symbols) {
    Parser p(text, symbols);
    ExprValue v = p.parse_expression();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    if (v.coeffs.empty()) v.coeffs[0] = RatFun();
    return v;
}

std::string ratfun_to_latex(const RatFun& f, const VarNames& names) {
    std::string s = f.to_string(names);
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '*') {
            out += ' ';
        } else if (c == '^') {
            out += "^{";
            size_t j = i + 1;
            if (j < s.size() && s[j] == '-') {
                out += '-';
                ++j;
            }
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                out += s[j];
                ++j;
            }
            out += '}';
            i = j - 1;
        } else {
            out += c;
        }
    }
    return out;
}

} // namespace qtel

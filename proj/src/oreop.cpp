#include "qtel/oreop.hpp"

#include <json.hpp>

#include <sstream>

namespace qtel {

OreOp operator+(const OreOp& a, const OreOp& b) {
    std::vector<RatFun> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] += a.c_[i];
        if (i < b.c_.size()) c[i] += b.c_[i];
    }
    return OreOp(std::move(c));
}

OreOp operator-(const OreOp& a, const OreOp& b) {
    std::vector<RatFun> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] += a.c_[i];
        if (i < b.c_.size()) c[i] -= b.c_[i];
    }
    return OreOp(std::move(c));
}

OreOp operator*(const OreOp& a, const OreOp& b) {
    if (a.is_zero() || b.is_zero()) return OreOp();
    std::vector<RatFun> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            // E^i f(x) = f(q^i x) E^i
            c[i + j] += a.c_[i] * b.c_[j].shift(Var::X, static_cast<int>(i));
        }
    }
    return OreOp(std::move(c));
}

OreOp operator*(const RatFun& c, const OreOp& a) {
    std::vector<RatFun> r = a.c_;
    for (auto& x : r) x = c * x;
    return OreOp(std::move(r));
}

RatFun OreOp::apply(std::span<const RatFun> values, long n0, long n) const {
    RatFun acc;
    for (int i = 0; i <= order(); ++i) {
        if (c_[static_cast<size_t>(i)].is_zero()) continue;
        long idx = n + i - n0;
        if (idx < 0 || idx >= static_cast<long>(values.size()))
            throw IndexError("sequence value J(" + std::to_string(n + i) + ") not available");
        RatFun an = c_[static_cast<size_t>(i)].subst_qpow(Var::X, n);
        acc += an * values[static_cast<size_t>(idx)];
    }
    return acc;
}

RatFun BiOreOp::apply(std::span<const RatFun> values, long k0, long k) const {
    RatFun acc;
    for (int i = 0; i <= order(); ++i) {
        if (c_[static_cast<size_t>(i)].is_zero()) continue;
        long idx = k + i - k0;
        if (idx < 0 || idx >= static_cast<long>(values.size()))
            throw IndexError("sequence value at " + std::to_string(k + i) + " not available");
        RatFun rk = c_[static_cast<size_t>(i)].subst_qpow(Var::Y, k);
        acc += rk * values[static_cast<size_t>(idx)];
    }
    return acc;
}

namespace {

std::string op_to_string(const std::vector<RatFun>& c, const ExprSymbols& sym) {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c[i].to_string(sym.names) << ")";
        if (i == 1) os << "*" << sym.op;
        else if (i > 1) os << "*" << sym.op << "^" << i;
    }
    if (first) return "0";
    return os.str();
}

} // namespace

std::string OreOp::to_string(const ExprSymbols& sym) const { return op_to_string(c_, sym); }

std::string BiOreOp::to_string() const { return op_to_string(c_, ExprSymbols::operator_ek()); }

OreOp homogenize(const InhomRec& rec) {
    if (rec.rhs.is_zero()) throw DomainError("recursion is already homogeneous");
    if (rec.op.is_zero()) throw DomainError("homogenize of zero operator");
    int ord = rec.op.order();
    RatFun rhs_up = rec.rhs.shift(Var::X, 1);
    std::vector<RatFun> c(static_cast<size_t>(ord) + 2);
    c[static_cast<size_t>(ord) + 1] = rec.op.coeff(ord).shift(Var::X, 1) / rhs_up;
    for (int i = 1; i <= ord; ++i)
        c[static_cast<size_t>(i)] =
            rec.op.coeff(i - 1).shift(Var::X, 1) / rhs_up - rec.op.coeff(i) / rec.rhs;
    c[0] = -rec.op.coeff(0) / rec.rhs;
    return OreOp(std::move(c));
}

CanonicalOp canonicalize(const OreOp& a) {
    if (a.is_zero()) return {OreOp(), RatFun(1)};

    // clear denominators
    Poly den(1);
    for (auto& c : a.coeffs())
        if (!c.den().is_one()) den = poly_lcm(den, c.den());
    std::vector<Poly> p;
    p.reserve(a.coeffs().size());
    for (auto& c : a.coeffs()) p.push_back(c.num() * divexact(den, c.den()));

    // remove the q-only polynomial content (a unit of Q(q)) and the common
    // x-power; other common factors are not units and must stay
    Poly qcont;
    int xord = 0;
    bool first = true;
    for (auto& c : p) {
        if (c.is_zero()) continue;
        for (auto& [e, piece] : c.split_by(Var::X)) qcont = poly_gcd(qcont, piece);
        int o = c.ord(Var::X);
        xord = first ? o : std::min(xord, o);
        first = false;
    }
    if (qcont.is_zero()) qcont = Poly(1);

    // the remaining rational * q-power freedom is pinned on the top
    // coefficient: its highest x-slice starts at q^0 with leading rational 1
    Poly top_slice = divexact(p.back().coeff_of(Var::X, p.back().deg(Var::X)), qcont);
    int qshift = top_slice.ord(Var::Q);
    Rat cs = top_slice.terms().rbegin()->second;

    Mono um;
    um.q = qshift;
    um.x = xord;
    RatFun scale = RatFun(den, qcont.mul_mono(cs, um));

    std::vector<RatFun> out;
    out.reserve(a.coeffs().size());
    for (auto& c : a.coeffs()) out.push_back(scale * c);
    return {OreOp(std::move(out)), scale};
}

CanonicalRec canonicalize(const InhomRec& rec) {
    CanonicalOp c = canonicalize(rec.op);
    return {InhomRec{c.op, c.scale * rec.rhs}, c.scale};
}

std::string inhomrec_to_json(const InhomRec& rec, const std::vector<RatFun>* certs) {
    nlohmann::json j;
    j["order"] = rec.op.order();
    auto sym = ExprSymbols::operator_e();
    std::vector<std::string> coeffs;
    for (auto& c : rec.op.coeffs()) coeffs.push_back(c.to_string(sym.names));
    j["coeffs"] = coeffs;
    if (rec.rhs.is_zero()) j["rhs"] = nullptr;
    else j["rhs"] = rec.rhs.to_string(sym.names);
    if (certs) {
        std::vector<std::string> cs;
        for (auto& c : *certs) cs.push_back(c.to_string(sym.names));
        j["certificates"] = cs;
    }
    return j.dump(2);
}

} // namespace qtel

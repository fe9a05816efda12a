#include "qtel/poly.hpp"

#include <sstream>

namespace qtel {

namespace {

void append_power(std::ostream& os, const std::string& name, int e, bool& lead) {
    if (e == 0) return;
    if (!lead) os << "*";
    os << name;
    if (e != 1) os << "^" << e;
    lead = false;
}

void append_term(std::ostream& os, const Mono& m, const Rat& c, const VarNames& names,
                 bool first) {
    Rat a = c;
    if (first) {
        if (a < 0) {
            os << "-";
            a = -a;
        }
    } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
    }
    bool lead = true;
    bool unit = (a == 1);
    if (!unit) {
        os << a;
        lead = false;
    }
    append_power(os, names.q, m.q, lead);
    append_power(os, names.x, m.x, lead);
    append_power(os, names.y, m.y, lead);
    append_power(os, names.z, m.z, lead);
    if (lead && unit) os << "1";
}

} // namespace

std::string Poly::to_string(const VarNames& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool pure_q = !depends_on(Var::X) && !depends_on(Var::Y) && !depends_on(Var::Z);
    bool first = true;
    if (pure_q) {
        // ascending q-powers, the natural reading for Laurent series values
        for (auto& [m, c] : terms_) {
            append_term(os, m, c, names, first);
            first = false;
        }
    } else {
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            append_term(os, it->first, it->second, names, first);
            first = false;
        }
    }
    return os.str();
}

} // namespace qtel

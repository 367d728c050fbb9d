#include "rankforge/zpoly.hpp"

#include <sstream>

namespace rankforge {

ZLaurentPoly ZLaurentPoly::monomial(const Integer& c, long e) {
    ZLaurentPoly p;
    p.add_term(e, c);
    return p;
}

Integer ZLaurentPoly::coeff(long e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Integer(0) : it->second;
}

void ZLaurentPoly::add_term(long e, const Integer& c) {
    if (sgn(c) == 0) return;
    auto& slot = t_[e];
    slot += c;
    if (sgn(slot) == 0) t_.erase(e);
}

Integer ZLaurentPoly::at_one() const {
    Integer s = 0;
    for (const auto& [e, c] : t_) s += c;
    return s;
}

bool ZLaurentPoly::symmetric() const {
    for (const auto& [e, c] : t_)
        if (coeff(-e) != c) return false;
    return true;
}

ZLaurentPoly ZLaurentPoly::operator+(const ZLaurentPoly& o) const {
    ZLaurentPoly r = *this;
    for (const auto& [e, c] : o.t_) r.add_term(e, c);
    return r;
}

ZLaurentPoly ZLaurentPoly::operator*(const ZLaurentPoly& o) const {
    ZLaurentPoly r;
    for (const auto& [e1, c1] : t_)
        for (const auto& [e2, c2] : o.t_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

ZLaurentPoly ZLaurentPoly::operator-() const {
    ZLaurentPoly r;
    for (const auto& [e, c] : t_) r.t_[e] = -c;
    return r;
}

std::string ZLaurentPoly::to_text() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        Integer a = abs(c);
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "z";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

}  // namespace rankforge

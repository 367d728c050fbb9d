#pragma once

#include "rankforge/rational.hpp"

#include <map>
#include <string>

namespace rankforge {

// Finitely supported Laurent polynomial in z with integer coefficients.
class ZLaurentPoly {
public:
    ZLaurentPoly() = default;
    static ZLaurentPoly monomial(const Integer& c, long e);

    Integer coeff(long e) const;
    void add_term(long e, const Integer& c);
    const std::map<long, Integer>& terms() const { return t_; }
    bool empty() const { return t_.empty(); }

    // Value at z = 1.
    Integer at_one() const;
    bool symmetric() const;

    ZLaurentPoly operator+(const ZLaurentPoly& o) const;
    ZLaurentPoly operator*(const ZLaurentPoly& o) const;
    ZLaurentPoly operator-() const;
    bool operator==(const ZLaurentPoly& o) const { return t_ == o.t_; }

    std::string to_text() const;

private:
    std::map<long, Integer> t_;  // no zero entries
};

}  // namespace rankforge

#pragma once

#include "rankforge/rational.hpp"

#include "json.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace rankforge {

// Truncated Laurent series in q with exact rational coefficients.
//
// Coefficients are known exactly for lo <= e < hi. When hi == kInf the
// series is an exact Laurent polynomial: stored coefficients cover
// [lo, lo + size) and everything above is zero.
class QSeries {
public:
    static constexpr long kInf = std::numeric_limits<long>::max() / 4;

    QSeries();  // exact zero

    static QSeries zero();
    static QSeries zero_to(long hi);  // all-zero window [0, hi); hi <= 0 gives an empty window at hi
    static QSeries constant(const Rational& c, long hi = kInf);
    static QSeries monomial(const Rational& c, long e, long hi = kInf);
    static QSeries from_coeffs(long lo, std::vector<Rational> coeffs, long hi);
    static QSeries polynomial(long lo, std::vector<Rational> coeffs);

    long lo() const { return lo_; }
    long hi() const { return hi_; }
    bool exact() const { return hi_ == kInf; }
    bool is_exact_zero() const;

    // Coefficient of q^e; throws InsufficientOrder when e >= hi.
    Rational coeff(long e) const;
    const std::vector<Rational>& stored() const { return c_; }

    // Least exponent with a nonzero coefficient inside the window, if any.
    std::optional<long> leading_exponent() const;

    QSeries truncate(long n) const;

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries scale(const Rational& c) const;
    QSeries shift(long k) const;
    QSeries subs(long m) const;   // q -> q^m, m >= 1
    QSeries flip() const;         // q -> -q
    QSeries dissect(long m, long r) const;

    std::string to_text(std::size_t max_terms = 40) const;
    nlohmann::json to_json() const;
    static QSeries from_json(const nlohmann::json& j);

private:
    QSeries(long lo, long hi, std::vector<Rational> c);
    void normalize();

    long lo_ = 0;
    long hi_ = kInf;
    std::vector<Rational> c_;
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);

// Multiplicative inverse. For an exact polynomial that is not a monomial
// the result is an infinite series, so `order` must bound its window.
QSeries invert(const QSeries& a, std::optional<long> order = std::nullopt);

struct Comparison {
    bool equal = true;
    std::optional<long> exponent;  // least mismatching exponent
    Rational lhs, rhs;
};

// Compares all exponents below n. Throws InsufficientOrder if either side
// does not guarantee coefficients up to n.
Comparison equal_to_order(const QSeries& a, const QSeries& b, long n);

}  // namespace rankforge

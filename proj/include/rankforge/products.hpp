#pragma once

#include "rankforge/rational.hpp"
#include "rankforge/series.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rankforge {

// (sign * q^offset; q^modulus)_inf ^ exponent
struct Factor {
    int sign = 1;
    long offset = 0;
    long modulus = 1;
    Rational exponent = 1;
};

struct ProductSpec {
    std::vector<Factor> factors;

    // Grammar: space separated tokens, optional " / " splitting numerator
    // from denominator. Tokens: Jm, Ja,m, Jba,m, (a;m), (-a;m), each with an
    // optional ^e where e is an integer or a fraction; the token 1 is a no-op.
    static ProductSpec parse(std::string_view text);

    ProductSpec& append(const ProductSpec& other, const Rational& power = 1);
    ProductSpec subs(long m) const;  // q -> q^m on every factor
};

// Product rewritten over elementary factors (1 - q^k)^{c_k}, k >= 1,
// together with a constant 2^{two_power} from (-1; q^m) factors.
struct ElementaryForm {
    bool vanishes = false;
    Rational two_power = 0;
    std::map<long, Rational> c;
};

ElementaryForm elementary_form(const ProductSpec& spec, long n);

// Coefficients of prod (1 - q^k)^{c_k} below q^n. Picks repeated passes or
// the logarithmic-derivative recurrence, whichever is cheaper.
std::vector<Integer> expand_elementary(const std::map<long, long>& c, long n);

QSeries expand_product(const ProductSpec& spec, long n);

// j(s q^a; q^m) as a literal product. theta_spec needs 0 <= a <= m;
// j_series reduces a > m to a mod m with no sign or power correction.
ProductSpec theta_spec(int s, long a, long m);
QSeries j_series(int s, long a, long m, long n);

// j(s q^a; q^m) for any integer a, written as sign * q^shift * j(s q^r; q^m)
// with 0 <= r < m using quasi-periodicity.
struct ReducedTheta {
    int sign = 1;
    long shift = 0;
    int s = 1;
    long r = 0;
};
ReducedTheta reduce_theta(int s, long a, long m);
// Same quantity as a series: sign * q^shift * j(s q^r; q^m).
QSeries theta_monomial(int s, long a, long m, long n);

// Second Bernoulli function {t}^2 - {t} + 1/6.
Rational bernoulli_p2(const Rational& t);

struct EtaTerm {
    long delta = 1;
    long g = 0;
    Rational r = 1;
};

struct EtaQuotientSpec {
    long level = 1;
    std::vector<EtaTerm> terms;

    // Tokens e<delta>,<g> with optional ^r, optional " / " for the denominator.
    static EtaQuotientSpec parse(std::string_view text, long level);
    EtaQuotientSpec& append(const EtaQuotientSpec& other, const Rational& power = 1);
    void validate() const;
};

Rational eta_prefix(long delta, long g);
ProductSpec eta_body(long delta, long g, const Rational& r = 1);

struct EtaSeries {
    Rational prefix;
    QSeries body;
};
EtaSeries eta_series(long delta, long g, long n);

Rational total_prefix(const EtaQuotientSpec& spec);
ProductSpec body_spec(const EtaQuotientSpec& spec);
QSeries expand_eta_quotient(const EtaQuotientSpec& spec, long n);

}  // namespace rankforge

#include "rankforge/lambert.hpp"

#include "rankforge/errors.hpp"
#include "rankforge/products.hpp"

#include <algorithm>
#include <cstdlib>

namespace rankforge {

nlohmann::json LambertSpec::to_json() const {
    return {{"A", A}, {"B", B}, {"C", C}, {"s", s}, {"D", D}, {"E", E}, {"signAlt", alt}};
}

LambertSpec LambertSpec::from_json(const nlohmann::json& j) {
    LambertSpec spec;
    spec.A = j.at("A").get<long>();
    spec.B = j.value("B", 0L);
    spec.C = j.value("C", 0L);
    spec.s = j.value("s", 1);
    spec.D = j.value("D", 0L);
    spec.E = j.value("E", 0L);
    spec.alt = j.value("signAlt", true);
    if (spec.s != 1 && spec.s != -1) throw Error(ErrorCode::ParseError, "Lambert denominator sign must be +1 or -1");
    return spec;
}

namespace {

// sum over n of sigma^n q^{X(n)} / (1 + s q^{Y(n)}) with
// X(n) = (a2 n^2 + a1 n + a0) / 2 and Y(n) = d n + e, a2 > 0.
struct QuadraticLambert {
    long a2, a1, a0;
    int sigma;
    int s;
    long d, e;

    long X(long n) const { return (a2 * n * n + a1 * n + a0) / 2; }
    long Y(long n) const { return d * n + e; }
    long lowest(long n) const { return Y(n) >= 0 ? X(n) : X(n) - Y(n); }

    // Beyond this |n| every term starts at or above q^limit.
    long radius(long limit) const {
        // lowest(n) >= X(n) - |Y(n)| >= a2 t^2 / 2 - b t - c for t = |n|
        double b = std::abs(a1) / 2.0 + std::abs(d) + 1;
        double c = std::abs(a0) / 2.0 + std::abs(e) + 1;
        long t = 0;
        while (!(a2 * static_cast<double>(t) * t / 2 - b * t - c >= static_cast<double>(limit) &&
                 a2 * static_cast<double>(t) >= b))
            ++t;
        return t;
    }

    QSeries expand(long n) const {
        if (a2 <= 0) throw Error(ErrorCode::OutOfRange, "Lambert sum needs a positive quadratic coefficient");
        long t = radius(n);
        long lo = 0;
        bool any = false;
        for (long k = -t; k <= t; ++k) {
            long l = lowest(k);
            if (l < n) {
                lo = any ? std::min(lo, l) : l;
                any = true;
            }
        }
        if (!any) return QSeries::zero_to(n);
        // Coefficients are accumulated doubled so the Y = 0 half term stays integral.
        std::vector<Integer> acc(static_cast<std::size_t>(n - lo));
        auto add = [&](long exponent, long value) {
            if (exponent < n) acc[static_cast<std::size_t>(exponent - lo)] += value;
        };
        for (long k = -t; k <= t; ++k) {
            if (lowest(k) >= n) continue;
            long sign = (sigma == -1 && (k % 2 != 0)) ? -1 : 1;
            long x = X(k), y = Y(k);
            if (y == 0) {
                if (s == -1)
                    throw Error(ErrorCode::PoleAtTerm, "denominator vanishes at n = " + std::to_string(k));
                add(x, sign);
                continue;
            }
            // 1/(1 + s q^{-m}) = s q^m / (1 + s q^m) for m > 0
            long step = std::abs(y);
            long start = y > 0 ? x : x + step;
            long coef = 2 * sign * (y > 0 ? 1 : s);
            for (long ex = start; ex < n; ex += step) {
                add(ex, coef);
                coef *= -s;
            }
        }
        std::vector<Rational> v(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i)
            if (sgn(acc[i]) != 0) v[i] = ratio(acc[i], 2);
        return QSeries::from_coeffs(lo, std::move(v), n);
    }
};

}  // namespace

QSeries lambert_sum(const LambertSpec& spec, long n) {
    if (spec.A <= 0) throw Error(ErrorCode::OutOfRange, "Lambert sum needs A > 0");
    if (spec.s != 1 && spec.s != -1) throw Error(ErrorCode::OutOfRange, "denominator sign must be +1 or -1");
    if (n <= 0) return QSeries::zero_to(n);
    QuadraticLambert core{2 * spec.A, 2 * spec.B, 2 * spec.C, spec.alt ? -1 : 1, spec.s, spec.D, spec.E};
    return core.expand(n);
}

QSeries appell_sum(const AppellParams& p, long n) {
    if (p.k < 1) throw Error(ErrorCode::OutOfRange, "Appell base exponent must be positive");
    // (-1)^r q^{k r(r-1)/2} z^r / (1 - x z q^{k(r-1)})
    QuadraticLambert core{p.k, 2 * p.jz - p.k, 0, -p.sz, -p.sx * p.sz, p.k, p.jx + p.jz - p.k};
    return core.expand(n);
}

QSeries appell_m(const AppellParams& p, long n) {
    if (p.k < 1) throw Error(ErrorCode::OutOfRange, "Appell base exponent must be positive");
    if (p.sz == 1 && ((p.jz % p.k) + p.k) % p.k == 0)
        throw Error(ErrorCode::ZeroTheta, "j(z; q^k) vanishes for z = q^" + std::to_string(p.jz));
    auto rt = reduce_theta(p.sz, p.jz, p.k);
    // j(z) = sign q^shift (unit); its inverse starts at q^{-shift}.
    QSeries sum = appell_sum(p, n + rt.shift);
    long need = n - sum.lo() + rt.shift;
    QSeries unit = j_series(rt.s, rt.r, p.k, std::max(need, 1L));
    QSeries inv = invert(unit).shift(-rt.shift).scale(rt.sign);
    return (sum * inv).truncate(n);
}

QSeries appell_change(int sx, long jx, long k, int s0, long j0, int s1, long j1, long n) {
    // Each theta is sign q^shift (unit); collect the monomial parts first.
    struct Piece {
        int s;
        long j;
        int power;
    };
    std::vector<Piece> pieces = {{s1 * s0, j1 - j0, 1}, {sx * s0 * s1, jx + j0 + j1, 1}, {s0, j0, -1},
                                 {s1, j1, -1},          {sx * s0, jx + j0, -1},          {sx * s1, jx + j1, -1}};
    long shift = j0;
    int sign = s0;
    for (const auto& pc : pieces) {
        if (pc.s == 1 && ((pc.j % k) + k) % k == 0) {
            if (pc.power > 0) return QSeries::zero();
            throw Error(ErrorCode::ZeroTheta, "theta in the denominator vanishes");
        }
        auto rt = reduce_theta(pc.s, pc.j, k);
        shift += pc.power * rt.shift;
        sign *= rt.sign;
    }
    long m = n - shift;
    if (m <= 0) return QSeries::zero_to(n);
    ProductSpec body = ProductSpec::parse("J" + std::to_string(k) + "^3");
    for (const auto& pc : pieces) {
        auto rt = reduce_theta(pc.s, pc.j, k);
        body.append(theta_spec(rt.s, rt.r, k), pc.power);
    }
    return expand_product(body, m).shift(shift).scale(sign);
}

const std::vector<TheoremTail>& theorem_tails() {
    static const std::vector<TheoremTail> tails = {
        {"(1.5)-tail", "2 q^2 / J3,6 * sum (-1)^n q^(3n^2+6n) / (1 + q^(6n+4))"},
        {"(1.7)-tail", "f q^4 / J5,10 * sum (-1)^n q^(5n^2+10n) / (1 + q^(10n+8))"},
        {"(1.14)-tail", "-f q^4 / J5,10 * sum (-1)^n q^(5n^2+10n) / (1 + q^(10n+6))"},
        {"(1.15)-tail", "-f q^4 / J5,10 * sum (-1)^n q^(5n^2+10n) / (1 + q^(10n+8))"},
    };
    return tails;
}

namespace {

// c q^p / J_{a,m} * lambert_sum(spec), to order n.
QSeries theta_tail(const Rational& c, long p, long a, long m, const LambertSpec& spec, long n) {
    QSeries sum = lambert_sum(spec, n - p);
    long need = n - p - std::min(sum.lo(), 0L);
    QSeries inv = invert(j_series(1, a, m, std::max(need, 1L)));
    return (sum * inv).shift(p).scale(c).truncate(n);
}

}  // namespace

QSeries lambert_of_theorem(const std::string& id, long n, int factor) {
    if (factor != 1 && factor != 2) throw Error(ErrorCode::OutOfRange, "tail factor must be 1 or 2");
    if (id == "(1.5)-tail") return theta_tail(2, 2, 3, 6, {3, 6, 0, 1, 6, 4, true}, n);
    if (id == "(1.7)-tail") return theta_tail(factor, 4, 5, 10, {5, 10, 0, 1, 10, 8, true}, n);
    if (id == "(1.14)-tail") return theta_tail(-factor, 4, 5, 10, {5, 10, 0, 1, 10, 6, true}, n);
    if (id == "(1.15)-tail") return theta_tail(-factor, 4, 5, 10, {5, 10, 0, 1, 10, 8, true}, n);
    throw Error(ErrorCode::UnknownTerm, "no Lambert term named '" + id + "'");
}

}  // namespace rankforge

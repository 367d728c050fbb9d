#include "naive.hpp"
#include "prop.hpp"
#include "rankforge/rankforge.hpp"

#include <map>

using namespace rankforge;
using prop::Rng;
using prop::uniform;

namespace {

// sum_r (-1)^r z^r q^{m r(r-1)/2} with z = s q^a, as exponent -> coefficient.
std::map<long, long> bilateral_theta(int s, long a, long m, long n) {
    std::map<long, long> out;
    const long R = 2 * std::labs(a) + 2 * n + 3;
    for (long r = -R; r <= R; ++r) {
        long e = m * r * (r - 1) / 2 + a * r;
        if (e >= n) continue;
        long sign = (r % 2 == 0) ? 1 : -1;
        if (s < 0 && r % 2 != 0) sign = -sign;
        out[e] += sign;
    }
    return out;
}

// Truncated product of (1 - sign q^{a + m k})^{e} for k >= 0 with integer e,
// expanded factor by factor.
naive::Poly literal_product(int sign, long a, long m, long e, long n) {
    naive::Poly p(n, 0);
    p[0] = 1;
    for (long base = a; base < n; base += m) {
        if (base == 0) continue;
        for (long rep = 0; rep < std::labs(e); ++rep) {
            if (e > 0) {
                for (long i = n - 1; i >= base; --i) p[i] -= sign * p[i - base];
            } else {
                for (long i = base; i < n; ++i) p[i] += sign * p[i - base];
            }
        }
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    prop::Runner run(argc, argv);
    run.check("j_series matches the triple product, z = q^a", [](Rng& r, bool&) {
        long m = uniform(r, 2, 12), a = uniform(r, 1, m - 1), n = uniform(r, 1, 150);
        auto j = j_series(1, a, m, n);
        auto ref = bilateral_theta(1, a, m, n);
        for (long k = 0; k < n; ++k)
            if (j.coeff(k) != ref[k]) return false;
        return true;
    });
    run.check("j_series matches the triple product, z = -q^a", [](Rng& r, bool&) {
        long m = uniform(r, 1, 12), a = uniform(r, 0, m), n = uniform(r, 1, 150);
        auto j = j_series(-1, a, m, n);
        auto ref = bilateral_theta(-1, a, m, n);
        // a = 0 and a = m give the same product j(-1; q^m), whose sum counts
        // each exponent from r and 1 - r.
        for (long k = 0; k < n; ++k)
            if (j.coeff(k) != ref[k]) return false;
        return true;
    });
    run.check("theta_monomial handles any offset", [](Rng& r, bool&) {
        long m = uniform(r, 1, 10), a = uniform(r, -25, 25), n = uniform(r, 1, 80);
        int s = prop::coin(r) ? 1 : -1;
        if (s == 1 && a % m == 0) return true;
        auto t = theta_monomial(s, a, m, n);
        auto ref = bilateral_theta(s, a, m, n);
        for (long k = std::min(t.lo(), ref.empty() ? 0 : ref.begin()->first); k < n; ++k)
            if (t.coeff(k) != (ref.count(k) ? ref[k] : 0)) return false;
        return true;
    });
    run.check("expand_product matches factor-by-factor expansion", [](Rng& r, bool&) {
        long n = uniform(r, 1, 120);
        int factors = static_cast<int>(uniform(r, 1, 4));
        std::string text;
        naive::Poly ref(n, 0);
        ref[0] = 1;
        for (int f = 0; f < factors; ++f) {
            long m = uniform(r, 1, 12), a = uniform(r, 1, m);
            long e = uniform(r, -3, 3);
            int sign = prop::coin(r) ? 1 : -1;
            text += (text.empty() ? "" : " ") + std::string("(") + (sign < 0 ? "-" : "") + std::to_string(a) + ";" +
                    std::to_string(m) + ")^" + std::to_string(e);
            ref = naive::mul(ref, literal_product(sign, a, m, e, n));
        }
        auto s = expand_product(ProductSpec::parse(text), n);
        if (s.hi() != n) return false;
        for (long k = 0; k < n; ++k)
            if (s.coeff(k) != ref[k]) return false;
        return s.coeff(0) == 1;
    });
    run.check("product specs compose under append and subs", [](Rng& r, bool&) {
        long n = uniform(r, 1, 100), m = uniform(r, 1, 4);
        auto a = ProductSpec::parse("J" + std::to_string(uniform(r, 1, 6)) + "^" + std::to_string(uniform(r, -2, 2)));
        auto b = ProductSpec::parse("Jb" + std::to_string(uniform(r, 1, 5)) + ",7");
        ProductSpec ab = a;
        ab.append(b);
        auto lhs = expand_product(ab, n), rhs = expand_product(a, n) * expand_product(b, n);
        auto sub = expand_product(ab.subs(m), n), ref = expand_product(ab, n).subs(m);
        return equal_to_order(lhs, rhs, n).equal && equal_to_order(sub, ref, n).equal;
    });
    run.check("eta quotient matches a literal product", [](Rng& r, bool&) {
        static const long divisors[] = {1, 2, 4, 5, 10, 20, 25, 50, 100};
        EtaQuotientSpec spec;
        spec.level = 100;
        long n = uniform(r, 1, 120);
        const long N = n + 100;  // |prefix| stays below 100 for these draws
        naive::Poly body(N, 0);
        body[0] = 1;
        Rational prefix = 0;
        int terms = static_cast<int>(uniform(r, 1, 5));
        for (int t = 0; t < terms; ++t) {
            long d = divisors[uniform(r, 0, 8)];
            long g = uniform(r, 0, d - 1);
            long e = uniform(r, -2, 2);
            spec.terms.push_back({d, g, Rational(e)});
            // q^{d P2(g/d)/2} prod over k = +-g mod d of (1 - q^k)
            Rational t2 = Rational(g, d);
            t2.canonicalize();
            prefix += (t2 * t2 - t2 + Rational(1, 6)) * d / 2 * e;
            if (g == 0) {
                body = naive::mul(body, literal_product(1, d, d, 2 * e, N));
            } else {
                body = naive::mul(body, literal_product(1, g, d, e, N));
                body = naive::mul(body, literal_product(1, d - g, d, e, N));
            }
        }
        prefix.canonicalize();
        if (total_prefix(spec) != prefix) return false;
        if (prefix.get_den() != 1) {
            try {
                expand_eta_quotient(spec, n);
            } catch (const Error& e) {
                return e.code() == ErrorCode::NonIntegralPrefix;
            }
            return false;
        }
        long shift = prefix.get_num().get_si();
        auto s = expand_eta_quotient(spec, n);
        for (long k = std::min(0L, shift); k < n; ++k) {
            long i = k - shift;
            Rational want = (i >= 0 && i < N) ? body[i] : Rational(0);
            if (s.coeff(k) != want) return false;
        }
        return true;
    });
    run.check("unit constant term", [](Rng& r, bool&) {
        long m = uniform(r, 2, 20), a = uniform(r, 1, m - 1);
        auto s = expand_product(ProductSpec::parse("J" + std::to_string(a) + "," + std::to_string(m) + "^" +
                                                   std::to_string(uniform(r, -4, 4))),
                                30);
        return s.coeff(0) == 1;
    });
    return run.finish();
}

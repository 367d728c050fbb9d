#include "rankforge/products.hpp"

#include "rankforge/errors.hpp"

#include <mutex>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace rankforge {

namespace {

std::pair<std::string_view, std::string_view> split_fraction(std::string_view text) {
    auto pos = text.find(" / ");
    if (pos == std::string_view::npos) return {text, {}};
    auto rest = text.substr(pos + 3);
    if (rest.find(" / ") != std::string_view::npos)
        throw Error(ErrorCode::ParseError, "more than one ' / ' in '" + std::string(text) + "'");
    return {text.substr(0, pos), rest};
}

std::vector<std::string> tokens(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream is{std::string(text)};
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

Rational exponent_of(const std::ssub_match& m) {
    return m.matched ? parse_rational(m.str()) : Rational(1);
}

}  // namespace

ProductSpec ProductSpec::parse(std::string_view text) {
    static const std::regex jm(R"(J(\d+)(?:\^(-?\d+(?:/\d+)?))?)");
    static const std::regex jam(R"(J(b?)(\d+),(\d+)(?:\^(-?\d+(?:/\d+)?))?)");
    static const std::regex poch(R"(\((-?)(\d+);(\d+)\)(?:\^(-?\d+(?:/\d+)?))?)");
    ProductSpec spec;
    auto [num, den] = split_fraction(text);
    for (int side = 0; side < 2; ++side) {
        Rational sign = side == 0 ? 1 : -1;
        for (const auto& tok : tokens(side == 0 ? num : den)) {
            std::smatch m;
            if (tok == "1") continue;
            if (std::regex_match(tok, m, jm)) {
                long mod = std::stol(m[1].str());
                Rational e = sign * exponent_of(m[2]);
                if (mod < 1) throw Error(ErrorCode::ParseError, "modulus must be positive in " + tok);
                spec.factors.push_back({1, mod, mod, e});
            } else if (std::regex_match(tok, m, jam)) {
                bool bar = !m[1].str().empty();
                long a = std::stol(m[2].str()), mod = std::stol(m[3].str());
                if (mod < 1 || a > mod) throw Error(ErrorCode::ParseError, "need 0 <= a <= m in " + tok);
                spec.append(theta_spec(bar ? -1 : 1, a, mod), sign * exponent_of(m[4]));
            } else if (std::regex_match(tok, m, poch)) {
                int s = m[1].str().empty() ? 1 : -1;
                long a = std::stol(m[2].str()), mod = std::stol(m[3].str());
                if (mod < 1) throw Error(ErrorCode::ParseError, "modulus must be positive in " + tok);
                spec.factors.push_back({s, a, mod, sign * exponent_of(m[4])});
            } else {
                throw Error(ErrorCode::ParseError, "unknown product token '" + tok + "'");
            }
        }
    }
    return spec;
}

ProductSpec& ProductSpec::append(const ProductSpec& other, const Rational& power) {
    for (auto f : other.factors) {
        f.exponent *= power;
        factors.push_back(f);
    }
    return *this;
}

ProductSpec ProductSpec::subs(long m) const {
    ProductSpec out = *this;
    for (auto& f : out.factors) {
        f.offset *= m;
        f.modulus *= m;
    }
    return out;
}

ElementaryForm elementary_form(const ProductSpec& spec, long n) {
    ElementaryForm out;
    for (const auto& f : spec.factors) {
        if (f.modulus < 1 || f.offset < 0)
            throw Error(ErrorCode::OutOfRange, "product factor needs offset >= 0 and modulus >= 1");
        if (sgn(f.exponent) == 0) continue;
        for (long k = f.offset; k < n; k += f.modulus) {
            if (k == 0) {
                if (f.sign == 1) {
                    if (sgn(f.exponent) < 0) throw Error(ErrorCode::LeadingZero, "division by (1; q^m)");
                    out.vanishes = true;
                } else {
                    out.two_power += f.exponent;
                }
                continue;
            }
            if (f.sign == 1) {
                out.c[k] += f.exponent;
            } else {
                // 1 + q^k = (1 - q^{2k}) / (1 - q^k)
                out.c[k] -= f.exponent;
                if (2 * k < n) out.c[2 * k] += f.exponent;
            }
        }
    }
    for (auto it = out.c.begin(); it != out.c.end();) {
        if (sgn(it->second) == 0)
            it = out.c.erase(it);
        else
            ++it;
    }
    return out;
}

namespace {

std::vector<Integer> expand_by_passes(const std::map<long, long>& c, long n) {
    std::vector<Integer> a(static_cast<std::size_t>(n));
    a[0] = 1;
    for (const auto& [k, e] : c) {
        if (k >= n) continue;
        auto uk = static_cast<std::size_t>(k);
        if (e > 0) {
            for (long t = 0; t < e; ++t)
                for (std::size_t i = a.size() - 1; i >= uk; --i) {
                    a[i] -= a[i - uk];
                    if (i == uk) break;
                }
        } else {
            for (long t = 0; t < -e; ++t)
                for (std::size_t i = uk; i < a.size(); ++i) a[i] += a[i - uk];
        }
    }
    return a;
}

std::vector<Integer> expand_by_log_derivative(const std::map<long, long>& c, long n) {
    auto un = static_cast<std::size_t>(n);
    std::vector<Integer> s(un);
    for (const auto& [k, e] : c) {
        if (k >= n) continue;
        Integer w = Integer(k) * e;
        for (long m = k; m < n; m += k) s[static_cast<std::size_t>(m)] -= w;
    }
    std::vector<std::size_t> nz;
    for (std::size_t m = 1; m < un; ++m)
        if (sgn(s[m]) != 0) nz.push_back(m);
    std::vector<Integer> f(un);
    f[0] = 1;
    Integer acc;
    for (std::size_t i = 1; i < un; ++i) {
        acc = 0;
        for (std::size_t m : nz) {
            if (m > i) break;
            if (sgn(f[i - m]) != 0) mpz_addmul(acc.get_mpz_t(), s[m].get_mpz_t(), f[i - m].get_mpz_t());
        }
        mpz_divexact_ui(f[i].get_mpz_t(), acc.get_mpz_t(), i);
    }
    return f;
}

struct ExpansionCache {
    std::mutex mu;
    std::unordered_map<std::string, std::vector<Integer>> data;
};

ExpansionCache& cache() {
    static ExpansionCache c;
    return c;
}

std::string cache_key(const std::map<long, long>& c) {
    std::string key;
    for (const auto& [k, e] : c) {
        key += std::to_string(k);
        key += ':';
        key += std::to_string(e);
        key += ';';
    }
    return key;
}

}  // namespace

std::vector<Integer> expand_elementary(const std::map<long, long>& c, long n) {
    if (n <= 0) return {};
    // Entries at k >= n do not affect the window; dropping them widens cache reuse.
    std::map<long, long> trimmed;
    for (const auto& [k, e] : c)
        if (k < n && e != 0) trimmed[k] = e;
    std::string key = cache_key(trimmed);
    {
        std::lock_guard lock(cache().mu);
        auto it = cache().data.find(key);
        if (it != cache().data.end() && static_cast<long>(it->second.size()) >= n)
            return {it->second.begin(), it->second.begin() + n};
    }
    double passes = 0;
    for (const auto& [k, e] : trimmed) passes += static_cast<double>(std::labs(e)) * static_cast<double>(n - k);
    double logder = 1.5 * static_cast<double>(n) * static_cast<double>(n);
    auto out = passes <= logder ? expand_by_passes(trimmed, n) : expand_by_log_derivative(trimmed, n);
    {
        std::lock_guard lock(cache().mu);
        auto& slot = cache().data[key];
        if (slot.size() < out.size()) slot = out;
    }
    return out;
}

QSeries expand_product(const ProductSpec& spec, long n) {
    auto form = elementary_form(spec, n);
    if (form.vanishes) return QSeries::zero();
    if (n <= 0) return QSeries::zero_to(n);
    std::map<long, long> ints;
    for (const auto& [k, e] : form.c) {
        if (!is_integer(e))
            throw Error(ErrorCode::NonIntegralExponent,
                        "elementary factor (1 - q^" + std::to_string(k) + ") has exponent " + to_fraction(e));
        ints[k] = e.get_num().get_si();
    }
    if (!is_integer(form.two_power))
        throw Error(ErrorCode::NonIntegralExponent, "constant factor 2 has exponent " + to_fraction(form.two_power));
    auto coeffs = expand_elementary(ints, n);
    std::vector<Rational> v(coeffs.size());
    long tp = form.two_power.get_num().get_si();
    Rational scale = 1;
    if (tp > 0) scale = Rational(Integer(1) << static_cast<mp_bitcnt_t>(tp));
    if (tp < 0) scale = Rational(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(-tp));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(coeffs[i]) != 0) v[i] = scale * Rational(coeffs[i]);
    return QSeries::from_coeffs(0, std::move(v), n);
}

ProductSpec theta_spec(int s, long a, long m) {
    if (m < 1 || a < 0 || a > m) throw Error(ErrorCode::OutOfRange, "theta needs 0 <= a <= m");
    ProductSpec p;
    p.factors.push_back({s, a, m, 1});
    p.factors.push_back({s, m - a, m, 1});
    p.factors.push_back({1, m, m, 1});
    return p;
}

QSeries j_series(int s, long a, long m, long n) {
    if (m < 1 || a < 0) throw Error(ErrorCode::OutOfRange, "theta needs a >= 0 and m >= 1");
    // Offsets past m are reduced mod m without the quasi-periodic sign and
    // power; callers wanting the true value use theta_monomial.
    if (a > m) a %= m;
    return expand_product(theta_spec(s, a, m), n);
}

ReducedTheta reduce_theta(int s, long a, long m) {
    if (m < 1) throw Error(ErrorCode::OutOfRange, "theta modulus must be positive");
    long r = ((a % m) + m) % m;
    long t = (a - r) / m;
    // j(z q^{mt}; q^m) = (-1)^t z^{-t} q^{-m t(t-1)/2} j(z; q^m), z = s q^r
    ReducedTheta out;
    out.s = s;
    out.r = r;
    int parity = static_cast<int>(((t % 2) + 2) % 2);
    out.sign = (parity ? -1 : 1) * ((parity && s == -1) ? -1 : 1);
    out.shift = -r * t - m * t * (t - 1) / 2;
    return out;
}

QSeries theta_monomial(int s, long a, long m, long n) {
    auto rt = reduce_theta(s, a, m);
    return j_series(rt.s, rt.r, m, n - rt.shift).shift(rt.shift).scale(rt.sign);
}

Rational bernoulli_p2(const Rational& t) {
    Rational f = frac(t);
    return f * f - f + Rational(1, 6);
}

EtaQuotientSpec EtaQuotientSpec::parse(std::string_view text, long level) {
    static const std::regex tok_re(R"(e(\d+),(\d+)(?:\^(-?\d+(?:/\d+)?))?)");
    EtaQuotientSpec spec;
    spec.level = level;
    auto [num, den] = split_fraction(text);
    for (int side = 0; side < 2; ++side) {
        for (const auto& tok : tokens(side == 0 ? num : den)) {
            if (tok == "1") continue;
            std::smatch m;
            if (!std::regex_match(tok, m, tok_re)) throw Error(ErrorCode::ParseError, "unknown eta token '" + tok + "'");
            Rational r = exponent_of(m[3]);
            if (side == 1) r = -r;
            spec.terms.push_back({std::stol(m[1].str()), std::stol(m[2].str()), r});
        }
    }
    spec.validate();
    return spec;
}

EtaQuotientSpec& EtaQuotientSpec::append(const EtaQuotientSpec& other, const Rational& power) {
    for (auto t : other.terms) {
        t.r *= power;
        terms.push_back(t);
    }
    return *this;
}

void EtaQuotientSpec::validate() const {
    for (const auto& t : terms) {
        if (t.delta < 1 || level % t.delta != 0)
            throw Error(ErrorCode::OutOfRange, "eta index " + std::to_string(t.delta) + " does not divide level");
        if (t.g < 0 || t.g > t.delta) throw Error(ErrorCode::OutOfRange, "eta needs 0 <= g <= delta");
        bool special = t.g == 0 || t.g == t.delta || 2 * t.g == t.delta;
        if (!special && !is_integer(t.r))
            throw Error(ErrorCode::NonIntegralExponent, "eta_{" + std::to_string(t.delta) + "," + std::to_string(t.g) +
                                                            "} needs an integral exponent");
        if (special && !is_integer(2 * t.r))
            throw Error(ErrorCode::NonIntegralExponent, "eta exponent must be a half integer");
    }
}

Rational eta_prefix(long delta, long g) {
    if (g % delta == 0) return ratio(delta, 12);
    if (2 * g == delta) return ratio(-delta, 24);
    return bernoulli_p2(ratio(g, delta)) * ratio(delta, 2);
}

ProductSpec eta_body(long delta, long g, const Rational& r) {
    ProductSpec p;
    if (g % delta == 0) {
        p.factors.push_back({1, delta, delta, 2 * r});
    } else if (2 * g == delta) {
        p.factors.push_back({1, g, delta, 2 * r});
    } else {
        p.factors.push_back({1, g, delta, r});
        p.factors.push_back({1, delta - g, delta, r});
    }
    return p;
}

EtaSeries eta_series(long delta, long g, long n) {
    if (delta < 1 || g < 0 || g > delta) throw Error(ErrorCode::OutOfRange, "eta needs 0 <= g <= delta");
    return {eta_prefix(delta, g), expand_product(eta_body(delta, g), n)};
}

Rational total_prefix(const EtaQuotientSpec& spec) {
    Rational s = 0;
    for (const auto& t : spec.terms) s += eta_prefix(t.delta, t.g) * t.r;
    return s;
}

ProductSpec body_spec(const EtaQuotientSpec& spec) {
    ProductSpec p;
    for (const auto& t : spec.terms) p.append(eta_body(t.delta, t.g, t.r));
    return p;
}

QSeries expand_eta_quotient(const EtaQuotientSpec& spec, long n) {
    spec.validate();
    Rational pre = total_prefix(spec);
    if (!is_integer(pre))
        throw Error(ErrorCode::NonIntegralPrefix, "total q-power " + to_fraction(pre) + " is not an integer");
    long p = pre.get_num().get_si();
    return expand_product(body_spec(spec), n - p).shift(p);
}

}  // namespace rankforge

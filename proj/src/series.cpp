#include "rankforge/series.hpp"

#include "rankforge/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace rankforge {

namespace {

long add_hi(long a, long b) {
    if (a == QSeries::kInf || b == QSeries::kInf) return QSeries::kInf;
    return a + b;
}

Integer lcm_of_denominators(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v)
        if (x.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

std::vector<Integer> scaled(const std::vector<Rational>& v, const Integer& l, std::size_t n) {
    std::vector<Integer> out(std::min(n, v.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        if (l == 1) {
            out[i] = v[i].get_num();
        } else {
            Integer t = l / v[i].get_den();
            out[i] = t * v[i].get_num();
        }
    }
    return out;
}

}  // namespace

QSeries::QSeries() = default;

QSeries::QSeries(long lo, long hi, std::vector<Rational> c) : lo_(lo), hi_(hi), c_(std::move(c)) {
    normalize();
}

void QSeries::normalize() {
    if (hi_ == kInf) {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
        std::size_t first = 0;
        while (first < c_.size() && sgn(c_[first]) == 0) ++first;
        if (first == c_.size()) {
            c_.clear();
            lo_ = 0;
        } else if (first > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
            lo_ += static_cast<long>(first);
        }
    } else {
        if (hi_ < lo_) hi_ = lo_;
        c_.resize(static_cast<std::size_t>(hi_ - lo_));
    }
}

QSeries QSeries::zero() { return QSeries(); }

QSeries QSeries::zero_to(long hi) {
    if (hi <= 0) return QSeries(hi, hi, {});
    return QSeries(0, hi, std::vector<Rational>(static_cast<std::size_t>(hi)));
}

QSeries QSeries::constant(const Rational& c, long hi) { return monomial(c, 0, hi); }

QSeries QSeries::monomial(const Rational& c, long e, long hi) {
    if (hi == kInf) return QSeries(e, kInf, {c});
    if (hi <= e) return QSeries(hi, hi, {});
    std::vector<Rational> v(static_cast<std::size_t>(hi - e));
    v[0] = c;
    return QSeries(e, hi, std::move(v));
}

QSeries QSeries::from_coeffs(long lo, std::vector<Rational> coeffs, long hi) {
    if (hi != kInf && hi < lo) throw Error(ErrorCode::OutOfRange, "hi below lo");
    if (hi != kInf && static_cast<long>(coeffs.size()) > hi - lo)
        coeffs.resize(static_cast<std::size_t>(hi - lo));
    return QSeries(lo, hi, std::move(coeffs));
}

QSeries QSeries::polynomial(long lo, std::vector<Rational> coeffs) {
    return QSeries(lo, kInf, std::move(coeffs));
}

bool QSeries::is_exact_zero() const { return hi_ == kInf && c_.empty(); }

Rational QSeries::coeff(long e) const {
    if (e >= hi_)
        throw Error(ErrorCode::InsufficientOrder,
                    "coefficient at " + std::to_string(e) + " requested, known below " + std::to_string(hi_));
    if (e < lo_) return 0;
    auto i = static_cast<std::size_t>(e - lo_);
    return i < c_.size() ? c_[i] : Rational(0);
}

std::optional<long> QSeries::leading_exponent() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return lo_ + static_cast<long>(i);
    return std::nullopt;
}

QSeries QSeries::truncate(long n) const {
    if (n >= hi_) return *this;
    if (n <= lo_) return QSeries(n, n, {});
    std::vector<Rational> v(c_.begin(), c_.begin() + std::min<long>(n - lo_, static_cast<long>(c_.size())));
    return QSeries(lo_, n, std::move(v));
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    long lo = std::min(a.lo_, b.lo_);
    long hi = std::min(a.hi_, b.hi_);
    long top = hi;
    if (hi == QSeries::kInf)
        top = std::max(a.lo_ + static_cast<long>(a.c_.size()), b.lo_ + static_cast<long>(b.c_.size()));
    if (top < lo) return QSeries(hi, hi, {});
    std::vector<Rational> v(static_cast<std::size_t>(top - lo));
    for (const QSeries* s : {&a, &b}) {
        for (std::size_t i = 0; i < s->c_.size(); ++i) {
            long e = s->lo_ + static_cast<long>(i);
            if (e >= top) break;
            if (sgn(s->c_[i]) != 0) v[static_cast<std::size_t>(e - lo)] += s->c_[i];
        }
    }
    return QSeries(lo, hi, std::move(v));
}

QSeries operator-(const QSeries& a) { return a.scale(-1); }
QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return QSeries();
    long lo = a.lo_ + b.lo_;
    long hi = std::min(add_hi(a.hi_, b.lo_), add_hi(b.hi_, a.lo_));
    long len;
    if (hi == QSeries::kInf)
        len = static_cast<long>(a.c_.size() + b.c_.size()) - 1;
    else
        len = hi - lo;
    if (len <= 0) return QSeries(std::max(hi, lo), std::max(hi, lo), {});
    auto n = static_cast<std::size_t>(len);
    Integer la = lcm_of_denominators(a.c_), lb = lcm_of_denominators(b.c_);
    auto ia = scaled(a.c_, la, n), ib = scaled(b.c_, lb, n);
    std::vector<Integer> acc(n);
    for (std::size_t i = 0; i < ia.size(); ++i) {
        if (sgn(ia[i]) == 0) continue;
        std::size_t jmax = std::min(ib.size(), n - i);
        for (std::size_t j = 0; j < jmax; ++j)
            if (sgn(ib[j]) != 0) mpz_addmul(acc[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
    }
    Integer den = la * lb;
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(acc[i]) == 0) continue;
        v[i] = Rational(acc[i], den);
        v[i].canonicalize();
    }
    return QSeries(lo, hi, std::move(v));
}

QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }

QSeries QSeries::scale(const Rational& c) const {
    if (sgn(c) == 0) return hi_ == kInf ? QSeries() : QSeries(lo_, hi_, {});
    std::vector<Rational> v(c_);
    for (auto& x : v)
        if (sgn(x) != 0) x *= c;
    return QSeries(lo_, hi_, std::move(v));
}

QSeries QSeries::shift(long k) const {
    if (is_exact_zero()) return *this;
    return QSeries(lo_ + k, add_hi(hi_, k), c_);
}

QSeries QSeries::subs(long m) const {
    if (m < 1) throw Error(ErrorCode::OutOfRange, "substitution q -> q^m needs m >= 1");
    if (m == 1 || is_exact_zero()) return *this;
    long hi = hi_ == kInf ? kInf : hi_ * m;
    std::size_t len = c_.empty() ? 0 : (c_.size() - 1) * static_cast<std::size_t>(m) + 1;
    if (hi != kInf) len = static_cast<std::size_t>(hi - lo_ * m);
    std::vector<Rational> v(len);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * static_cast<std::size_t>(m)] = c_[i];
    return QSeries(lo_ * m, hi, std::move(v));
}

QSeries QSeries::flip() const {
    std::vector<Rational> v(c_);
    for (std::size_t i = 0; i < v.size(); ++i) {
        long e = lo_ + static_cast<long>(i);
        if (e % 2 != 0) v[i] = -v[i];
    }
    return QSeries(lo_, hi_, std::move(v));
}

namespace {
long ceil_div(long a, long m) {
    long q = a / m;
    if (a % m != 0 && ((a < 0) == (m < 0))) ++q;
    return q;
}
}  // namespace

QSeries QSeries::dissect(long m, long r) const {
    if (m < 1 || r < 0 || r >= m) throw Error(ErrorCode::OutOfRange, "dissection needs 0 <= r < m");
    if (is_exact_zero()) return *this;
    long lo = ceil_div(lo_ - r, m);
    long top = hi_ == kInf ? ceil_div(lo_ + static_cast<long>(c_.size()) - r, m) : ceil_div(hi_ - r, m);
    long hi = hi_ == kInf ? kInf : top;
    std::vector<Rational> v(static_cast<std::size_t>(std::max(0L, top - lo)));
    for (long n = lo; n < top; ++n) v[static_cast<std::size_t>(n - lo)] = coeff(m * n + r);
    return QSeries(lo, hi, std::move(v));
}

QSeries invert(const QSeries& a, std::optional<long> order) {
    auto lead = a.leading_exponent();
    if (!lead) throw Error(ErrorCode::LeadingZero, "series has no nonzero coefficient in its window");
    long e = *lead;
    const auto& c = a.stored();
    auto base = static_cast<std::size_t>(e - a.lo());
    Rational c0 = c[base];
    if (a.exact() && base + 1 == c.size()) {
        Rational inv = 1 / c0;
        return QSeries::monomial(inv, -e, order ? *order : QSeries::kInf);
    }
    long hi;
    if (a.exact()) {
        if (!order) throw Error(ErrorCode::InsufficientOrder, "inverse of a polynomial needs an explicit order");
        hi = *order;
    } else {
        hi = a.hi() - 2 * e;
        if (order) hi = std::min(hi, *order);
    }
    long n = hi + e;  // number of coefficients b_0..b_{n-1} at exponents -e..hi-1
    if (n <= 0) return QSeries::from_coeffs(hi, {}, hi);
    // Scale to integers: a = (1/L) * A with integer A; b = L * B where A*B = 1.
    std::vector<Rational> tail(c.begin() + static_cast<long>(base), c.end());
    tail.resize(static_cast<std::size_t>(n));
    Integer L = 1;
    for (const auto& x : tail)
        if (x.get_den() != 1) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> A(tail.size());
    std::size_t last = 0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (sgn(tail[i]) == 0) continue;
        A[i] = (L / tail[i].get_den()) * tail[i].get_num();
        last = i;
    }
    // B_k = -(1/A0) sum_{j>=1} A_j B_{k-j}; keep numerators over A0^k.
    std::vector<Rational> B(static_cast<std::size_t>(n));
    std::vector<std::size_t> nz;
    for (std::size_t j = 1; j <= last; ++j)
        if (sgn(A[j]) != 0) nz.push_back(j);
    bool unit = (A[0] == 1 || A[0] == -1);
    if (unit) {
        std::vector<Integer> Bi(static_cast<std::size_t>(n));
        Bi[0] = A[0];
        Integer s;
        for (std::size_t k = 1; k < Bi.size(); ++k) {
            s = 0;
            for (std::size_t j : nz) {
                if (j > k) break;
                if (sgn(Bi[k - j]) != 0) mpz_addmul(s.get_mpz_t(), A[j].get_mpz_t(), Bi[k - j].get_mpz_t());
            }
            Bi[k] = A[0] == 1 ? Integer(-s) : s;
        }
        for (std::size_t k = 0; k < Bi.size(); ++k)
            if (sgn(Bi[k]) != 0) B[k] = Rational(Bi[k] * L);
    } else {
        Rational a0(A[0]);
        B[0] = 1 / a0;
        for (std::size_t k = 1; k < B.size(); ++k) {
            Rational s = 0;
            for (std::size_t j : nz) {
                if (j > k) break;
                if (sgn(B[k - j]) != 0) s += Rational(A[j]) * B[k - j];
            }
            B[k] = -s / a0;
        }
        for (auto& x : B)
            if (sgn(x) != 0) x *= Rational(L);
    }
    return QSeries::from_coeffs(-e, std::move(B), hi);
}

Comparison equal_to_order(const QSeries& a, const QSeries& b, long n) {
    if (std::min(a.hi(), b.hi()) < n)
        throw Error(ErrorCode::InsufficientOrder, "comparison to order " + std::to_string(n) +
                                                      " but known only below " +
                                                      std::to_string(std::min(a.hi(), b.hi())));
    Comparison out;
    long lo = std::min(a.lo(), b.lo());
    for (long e = lo; e < n; ++e) {
        Rational x = a.coeff(e), y = b.coeff(e);
        if (x != y) {
            out.equal = false;
            out.exponent = e;
            out.lhs = x;
            out.rhs = y;
            return out;
        }
    }
    return out;
}

std::string QSeries::to_text(std::size_t max_terms) const {
    std::ostringstream os;
    std::size_t shown = 0;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Rational& x = c_[i];
        if (sgn(x) == 0) continue;
        if (shown == max_terms) {
            os << " + ...";
            break;
        }
        long e = lo_ + static_cast<long>(i);
        Rational ax = abs(x);
        if (first)
            os << (sgn(x) < 0 ? "-" : "");
        else
            os << (sgn(x) < 0 ? " - " : " + ");
        bool unit = ax == 1;
        if (e == 0) {
            os << ax.get_str();
        } else {
            if (!unit) os << ax.get_str() << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
        first = false;
        ++shown;
    }
    if (first) os << "0";
    if (hi_ != kInf) os << " + O(q^" << hi_ << ")";
    return os.str();
}

nlohmann::json QSeries::to_json() const {
    nlohmann::json j;
    j["lo"] = lo_;
    std::vector<std::string> cs;
    cs.reserve(c_.size());
    for (const auto& x : c_) cs.push_back(to_fraction(x));
    if (hi_ == kInf) {
        j["hi"] = lo_ + static_cast<long>(c_.size());
        j["exact"] = true;
    } else {
        j["hi"] = hi_;
    }
    j["coeffs"] = cs;
    return j;
}

QSeries QSeries::from_json(const nlohmann::json& j) {
    try {
        long lo = j.at("lo").get<long>();
        long hi = j.at("hi").get<long>();
        std::vector<Rational> v;
        for (const auto& s : j.at("coeffs")) v.push_back(parse_rational(s.get<std::string>()));
        if (j.value("exact", false)) return polynomial(lo, std::move(v));
        if (static_cast<long>(v.size()) != hi - lo)
            throw Error(ErrorCode::ParseError, "coefficient count does not match window");
        return from_coeffs(lo, std::move(v), hi);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace rankforge

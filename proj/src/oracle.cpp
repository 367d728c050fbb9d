#include "rankforge/oracle.hpp"

#include "rankforge/errors.hpp"

#include <sstream>

namespace rankforge {

std::string to_string(RankConvention c) {
    return std::string("chi=") + (c.chi == ChiConvention::A ? "a" : "b") +
           ",odd-sign=" + (c.odd == OddSign::Plus ? "plus" : "minus");
}

namespace {

void enumerate_into(long rem, long max_size, bool overline_allowed, Overpartition& cur,
                    std::vector<Overpartition>& out) {
    if (rem == 0) {
        out.push_back(cur);
        return;
    }
    for (long s = std::min(rem, max_size); s >= 1; --s) {
        if (s < max_size || overline_allowed) {
            cur.push_back({s, true});
            enumerate_into(rem - s, s, false, cur, out);
            cur.pop_back();
        }
        cur.push_back({s, false});
        enumerate_into(rem - s, s, false, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Overpartition> enumerate(long n) {
    if (n < 0) throw Error(ErrorCode::OutOfRange, "weight must be nonnegative");
    std::vector<Overpartition> out;
    Overpartition cur;
    enumerate_into(n, n, true, cur, out);
    return out;
}

long weight(const Overpartition& p) {
    long w = 0;
    for (const auto& part : p) w += part.size;
    return w;
}

long m2_rank(const Overpartition& p, RankConvention c) {
    if (p.empty()) return 0;
    long largest = p.front().size;
    long parts = static_cast<long>(p.size());
    long odd_plain = 0;
    bool has_over = false, has_plain = false;
    for (const auto& part : p) {
        if (part.size % 2 == 1 && !part.overlined) ++odd_plain;
        if (part.size == largest) (part.overlined ? has_over : has_plain) = true;
    }
    bool plain_largest = c.chi == ChiConvention::A ? !has_over : has_plain;
    long chi = (largest % 2 == 1 && plain_largest) ? 1 : 0;
    long sign = c.odd == OddSign::Plus ? 1 : -1;
    return (largest + 1) / 2 - parts + sign * odd_plain - chi;
}

std::string to_text(const Overpartition& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p[i].size;
        if (p[i].overlined) os << '\'';
    }
    os << ')';
    return os.str();
}

std::vector<ZLaurentPoly> gen_fn_M2(long n) {
    if (n < 1) throw Error(ErrorCode::OutOfRange, "order must be positive");
    // Dense [q^e][z^k] with k in [-n, n]. Bilateral sum first.
    const long width = 2 * n + 1;
    std::vector<std::vector<Integer>> sum(static_cast<std::size_t>(n), std::vector<Integer>(width));
    auto at = [&](long e, long k) -> Integer& { return sum[static_cast<std::size_t>(e)][static_cast<std::size_t>(k + n)]; };
    at(0, 0) += 1;
    for (long j = -n; j < n; ++j) {
        if (j == 0) continue;
        long sign = (j % 2 == 0) ? 1 : -1;
        long base = j * j + 2 * j;
        long step = std::abs(2 * j);
        // 1/((1 - z q^{2j})(1 - q^{2j}/z)); for j < 0 both factors are
        // rewritten as q^{2|j|} z^{-+1} / (1 - z^{-+1} q^{2|j|}).
        if (j < 0) base += 2 * step;
        for (long a = 0; base + a * step < n; ++a)
            for (long b = 0; base + (a + b) * step < n; ++b) {
                long e = base + (a + b) * step;
                long k = a - b;
                // (1 - z)(1 - 1/z) = 2 - z - 1/z
                at(e, k) += 2 * sign;
                if (k + 1 <= n) at(e, k + 1) -= sign;
                if (k - 1 >= -n) at(e, k - 1) -= sign;
            }
    }
    // overpartition generating function (-q;q)/(q;q)
    std::vector<Integer> pbar(static_cast<std::size_t>(n));
    pbar[0] = 1;
    for (long k = 1; k < n; ++k)
        for (long i = n - 1; i >= k; --i) pbar[i] += pbar[i - k];
    for (long k = 1; k < n; ++k)
        for (long i = k; i < n; ++i) pbar[i] += pbar[i - k];
    std::vector<ZLaurentPoly> out(static_cast<std::size_t>(n));
    for (long e = 0; e < n; ++e)
        for (long k = -n; k <= n; ++k) {
            Integer acc = 0;
            for (long i = 0; i <= e; ++i) acc += pbar[i] * at(e - i, k);
            if (sgn(acc) != 0) out[e].add_term(k, acc);
        }
    return out;
}

RankTable::RankTable(long max_n) : max_n_(max_n) {
    if (max_n < 0) throw Error(ErrorCode::OutOfRange, "table size must be nonnegative");
    // Uncalibrated conventions can push ranks down to -2n - 1.
    for (long n = 0; n <= max_n; ++n) rows_.emplace_back(static_cast<std::size_t>(2 * reach(n) + 1), 0);
}

void RankTable::check(long n) const {
    if (n < 0 || n > max_n_)
        throw Error(ErrorCode::InsufficientTable,
                    "weight " + std::to_string(n) + " outside table of size " + std::to_string(max_n_));
}

std::int64_t RankTable::count(long m, long n) const {
    check(n);
    if (m < -reach(n) || m > reach(n)) return 0;
    return rows_[n][m + reach(n)];
}

std::int64_t RankTable::total(long n) const {
    check(n);
    std::int64_t t = 0;
    for (auto v : rows_[n]) t += v;
    return t;
}

void RankTable::add(long m, long n, std::int64_t v) {
    check(n);
    if (m < -reach(n) || m > reach(n)) throw Error(ErrorCode::OutOfRange, "rank outside table row");
    rows_[n][m + reach(n)] += v;
}

nlohmann::json RankTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (long n = 0; n <= max_n_; ++n)
        for (long m = -reach(n); m <= reach(n); ++m)
            if (auto c = count(m, n)) rows.push_back({{"n", n}, {"m", m}, {"count", c}});
    return {{"max_n", max_n_}, {"rows", rows}};
}

RankTable rank_counts(long max_n, RankConvention c) {
    RankTable t(max_n);
    for (long n = 0; n <= max_n; ++n)
        for (const auto& p : enumerate(n)) t.add(m2_rank(p, c), n, 1);
    return t;
}

RankTable rank_counts_fast(long max_n, RankConvention c) {
    if (max_n > kMaxTableWeight)
        throw Error(ErrorCode::OutOfRange, "fast table is limited to weight " + std::to_string(kMaxTableWeight));
    RankTable t(max_n);
    t.add(0, 0, 1);
    const long sign = c.odd == OddSign::Plus ? 1 : -1;
    // partial[w][m + off]: overpartitions of w into parts < L with rank
    // contribution m, where each part adds -1, plus sign for plain odd parts.
    const long off = 2 * max_n;
    const std::size_t width = static_cast<std::size_t>(3 * max_n + 1);
    std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(max_n + 1),
                                                   std::vector<std::int64_t>(width, 0));
    partial[0][off] = 1;
    for (long L = 1; L <= max_n; ++L) {
        const long plain = -1 + (L % 2 == 1 ? sign : 0);
        const long over = -1;
        // Configurations of the largest size: o overlined (0/1), k plain copies.
        for (long o = 0; o <= 1; ++o)
            for (long k = 0; (o + k) * L <= max_n; ++k) {
                if (o + k == 0) continue;
                long w = (o + k) * L;
                bool plain_largest = c.chi == ChiConvention::A ? o == 0 : k > 0;
                long chi = (L % 2 == 1 && plain_largest) ? 1 : 0;
                long shift = (L + 1) / 2 - chi + o * over + k * plain;
                for (long n = 0; n + w <= max_n; ++n)
                    for (std::size_t i = 0; i < width; ++i)
                        if (auto v = partial[n][i]) t.add(static_cast<long>(i) - off + shift, n + w, v);
            }
        // Allow size L among the smaller parts for the next round.
        auto next = partial;
        for (long o = 0; o <= 1; ++o)
            for (long k = 0; (o + k) * L <= max_n; ++k) {
                if (o + k == 0) continue;
                long w = (o + k) * L;
                long shift = o * over + k * plain;
                for (long n = 0; n + w <= max_n; ++n)
                    for (std::size_t i = 0; i < width; ++i)
                        if (auto v = partial[n][i]) {
                            long j = static_cast<long>(i) + shift;
                            if (j >= 0 && j < static_cast<long>(width)) next[n + w][j] += v;
                        }
            }
        partial = std::move(next);
    }
    return t;
}

std::int64_t residue_counts(const RankTable& table, long s, long l, long n) {
    if (l < 1 || s < 0 || s >= l) throw Error(ErrorCode::OutOfRange, "need 0 <= s < l");
    if (n < 0 || n > table.max_n())
        throw Error(ErrorCode::InsufficientTable, "weight " + std::to_string(n) + " not in table");
    std::int64_t total = 0;
    for (long m = -RankTable::reach(n); m <= RankTable::reach(n); ++m)
        if (((m - s) % l + l) % l == 0) total += table.count(m, n);
    return total;
}

CalibrationResult calibrate(long max_n) {
    CalibrationResult res;
    res.order = max_n;
    auto gf = gen_fn_M2(max_n + 1);
    int passed = 0;
    for (auto chi : {ChiConvention::A, ChiConvention::B})
        for (auto odd : {OddSign::Plus, OddSign::Minus}) {
            RankConvention c{chi, odd};
            auto table = rank_counts(max_n, c);
            bool ok = true;
            for (long n = 0; n <= max_n && ok; ++n) {
                ZLaurentPoly row;
                for (long m = -RankTable::reach(n); m <= RankTable::reach(n); ++m)
                    if (auto v = table.count(m, n)) row.add_term(m, Integer(static_cast<long>(v)));
                ok = row == gf[n];
            }
            res.trials.push_back({c, ok});
            if (ok) {
                ++passed;
                res.unique = c;
            }
        }
    if (passed != 1) res.unique.reset();
    return res;
}

}  // namespace rankforge

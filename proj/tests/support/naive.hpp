#pragma once

// Independent reference computations for tests. Nothing here calls the
// library; everything is plain loops over integer or rational vectors.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <vector>

namespace naive {

using Poly = std::vector<mpq_class>;  // coefficients of q^0 .. q^{n-1}

inline Poly mul(const Poly& a, const Poly& b) {
    Poly c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; i + j < c.size() && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// prod_{k>=0} (1 + sign q^{a + m k})^{+1}, truncated; a >= 1.
inline Poly linear_factor_product(int sign, long a, long m, long n) {
    Poly p(n, 0);
    p[0] = 1;
    for (long e = a; e < n; e += m)
        for (long i = n - 1; i >= e; --i) p[i] += sign * p[i - e];
    return p;
}

// 1 / prod_{k>=0} (1 - q^{a + m k}), truncated; a >= 1.
inline Poly inverse_linear_product(long a, long m, long n) {
    Poly p(n, 0);
    p[0] = 1;
    for (long e = a; e < n; e += m)
        for (long i = e; i < n; ++i) p[i] += p[i - e];
    return p;
}

// Euler's pentagonal series for (q;q)_inf.
inline Poly pentagonal(long n) {
    Poly p(n, 0);
    for (long k = -n; k <= n; ++k) {
        long e = k * (3 * k - 1) / 2;
        if (e >= 0 && e < n) p[e] += (k % 2 == 0) ? 1 : -1;
    }
    return p;
}

// sum_{r in Z} (-1)^r q^{m r(r-1)/2 + a r} = j(q^a; q^m) by the triple product.
inline Poly theta_sum(long a, long m, long n) {
    Poly p(n, 0);
    for (long r = -2 * n - 2; r <= 2 * n + 2; ++r) {
        long e = m * r * (r - 1) / 2 + a * r;
        if (e >= 0 && e < n) p[e] += (r % 2 == 0) ? 1 : -1;
    }
    return p;
}

// Overpartition counts by brute force over partitions with a subset of
// distinct parts overlined.
inline std::vector<long> overpartition_counts(long n) {
    // Coefficients of prod_k (1 + q^k) / (1 - q^k).
    std::vector<long> out(n + 1, 0);
    out[0] = 1;
    for (long k = 1; k <= n; ++k) {
        for (long i = n; i >= k; --i) out[i] += out[i - k];
        for (long i = k; i <= n; ++i) out[i] += out[i - k];
    }
    return out;
}

// M2-rank counts by brute force; chi_b selects convention B, odd_plus the sign.
// Returns counts[n][m + offset] with offset = 2n + 2.
inline std::vector<std::map<long, long>> rank_counts(long n, bool chi_b, bool odd_plus) {
    std::vector<std::map<long, long>> out(n + 1);
    struct Block {
        long size, plain;
        bool over;
    };
    std::vector<Block> blocks;
    std::function<void(long, long, long)> rec = [&](long total, long rem, long maxp) {
        if (rem == 0) {
            if (blocks.empty()) {
                out[total][0] += 1;
                return;
            }
            long L = blocks.front().size, parts = 0, odd_plain = 0;
            for (const auto& b : blocks) {
                parts += b.plain + (b.over ? 1 : 0);
                if (b.size % 2 == 1) odd_plain += b.plain;
            }
            const auto& top = blocks.front();
            bool largest_plain = chi_b ? top.plain > 0 : !top.over;
            long chi = (L % 2 == 1 && largest_plain) ? 1 : 0;
            long rank = (L + 1) / 2 - parts + (odd_plus ? odd_plain : -odd_plain) - chi;
            out[total][rank] += 1;
            return;
        }
        for (long p = std::min(rem, maxp); p >= 1; --p)
            for (long k = 1; k * p <= rem; ++k)
                for (int over = 0; over <= 1; ++over) {
                    blocks.push_back({p, k - over, over == 1});
                    rec(total, rem - k * p, p - 1);
                    blocks.pop_back();
                }
    };
    for (long t = 0; t <= n; ++t) rec(t, t, t);
    return out;
}

}  // namespace naive

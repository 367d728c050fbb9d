#pragma once

#include "rankforge/zpoly.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rankforge {

struct Part {
    long size = 0;
    bool overlined = false;
    bool operator==(const Part&) const = default;
};

// Parts in weakly decreasing size; an overlined copy precedes plain copies.
using Overpartition = std::vector<Part>;

// How chi decides whether the largest part is "non-overlined":
//   A: it is non-overlined unless an overlined copy of that size exists;
//   B: it is non-overlined if a plain copy of that size exists.
enum class ChiConvention { A, B };
enum class OddSign { Plus, Minus };

struct RankConvention {
    ChiConvention chi = ChiConvention::A;
    OddSign odd = OddSign::Plus;
    bool operator==(const RankConvention&) const = default;
};

std::string to_string(RankConvention c);

std::vector<Overpartition> enumerate(long n);
long weight(const Overpartition& p);
long m2_rank(const Overpartition& p, RankConvention c = {});
std::string to_text(const Overpartition& p);

// Coefficients of q^0 .. q^{n-1} in the two-variable generating function.
std::vector<ZLaurentPoly> gen_fn_M2(long n);

// counts(m, n) for 0 <= n <= max_n.
class RankTable {
public:
    explicit RankTable(long max_n = 0);

    long max_n() const { return max_n_; }
    std::int64_t count(long m, long n) const;
    std::int64_t total(long n) const;
    void add(long m, long n, std::int64_t v);

    bool operator==(const RankTable&) const = default;
    // Row n stores ranks in [-reach(n), reach(n)].
    static long reach(long n) { return 2 * n + 2; }
    nlohmann::json to_json() const;

private:
    void check(long n) const;
    long max_n_;
    std::vector<std::vector<std::int64_t>> rows_;  // rows_[n][m + reach(n)]
};

// Largest table the 64-bit counters support.
constexpr long kMaxTableWeight = 200;

RankTable rank_counts(long max_n, RankConvention c = {});
RankTable rank_counts_fast(long max_n, RankConvention c = {});
std::int64_t residue_counts(const RankTable& table, long s, long l, long n);

struct CalibrationResult {
    long order = 0;
    std::vector<std::pair<RankConvention, bool>> trials;
    std::optional<RankConvention> unique;  // set iff exactly one trial passed
};

// Compares the enumerated table against the generating function for all
// weights <= max_n under each of the four conventions.
CalibrationResult calibrate(long max_n = 25);

}  // namespace rankforge

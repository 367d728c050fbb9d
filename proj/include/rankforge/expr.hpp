#pragma once

#include "rankforge/oracle.hpp"
#include "rankforge/series.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace rankforge {

// Expression trees are JSON objects with exactly one operator key plus
// optional modifiers "c" (scalar) and "q" (power of q) applied last.
//
// Leaves:
//   {"const": c}                         exact constant
//   {"poly": {"e": c, ...}}              exact Laurent polynomial
//   {"prod": "J2 / J1^2", "m": k}        product string, optionally at q^k
//   {"eta": "e100,5 / e100,10", "level": 100}
//   {"lambert": [A,B,C,D,E], "s": 1, "alt": true}
//   {"thetasum": [a2,a1,a0], "alt": b}   sum over Z of q^{(a2 n^2 + a1 n + a0)/2}
//   {"usum": {...}}                      one-sided sum, see eval_usum
//   {"appell": {"x": [s,j], "k": k, "z": [s,j]}}
//   {"change": {"x": [s,j], "k": k, "z0": [s,j], "z1": [s,j]}}
//   {"mock": "rho3"}
//   {"tail": "(1.7)-tail"}               prefactored Lambert tail, reading from context
//   {"terms": "A.4", "m": k}             named term list, optionally at q^k
//   {"rank": [s,t,d,l]}                  rank difference series from the oracle
//   {"ranklin": {"l": l, "k": k, "d": d, "terms": [[c, s], ...]}}
//   {"ref": "name"}
// Combinators:
//   {"add": [...]}, {"sub": [a, b]}, {"mul": [...]}, {"inv": x},
//   {"dissect": x, "m": m, "r": r}, {"dilate": x, "m": m}, {"flip": x}

// Catalog data: named definitions, tail checks, identities and term lists.
class Library {
public:
    Library(nlohmann::json catalog, nlohmann::json termlists, nlohmann::json level100);
    static const Library& builtin();

    const nlohmann::json& def(const std::string& name) const;
    bool has_def(const std::string& name) const { return catalog_.at("defs").contains(name); }
    const nlohmann::json& termlist(const std::string& name) const;
    // {"closed": node, "oracle": node, "order": n} per ambiguous tail.
    const nlohmann::json& tail_checks() const { return catalog_.at("tails"); }
    const nlohmann::json& identities() const { return catalog_.at("identities"); }
    const nlohmann::json& level100() const { return level100_; }

private:
    nlohmann::json catalog_;
    nlohmann::json termlists_;
    nlohmann::json level100_;
};

// Lazily built oracle table under a fixed convention, grown on demand.
class OracleCache {
public:
    explicit OracleCache(RankConvention c = {}) : conv_(c) {}
    std::shared_ptr<const RankTable> table(long max_weight);
    RankConvention convention() const { return conv_; }

private:
    RankConvention conv_;
    std::mutex mu_;
    std::shared_ptr<const RankTable> table_;
};

using TailReadings = std::map<std::string, int>;

// Shared state for a run: library, oracle and a memo of evaluated refs.
class Engine {
public:
    explicit Engine(const Library& lib = Library::builtin(), RankConvention c = {});

    const Library& library() const { return lib_; }
    OracleCache& oracle() { return oracle_; }

    // Evaluates to a series whose window covers every exponent below n.
    QSeries eval(const nlohmann::json& node, long n, const TailReadings& readings = {});
    QSeries eval_ref(const std::string& name, long n, const TailReadings& readings = {});

    // Factor in front of a Lambert tail; resolved against the oracle on first
    // use unless set explicitly.
    int tail_factor(const std::string& tail);
    struct TailTrial {
        int factor;
        bool pass;
        std::optional<long> mismatch;
    };
    std::vector<TailTrial> tail_trials(const std::string& tail);
    void set_tail_factor(const std::string& tail, int factor);
    std::map<std::string, int> resolved_tails() const;

private:
    friend class Evaluator;
    const Library& lib_;
    OracleCache oracle_;
    std::mutex memo_mu_;
    std::unordered_map<std::string, QSeries> memo_;
    mutable std::mutex tail_mu_;
    std::map<std::string, int> tails_;
};

// Series whose q^n coefficient is sum_j coef_j * N2(s_j, l, k n + d).
QSeries rank_linear(const RankTable& table, long l, long k, long d,
                    const std::vector<std::pair<Rational, long>>& terms, long n);

Rational json_rational(const nlohmann::json& v);

}  // namespace rankforge

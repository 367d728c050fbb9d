#include "rankforge/expr.hpp"

#include "embedded.hpp"
#include "rankforge/errors.hpp"
#include "rankforge/lambert.hpp"
#include "rankforge/mock.hpp"
#include "rankforge/products.hpp"

#include <algorithm>

namespace rankforge {

using nlohmann::json;

Rational json_rational(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw Error(ErrorCode::ParseError, "expected an integer or a fraction string, got " + v.dump());
}

Library::Library(json catalog, json termlists, json level100)
    : catalog_(std::move(catalog)), termlists_(std::move(termlists)), level100_(std::move(level100)) {
    for (const char* key : {"defs", "tails", "identities"})
        if (!catalog_.contains(key)) throw Error(ErrorCode::ParseError, std::string("catalog lacks '") + key + "'");
}

const Library& Library::builtin() {
    static const Library lib(json::parse(embedded::catalog_json()), json::parse(embedded::termlists_json()),
                             json::parse(embedded::level100_json()));
    return lib;
}

const json& Library::def(const std::string& name) const {
    const auto& defs = catalog_.at("defs");
    auto it = defs.find(name);
    if (it == defs.end()) throw Error(ErrorCode::UnknownTerm, "no definition named '" + name + "'");
    return *it;
}

const json& Library::termlist(const std::string& name) const {
    auto dot = name.find('.');
    if (dot != std::string::npos) {
        auto group = termlists_.find(name.substr(0, dot));
        if (group != termlists_.end()) {
            auto it = group->find(name.substr(dot + 1));
            if (it != group->end()) return *it;
        }
    }
    throw Error(ErrorCode::UnknownTerm, "no term list named '" + name + "'");
}

std::shared_ptr<const RankTable> OracleCache::table(long max_weight) {
    std::lock_guard lock(mu_);
    if (!table_ || table_->max_n() < max_weight)
        table_ = std::make_shared<const RankTable>(rank_counts_fast(std::max(max_weight, 100L), conv_));
    return table_;
}

QSeries rank_linear(const RankTable& table, long l, long k, long d,
                    const std::vector<std::pair<Rational, long>>& terms, long n) {
    if (n <= 0) return QSeries::zero_to(n);
    if (k * (n - 1) + d > table.max_n())
        throw Error(ErrorCode::InsufficientTable, "need weights up to " + std::to_string(k * (n - 1) + d));
    std::vector<Rational> v(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        for (const auto& [c, s] : terms)
            v[i] += c * Rational(static_cast<long>(residue_counts(table, ((s % l) + l) % l, l, k * i + d)));
    return QSeries::from_coeffs(0, std::move(v), n);
}

Engine::Engine(const Library& lib, RankConvention c) : lib_(lib), oracle_(c) {}

namespace {

std::string readings_key(const TailReadings& r) {
    std::string key;
    for (const auto& [t, f] : r) key += t + "=" + std::to_string(f) + ";";
    return key;
}

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// sum_{n>=0} sigma^n q^{A n^2 + B n + C} prod_j (1 - q^{D_j n + E_j})^{e_j}
// times, if "geom" = [a, b, c] is present, sum_{m=0}^{a n + b} q^{c m}.
QSeries eval_usum(const json& u, long n) {
    long A = u.at("A"), B = u.value("B", 0L), C = u.value("C", 0L);
    bool alt = u.value("alt", false);
    if (A <= 0) throw Error(ErrorCode::OutOfRange, "one-sided sum needs A > 0");
    std::vector<std::array<long, 3>> factors;
    for (const auto& f : u.value("factors", json::array())) factors.push_back({f.at(0), f.at(1), f.at(2)});
    for (const auto& f : factors)
        if (f[0] < 0 || f[1] < 1) throw Error(ErrorCode::OutOfRange, "factor exponents must be positive for n >= 0");
    std::optional<std::array<long, 3>> geom;
    if (u.contains("geom")) geom = std::array<long, 3>{u["geom"].at(0), u["geom"].at(1), u["geom"].at(2)};
    if (n <= 0) return QSeries::zero_to(n);
    std::vector<Integer> total(static_cast<std::size_t>(n));
    for (long k = 0;; ++k) {
        long lead = A * k * k + B * k + C;
        if (lead >= n) {
            if (2 * A * k + A + B > 0) break;  // increasing from here on
            continue;
        }
        if (lead < 0) throw Error(ErrorCode::OutOfRange, "one-sided sum has a negative exponent");
        std::vector<Integer> t(static_cast<std::size_t>(n - lead));
        t[0] = 1;
        auto times = [&](long e) {
            for (long i = static_cast<long>(t.size()) - 1; i >= e; --i) t[i] -= t[i - e];
        };
        auto over = [&](long e) {
            for (long i = e; i < static_cast<long>(t.size()); ++i) t[i] += t[i - e];
        };
        for (const auto& f : factors) {
            long e = f[0] * k + f[1];
            for (long r = 0; r < std::abs(f[2]); ++r) {
                if (f[2] > 0)
                    times(e);
                else
                    over(e);
            }
        }
        if (geom) {
            long top = (*geom)[0] * k + (*geom)[1];
            times((*geom)[2] * (top + 1));
            over((*geom)[2]);
        }
        bool neg = alt && (k % 2 == 1);
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (neg)
                total[lead + i] -= t[i];
            else
                total[lead + i] += t[i];
        }
    }
    std::vector<Rational> v(total.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(total[i]);
    return QSeries::from_coeffs(0, std::move(v), n);
}

QSeries eval_thetasum(const json& node, long n) {
    long a2 = node.at("thetasum").at(0), a1 = node.at("thetasum").at(1), a0 = node.at("thetasum").at(2);
    bool alt = node.value("alt", false);
    if (a2 <= 0) throw Error(ErrorCode::OutOfRange, "theta sum needs a positive quadratic coefficient");
    std::map<long, Integer> acc;
    auto add_term = [&](long k) {
        long num = a2 * k * k + a1 * k + a0;
        if (num % 2 != 0) throw Error(ErrorCode::NonIntegralExponent, "theta sum exponent is not integral");
        if (num / 2 < n) acc[num / 2] += (alt && (k % 2 != 0)) ? -1 : 1;
        return num / 2;
    };
    add_term(0);
    for (long k = 1;; ++k) {
        long ep = add_term(k), em = add_term(-k);
        if (ep >= n && em >= n && 2 * a2 * k > std::abs(a1)) break;
    }
    bool any = !acc.empty();
    long lo = any ? acc.begin()->first : 0;
    if (!any) return QSeries::zero_to(n);
    std::vector<Rational> v(static_cast<std::size_t>(n - lo));
    for (const auto& [e, c] : acc) v[e - lo] = Rational(c);
    return QSeries::from_coeffs(lo, std::move(v), n);
}

std::pair<int, long> monomial_arg(const json& v) { return {v.at(0).get<int>(), v.at(1).get<long>()}; }

}  // namespace

class Evaluator {
public:
    Evaluator(Engine& engine, const TailReadings& readings) : e_(engine), readings_(readings) {}

    QSeries eval(const json& node, long n) {
        long shift = node.value("q", 0L);
        QSeries core = eval_core(node, n - shift);
        if (node.contains("c")) core = core.scale(json_rational(node["c"]));
        if (shift != 0) core = core.shift(shift);
        return core.truncate(n);
    }

    QSeries ref(const std::string& name, long n) {
        std::string key = name + "|" + readings_key(readings_);
        {
            std::lock_guard lock(e_.memo_mu_);
            auto it = e_.memo_.find(key);
            if (it != e_.memo_.end() && it->second.hi() >= n) return it->second.truncate(n);
        }
        QSeries value = eval(e_.lib_.def(name), n);
        std::lock_guard lock(e_.memo_mu_);
        auto& slot = e_.memo_[key];
        if (slot.hi() < value.hi() || slot.is_exact_zero()) slot = value;
        return value;
    }

private:
    QSeries eval_core(const json& node, long n) {
        if (node.contains("const")) return QSeries::constant(json_rational(node["const"]));
        if (node.contains("poly")) {
            std::map<long, Rational> terms;
            for (const auto& [k, v] : node["poly"].items()) terms[std::stol(k)] += json_rational(v);
            QSeries out = QSeries::zero();
            for (const auto& [k, v] : terms) out = out + QSeries::monomial(v, k);
            return out;
        }
        if (node.contains("prod")) {
            auto spec = ProductSpec::parse(node["prod"].get<std::string>());
            if (node.contains("m")) spec = spec.subs(node["m"].get<long>());
            return expand_product(spec, n);
        }
        if (node.contains("eta")) {
            auto spec = EtaQuotientSpec::parse(node["eta"].get<std::string>(), node.at("level").get<long>());
            return expand_eta_quotient(spec, n);
        }
        if (node.contains("lambert")) {
            const auto& a = node["lambert"];
            LambertSpec spec{a.at(0), a.at(1), a.at(2), node.value("s", 1), a.at(3), a.at(4), node.value("alt", true)};
            return lambert_sum(spec, n);
        }
        if (node.contains("thetasum")) return eval_thetasum(node, n);
        if (node.contains("usum")) return eval_usum(node["usum"], n);
        if (node.contains("appell")) {
            const auto& a = node["appell"];
            auto [sx, jx] = monomial_arg(a.at("x"));
            auto [sz, jz] = monomial_arg(a.at("z"));
            return appell_m({sx, jx, a.at("k").get<long>(), sz, jz}, n);
        }
        if (node.contains("change")) {
            const auto& a = node["change"];
            auto [sx, jx] = monomial_arg(a.at("x"));
            auto [s0, j0] = monomial_arg(a.at("z0"));
            auto [s1, j1] = monomial_arg(a.at("z1"));
            return appell_change(sx, jx, a.at("k").get<long>(), s0, j0, s1, j1, n);
        }
        if (node.contains("mock")) return mock_series(parse_mock_id(node["mock"].get<std::string>()), n);
        if (node.contains("tail")) {
            auto id = node["tail"].get<std::string>();
            auto it = readings_.find(id);
            int factor = it != readings_.end() ? it->second : e_.tail_factor(id);
            return lambert_of_theorem(id, n, factor);
        }
        if (node.contains("terms")) return eval_terms(node, n);
        if (node.contains("rank")) {
            const auto& r = node["rank"];
            long s = r.at(0), t = r.at(1), d = r.at(2), l = r.at(3);
            std::vector<std::pair<Rational, long>> terms = {{1, s}, {1, s + 1}, {-1, t}, {-1, t + 1}};
            return rank_series(l, l / 2, d, terms, n);
        }
        if (node.contains("ranklin")) {
            const auto& r = node["ranklin"];
            std::vector<std::pair<Rational, long>> terms;
            for (const auto& t : r.at("terms")) terms.push_back({json_rational(t.at(0)), t.at(1).get<long>()});
            return rank_series(r.at("l"), r.at("k"), r.at("d"), terms, n);
        }
        if (node.contains("ref")) return ref(node["ref"].get<std::string>(), n);
        if (node.contains("add")) {
            QSeries out = QSeries::zero();
            for (const auto& a : node["add"]) out = out + eval(a, n);
            return out;
        }
        if (node.contains("sub")) {
            const auto& a = node["sub"];
            if (a.size() != 2) throw Error(ErrorCode::ParseError, "'sub' takes two operands");
            return eval(a[0], n) - eval(a[1], n);
        }
        if (node.contains("mul")) return eval_mul(node["mul"], n);
        if (node.contains("inv")) return eval_inv(node["inv"], n);
        if (node.contains("dissect")) {
            long m = node.at("m"), r = node.at("r");
            if (n <= 0) return QSeries::zero_to(n);
            return eval(node["dissect"], m * (n - 1) + r + 1).dissect(m, r);
        }
        if (node.contains("dilate")) {
            long m = node.at("m");
            if (m < 1) throw Error(ErrorCode::OutOfRange, "dilation needs m >= 1");
            return eval(node["dilate"], ceil_div(n, m)).subs(m);
        }
        if (node.contains("flip")) return eval(node["flip"], n).flip();
        throw Error(ErrorCode::ParseError, "unrecognized expression node " + node.dump().substr(0, 120));
    }

    QSeries rank_series(long l, long k, long d, const std::vector<std::pair<Rational, long>>& terms, long n) {
        long need = std::max(k * (n - 1) + d, 0L);
        auto table = e_.oracle_.table(need);
        return rank_linear(*table, l, k, d, terms, n);
    }

    // sum of c q^p num/den, each term optionally evaluated at q^m
    QSeries eval_terms(const json& node, long n) {
        const json& list = node["terms"].is_string() ? e_.lib_.termlist(node["terms"].get<std::string>()) : node["terms"];
        long m = node.value("m", 1L);
        QSeries out = QSeries::zero();
        for (const auto& t : list) {
            Rational c = json_rational(t.at(0));
            long p = t.at(1).get<long>() * m;
            std::string text = t.at(2).get<std::string>();
            if (t.size() > 3 && !t.at(3).get<std::string>().empty()) text += " / " + t.at(3).get<std::string>();
            auto spec = ProductSpec::parse(text);
            if (m != 1) spec = spec.subs(m);
            out = out + expand_product(spec, n - p).shift(p).scale(c);
        }
        return out;
    }

    QSeries eval_mul(const json& args, long n) {
        std::vector<const json*> nodes;
        for (const auto& a : args) nodes.push_back(&a);
        if (nodes.empty()) return QSeries::constant(1);
        std::vector<QSeries> parts;
        for (auto* a : nodes) parts.push_back(eval(*a, n));
        // Each factor must reach n minus the sum of the other factors' lows.
        for (int round = 0; round < 4; ++round) {
            for (const auto& p : parts)
                if (p.is_exact_zero()) return QSeries::zero();
            long total_lo = 0;
            for (const auto& p : parts) total_lo += p.lo();
            bool again = false;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                long need = n - (total_lo - parts[i].lo());
                if (parts[i].hi() < need) {
                    parts[i] = eval(*nodes[i], need);
                    again = true;
                }
            }
            if (!again) break;
        }
        QSeries out = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) out = out * parts[i];
        return out;
    }

    QSeries eval_inv(const json& child, long n) {
        QSeries a = eval(child, n);
        for (int round = 0; round < 4; ++round) {
            auto lead = a.leading_exponent();
            if (!lead) {
                if (a.exact()) throw Error(ErrorCode::LeadingZero, "inverse of the zero series");
                a = eval(child, a.hi() + n + 1);
                continue;
            }
            if (a.exact()) return invert(a, n);
            if (a.hi() >= n + 2 * *lead) return invert(a);
            a = eval(child, n + 2 * *lead);
        }
        return invert(a);
    }

    Engine& e_;
    const TailReadings& readings_;
};

QSeries Engine::eval(const json& node, long n, const TailReadings& readings) {
    Evaluator ev(*this, readings);
    return ev.eval(node, n);
}

QSeries Engine::eval_ref(const std::string& name, long n, const TailReadings& readings) {
    Evaluator ev(*this, readings);
    return ev.ref(name, n);
}

std::vector<Engine::TailTrial> Engine::tail_trials(const std::string& tail) {
    const auto& checks = lib_.tail_checks();
    auto it = checks.find(tail);
    if (it == checks.end()) throw Error(ErrorCode::UnknownTerm, "no oracle check for tail '" + tail + "'");
    long order = it->at("order");
    auto oracle_side = eval(it->at("oracle"), order);
    std::vector<TailTrial> out;
    for (int f : {1, 2}) {
        auto closed = eval(it->at("closed"), order, {{tail, f}});
        auto cmp = equal_to_order(closed, oracle_side, order);
        out.push_back({f, cmp.equal, cmp.exponent});
    }
    return out;
}

int Engine::tail_factor(const std::string& tail) {
    {
        std::lock_guard lock(tail_mu_);
        auto it = tails_.find(tail);
        if (it != tails_.end()) return it->second;
    }
    if (!lib_.tail_checks().contains(tail)) return 2;  // unambiguous tails ignore the factor
    auto trials = tail_trials(tail);
    int chosen = 0, passing = 0;
    for (const auto& t : trials)
        if (t.pass) {
            chosen = t.factor;
            ++passing;
        }
    if (passing != 1)
        throw Error(ErrorCode::Unsupported, "oracle does not single out a reading for " + tail);
    std::lock_guard lock(tail_mu_);
    tails_[tail] = chosen;
    return chosen;
}

void Engine::set_tail_factor(const std::string& tail, int factor) {
    std::lock_guard lock(tail_mu_);
    tails_[tail] = factor;
}

std::map<std::string, int> Engine::resolved_tails() const {
    std::lock_guard lock(tail_mu_);
    return tails_;
}

}  // namespace rankforge

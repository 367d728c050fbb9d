#include "rankforge/catalog.hpp"

#include "rankforge/errors.hpp"
#include "rankforge/modular.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace rankforge {

using nlohmann::json;

std::string to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::AmbiguousResolved: return "ambiguous-resolved";
    }
    return "fail";
}

Status parse_status(const std::string& s) {
    if (s == "pass") return Status::Pass;
    if (s == "fail") return Status::Fail;
    if (s == "ambiguous-resolved") return Status::AmbiguousResolved;
    throw Error(ErrorCode::ParseError, "unknown status '" + s + "'");
}

json Report::to_json() const {
    json j = {{"id", id}, {"status", rankforge::to_string(status)}, {"order", order}, {"millis", millis}};
    if (first_mismatch)
        j["first_mismatch"] = {{"exponent", first_mismatch->exponent},
                               {"lhs", to_fraction(first_mismatch->lhs)},
                               {"rhs", to_fraction(first_mismatch->rhs)}};
    else
        j["first_mismatch"] = nullptr;
    if (!note.empty()) j["note"] = note;
    if (!error.empty()) j["error"] = error;
    if (!tails.empty()) {
        json arr = json::array();
        for (const auto& t : tails) {
            json trials = json::array();
            for (const auto& tr : t.trials) {
                json x = {{"factor", tr.factor}, {"pass", tr.pass}};
                if (tr.mismatch) x["first_mismatch"] = *tr.mismatch;
                trials.push_back(x);
            }
            arr.push_back({{"tail", t.tail}, {"factor", t.factor}, {"trials", trials}});
        }
        j["tails"] = arr;
    }
    return j;
}

Report Report::from_json(const json& j) {
    Report r;
    r.id = j.at("id").get<std::string>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.order = j.at("order").get<long>();
    r.millis = j.at("millis").get<long>();
    const auto& m = j.at("first_mismatch");
    if (!m.is_null())
        r.first_mismatch = Mismatch{m.at("exponent").get<long>(), parse_rational(m.at("lhs").get<std::string>()),
                                    parse_rational(m.at("rhs").get<std::string>())};
    r.note = j.value("note", "");
    r.error = j.value("error", "");
    if (j.contains("tails"))
        for (const auto& t : j["tails"]) {
            TailResolution tr{t.at("tail").get<std::string>(), t.at("factor").get<int>(), {}};
            for (const auto& x : t.at("trials")) {
                Engine::TailTrial trial{x.at("factor").get<int>(), x.at("pass").get<bool>(), std::nullopt};
                if (x.contains("first_mismatch")) trial.mismatch = x["first_mismatch"].get<long>();
                tr.trials.push_back(trial);
            }
            r.tails.push_back(tr);
        }
    return r;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << (status == Status::Fail ? "FAIL " : "PASS ") << id << "  order " << order << "  " << millis << " ms";
    if (status == Status::AmbiguousResolved) os << "  (ambiguous-resolved)";
    if (first_mismatch)
        os << "\n    first mismatch at q^" << first_mismatch->exponent << ": lhs " << to_fraction(first_mismatch->lhs)
           << ", rhs " << to_fraction(first_mismatch->rhs);
    for (const auto& t : tails) {
        os << "\n    " << t.tail << ": reading with factor " << t.factor;
        for (const auto& tr : t.trials) {
            os << "; factor " << tr.factor << (tr.pass ? " matches" : " fails");
            if (tr.mismatch) os << " at q^" << *tr.mismatch;
        }
    }
    if (!error.empty()) os << "\n    error: " << error;
    if (!note.empty()) os << "\n    note: " << note;
    return os.str();
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"thm1.1", "thm1.2", "thm1.3", "thm1.4",
                                                   "lemmas", "modular", "mock"};
    return names;
}

Catalog::Catalog(Engine& engine) : eng_(engine) {
    for (const auto& e : eng_.library().identities()) by_id_[e.at("id").get<std::string>()] = &e;
}

bool Catalog::has(const std::string& id) const { return by_id_.count(id) > 0; }

const json& Catalog::entry(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw Error(ErrorCode::UnknownIdentity, "unknown identity '" + id + "'");
    return *it->second;
}

std::vector<std::string> Catalog::ids(const std::string& suite) const {
    if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw Error(ErrorCode::Unsupported, "unknown suite '" + suite + "'");
    std::vector<std::string> out;
    for (const auto& [id, e] : by_id_)
        if (suite == "all" || e->at("suite") == suite) out.push_back(id);
    return out;
}

std::vector<std::string> Catalog::resolve(const std::string& name) const {
    if (has(name)) return {name};
    std::vector<std::string> out;
    for (const auto& [id, e] : by_id_)
        if (id.rfind(name + "-", 0) == 0 || e->value("group", "") == name) out.push_back(id);
    if (out.empty()) throw Error(ErrorCode::UnknownIdentity, "unknown identity '" + name + "'");
    return out;
}

namespace {

std::vector<std::string> entry_tails(const json& e) {
    std::vector<std::string> out;
    if (e.contains("tails"))
        for (const auto& t : e["tails"]) out.push_back(t.get<std::string>());
    return out;
}

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
}

// One report summarizing several entries.
Report fold(const std::string& name, const std::vector<Report>& parts) {
    Report out;
    out.id = name;
    std::vector<std::string> failed;
    bool ambiguous = false;
    for (const auto& r : parts) {
        out.order = std::max(out.order, r.order);
        out.millis += r.millis;
        if (r.status == Status::Fail) {
            failed.push_back(r.id);
            if (!out.first_mismatch) out.first_mismatch = r.first_mismatch;
            if (out.error.empty()) out.error = r.error;
        }
        ambiguous = ambiguous || r.status == Status::AmbiguousResolved;
        for (const auto& t : r.tails)
            if (std::none_of(out.tails.begin(), out.tails.end(), [&](const auto& x) { return x.tail == t.tail; }))
                out.tails.push_back(t);
    }
    out.status = !failed.empty() ? Status::Fail : ambiguous ? Status::AmbiguousResolved : Status::Pass;
    std::ostringstream note;
    note << parts.size() << " entries";
    for (std::size_t i = 0; i < failed.size(); ++i) note << (i == 0 ? "; failing: " : " ") << failed[i];
    out.note = note.str();
    return out;
}

}  // namespace

Report Catalog::verify_entry(const std::string& id, std::optional<long> order) {
    const json& e = entry(id);
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    r.id = id;
    r.note = e.value("note", "");
    const std::string kind = e.at("kind");
    long n = e.at("order").get<long>();
    if (order) {
        if (*order < 0) throw Error(ErrorCode::InsufficientOrder, "negative order");
        if (e.value("oracle", false))
            n = std::min(n, *order);
        else
            n = *order;
    }
    try {
        if (kind == "level100") {
            const auto& spec = eng_.library().level100().at(e.at("which").get<std::string>());
            long bound = spec.at("bound");
            long margin = std::max(n - 1 - bound, 0L);
            auto rep = verify_level100(e.at("which"), margin, 0, eng_.library());
            r.order = rep.order();
            r.first_mismatch = rep.first_mismatch;
            if (!rep.robins_failures.empty()) {
                r.error = "Robins criterion fails for " + std::to_string(rep.robins_failures.size()) +
                          " term(s), first: " + rep.robins_failures.front();
            }
            r.status = rep.pass ? Status::Pass : Status::Fail;
        } else {
            r.order = n;
            for (const auto& t : entry_tails(e)) {
                TailResolution tr{t, eng_.tail_factor(t), eng_.tail_trials(t)};
                r.tails.push_back(tr);
            }
            if (kind == "equality") {
                auto lhs = eng_.eval(e.at("lhs"), n);
                auto rhs = eng_.eval(e.at("rhs"), n);
                auto cmp = equal_to_order(lhs, rhs, n);
                for (long k = cmp.equal ? n : *cmp.exponent; k < n; ++k)
                    if (k >= e.value("from", LONG_MIN) && lhs.coeff(k) != rhs.coeff(k)) {
                        r.first_mismatch = Mismatch{k, lhs.coeff(k), rhs.coeff(k)};
                        break;
                    }
            } else if (kind == "nonnegativity") {
                auto s = eng_.eval(e.at("series"), n);
                if (s.hi() < n) throw Error(ErrorCode::InsufficientOrder, "series known only below " +
                                                                              std::to_string(s.hi()));
                for (long k = e.value("from", 0L); k < n; ++k)
                    if (s.coeff(k) < 0) {
                        r.first_mismatch = Mismatch{k, s.coeff(k), Rational(0)};
                        break;
                    }
            } else {
                throw Error(ErrorCode::Unsupported, "unknown identity kind '" + kind + "'");
            }
            if (r.first_mismatch)
                r.status = Status::Fail;
            else
                r.status = r.tails.empty() ? Status::Pass : Status::AmbiguousResolved;
        }
    } catch (const Error& ex) {
        if (ex.code() == ErrorCode::UnknownIdentity) throw;
        r.status = Status::Fail;
        r.error = std::string(to_string(ex.code())) + ": " + ex.what();
    }
    r.millis = elapsed_ms(t0);
    return r;
}

Report Catalog::verify(const std::string& name, std::optional<long> order) {
    auto ids = resolve(name);
    if (ids.size() == 1 && ids.front() == name) return verify_entry(name, order);
    std::vector<Report> parts;
    for (const auto& id : ids) parts.push_back(verify_entry(id, order));
    return fold(name, parts);
}

void Catalog::warm_up(const std::vector<std::string>& ids) {
    bool oracle = false;
    std::set<std::string> tails;
    for (const auto& id : ids) {
        const auto& e = entry(id);
        oracle = oracle || e.value("oracle", false);
        for (const auto& t : entry_tails(e)) tails.insert(t);
    }
    if (oracle || !tails.empty()) eng_.oracle().table(100);
    for (const auto& t : tails) {
        try {
            eng_.tail_factor(t);
        } catch (const Error&) {
            // reported per entry
        }
    }
}

std::vector<Report> Catalog::verify_many(const std::vector<std::string>& ids, std::optional<long> order,
                                         unsigned parallel, const std::function<void(const Report&)>& on_done) {
    for (const auto& id : ids) entry(id);
    warm_up(ids);
    std::vector<Report> out(ids.size());
    std::atomic<std::size_t> next{0};
    std::mutex cb_mu;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < ids.size();) {
            out[i] = verify_entry(ids[i], order);
            if (on_done) {
                std::lock_guard lock(cb_mu);
                on_done(out[i]);
            }
        }
    };
    unsigned k = std::max(1u, std::min<unsigned>(parallel, static_cast<unsigned>(ids.size())));
    std::vector<std::thread> threads;
    for (unsigned t = 1; t < k; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    std::sort(out.begin(), out.end(), [](const Report& a, const Report& b) { return a.id < b.id; });
    return out;
}

namespace {

void check_rank_args(long s, long t, long d, long l) {
    if (!((s == 0 && t == 2 && l == 6) || (s == 0 && t == 4 && l == 10) || (s == 1 && t == 3 && l == 10)))
        throw Error(ErrorCode::Unsupported, "no closed form for this rank difference");
    if (d < 0 || d >= l / 2) throw Error(ErrorCode::OutOfRange, "residue outside [0, l/2)");
}

}  // namespace

QSeries closed_form_R(Engine& engine, long s, long t, long d, long l, long n) {
    check_rank_args(s, t, d, l);
    std::ostringstream name;
    name << "R(" << s << ',' << t << ',' << d << ',' << l << ')';
    return engine.eval_ref(name.str(), n);
}

QSeries empirical_R(const RankTable& table, long s, long t, long d, long l, long n) {
    if (l <= 0 || l % 2 != 0) throw Error(ErrorCode::OutOfRange, "modulus must be even and positive");
    std::vector<std::pair<Rational, long>> terms = {{1, s}, {1, s + 1}, {-1, t}, {-1, t + 1}};
    return rank_linear(table, l, l / 2, d, terms, n);
}

Report hm_representation_check(Catalog& catalog, const std::string& id, long n) {
    static const std::map<std::string, std::string> ids = {{"rho3", "eq5.2"}, {"phi10", "eq5.3"}, {"psi10", "eq5.4"}};
    auto it = ids.find(id);
    if (it == ids.end()) throw Error(ErrorCode::UnknownIdentity, "no Appell-Lerch representation for '" + id + "'");
    return catalog.verify_entry(it->second, n);
}

Report theorem_5x_check(Catalog& catalog, const std::string& which, long n) {
    static const std::map<std::string, std::vector<std::string>> groups = {
        {"1.5", {"thm1.5-(1.28)", "eq5.6", "eq5.6-shift", "eq5.7", "eq5.9", "eq5.9-change", "eq5.10"}},
        {"1.6-(1.29)", {"thm1.6-(1.29)", "eq5.11", "eq5.11-shift", "eq5.12", "eq5.13", "eq5.13-change", "eq5.14",
                        "eq5.14-change", "eq5.15", "eq5.16"}},
        {"1.6-(1.30)", {"thm1.6-(1.30)", "eq5.17", "eq5.17-shift", "eq5.18", "eq5.19", "eq5.19-change", "eq5.20",
                        "eq5.20-change", "eq5.21", "eq5.22"}},
        {"1.6-(1.31)", {"thm1.6-(1.31)", "eq5.23", "eq5.23-shift", "eq5.12", "eq5.13", "eq5.14", "eq5.15"}},
    };
    auto it = groups.find(which);
    if (it == groups.end()) throw Error(ErrorCode::UnknownIdentity, "unknown theorem '" + which + "'");
    std::vector<Report> parts;
    for (const auto& id : it->second) parts.push_back(catalog.verify_entry(id, n));
    return fold("thm" + which, parts);
}

}  // namespace rankforge

#include "rankforge/modular.hpp"

#include "rankforge/errors.hpp"

#include <atomic>
#include <chrono>
#include <future>
#include <thread>

namespace rankforge {

using nlohmann::json;

json RobinsResult::to_json() const {
    return {{"pass", pass}, {"first_sum", to_fraction(first_sum)}, {"second_sum", to_fraction(second_sum)}};
}

namespace {

bool in_2z(const Rational& x) { return is_integer(x) && mpz_even_p(x.get_num_mpz_t()); }

}  // namespace

RobinsResult robins_check(const EtaQuotientSpec& spec) {
    RobinsResult out;
    const Rational p0 = bernoulli_p2(Rational(0));
    for (const auto& t : spec.terms) {
        out.first_sum += Rational(t.delta) * bernoulli_p2(ratio(t.g, t.delta)) * t.r;
        out.second_sum += ratio(spec.level, t.delta) * p0 * t.r;
    }
    out.pass = in_2z(out.first_sum) && in_2z(out.second_sum);
    return out;
}

json Level100Report::to_json() const {
    json j = {{"which", which}, {"bound", bound}, {"margin", margin}, {"order", order()}, {"pass", pass},
              {"terms", terms}, {"robins_failures", robins_failures}, {"millis", millis}};
    j["first_mismatch"] = first_mismatch ? json{{"exponent", first_mismatch->exponent},
                                                {"lhs", to_fraction(first_mismatch->lhs)},
                                                {"rhs", to_fraction(first_mismatch->rhs)}}
                                         : json(nullptr);
    return j;
}

std::vector<std::pair<Rational, EtaQuotientSpec>> level100_terms(const std::string& which, bool rhs,
                                                                 const Library& lib) {
    const auto& data = lib.level100();
    if (!data.contains(which) || which == "prefactor")
        throw Error(ErrorCode::UnknownIdentity, "unknown level-100 identity '" + which + "'");
    auto prefactor = EtaQuotientSpec::parse(data.at("prefactor").get<std::string>(), 100);
    std::vector<std::pair<Rational, EtaQuotientSpec>> out;
    for (const auto& term : data.at(which).at(rhs ? "rhs" : "lhs")) {
        auto spec = EtaQuotientSpec::parse(term.at(1).get<std::string>(), 100);
        if (rhs) spec.append(prefactor);
        out.emplace_back(json_rational(term.at(0)), spec);
    }
    return out;
}

Level100Report verify_level100(const std::string& which, long margin, unsigned threads, const Library& lib) {
    auto t0 = std::chrono::steady_clock::now();
    if (margin < 0) throw Error(ErrorCode::OutOfRange, "negative margin");
    Level100Report rep;
    rep.which = which;
    rep.margin = margin;
    auto lhs_terms = level100_terms(which, false, lib);
    auto rhs_terms = level100_terms(which, true, lib);
    rep.bound = lib.level100().at(which).at("bound").get<long>();
    const long n = rep.order();

    struct Job {
        Rational c;
        const EtaQuotientSpec* spec;
        bool rhs;
    };
    std::vector<Job> jobs;
    for (const auto& [c, s] : lhs_terms) jobs.push_back({c, &s, false});
    for (const auto& [c, s] : rhs_terms) jobs.push_back({c, &s, true});
    rep.terms = jobs.size();
    for (const auto& j : jobs) {
        if (!robins_check(*j.spec).pass) {
            std::string text;
            for (const auto& t : j.spec->terms)
                text += (text.empty() ? "" : " ") + ("e" + std::to_string(t.delta) + "," + std::to_string(t.g) +
                                                     "^" + to_fraction(t.r));
            rep.robins_failures.push_back(text);
        }
    }

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<QSeries> parts(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
            parts[i] = expand_eta_quotient(*jobs[i].spec, n).scale(jobs[i].c);
    };
    std::vector<std::future<void>> fs;
    for (unsigned t = 1; t < std::min<std::size_t>(threads, jobs.size()); ++t)
        fs.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : fs) f.get();

    QSeries lhs = QSeries::zero_to(n), rhs = QSeries::zero_to(n);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        QSeries& side = jobs[i].rhs ? rhs : lhs;
        side = side + parts[i];
    }
    auto cmp = equal_to_order(lhs, rhs, n);
    if (!cmp.equal) rep.first_mismatch = Mismatch{*cmp.exponent, cmp.lhs, cmp.rhs};
    rep.pass = cmp.equal && rep.robins_failures.empty();
    rep.millis = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
    return rep;
}

}  // namespace rankforge

#include "rankforge/rankforge.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using namespace rankforge;
using nlohmann::json;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "text";
    std::string output;
    std::string chi;
    std::string odd_sign;
};

std::optional<RankConvention> convention_flags(const Common& c) {
    if (c.chi.empty() && c.odd_sign.empty()) return std::nullopt;
    RankConvention conv;
    if (!c.chi.empty()) conv.chi = c.chi == "B" ? ChiConvention::B : ChiConvention::A;
    if (!c.odd_sign.empty()) conv.odd = c.odd_sign == "minus" ? OddSign::Minus : OddSign::Plus;
    return conv;
}

void add_convention_flags(CLI::App* app, Common& c) {
    app->add_option("--chi", c.chi, "chi convention for the oracle")->transform(CLI::IsMember({"A", "B"}, CLI::ignore_case));
    app->add_option("--odd-sign", c.odd_sign, "sign of the odd-part count")
        ->transform(CLI::IsMember({"plus", "minus"}, CLI::ignore_case));
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

json calibration_json(const CalibrationResult& cal, const RankConvention& used, bool overridden) {
    json trials = json::array();
    for (const auto& [c, ok] : cal.trials) trials.push_back({{"convention", to_string(c)}, {"pass", ok}});
    return {{"order", cal.order},
            {"trials", trials},
            {"unique", cal.unique ? json(to_string(*cal.unique)) : json(nullptr)},
            {"convention", to_string(used)},
            {"overridden", overridden}};
}

struct VerifyArgs {
    Common common;
    std::string suite = "all";
    std::vector<std::string> ids;
    std::optional<long> order;
    unsigned parallel = std::max(1u, std::thread::hardware_concurrency());
    long calibration_order = 25;
};

int cmd_verify(const VerifyArgs& a) {
    std::optional<long> order = a.order;
    if (!order)
        if (const char* env = std::getenv("RANKFORGE_ORDER")) {
            try {
                order = std::stol(env);
            } catch (const std::exception&) {
                throw UsageError(std::string("RANKFORGE_ORDER is not an integer: ") + env);
            }
        }
    if (order && *order < 0) throw UsageError("order must be nonnegative");

    // Validate names before any computation.
    Engine probe_engine;
    Catalog probe(probe_engine);
    std::vector<std::string> ids;
    try {
        if (a.ids.empty())
            ids = probe.ids(a.suite);
        else
            for (const auto& name : a.ids)
                for (const auto& id : probe.resolve(name)) ids.push_back(id);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    Output out(a.common.output);
    auto& os = out.os();
    auto cal = calibrate(a.calibration_order);
    auto forced = convention_flags(a.common);
    if (!forced && !cal.unique) {
        json header = {{"calibration", calibration_json(cal, RankConvention{}, false)}};
        if (a.common.format == "json")
            os << json{{"header", header}, {"error", "calibration does not single out a convention"}}.dump() << '\n';
        else
            os << "calibration does not single out a convention\n";
        return 1;
    }
    RankConvention conv = forced ? *forced : *cal.unique;
    Engine engine(Library::builtin(), conv);
    Catalog catalog(engine);

    json header = {{"suite", a.ids.empty() ? a.suite : "selection"},
                   {"calibration", calibration_json(cal, conv, forced.has_value())},
                   {"order_override", order ? json(*order) : json(nullptr)},
                   {"parallel", a.parallel},
                   {"count", ids.size()}};
    if (a.common.format == "json") {
        os << json{{"header", header}}.dump() << std::endl;
    } else {
        os << "calibration: ";
        for (const auto& [c, ok] : cal.trials) os << to_string(c) << (ok ? " pass; " : " fail; ");
        os << "using " << to_string(conv) << (forced ? " (set by flags)" : "") << '\n';
        os << "running " << ids.size() << " identities";
        if (order) os << " at order " << *order;
        os << '\n';
    }
    auto reports = catalog.verify_many(ids, order, a.parallel, [&](const Report& r) {
        if (a.common.format == "json")
            os << json{{"report", r.to_json()}}.dump() << std::endl;
        else
            os << r.to_text() << std::endl;
    });
    std::size_t failed = 0;
    json sorted = json::array();
    for (const auto& r : reports) {
        failed += r.passed() ? 0 : 1;
        sorted.push_back(r.to_json());
    }
    json tails = json::object();
    for (const auto& [t, f] : engine.resolved_tails()) tails[t] = f;
    if (a.common.format == "json") {
        os << json{{"summary", {{"total", reports.size()}, {"passed", reports.size() - failed}, {"failed", failed},
                                {"tails", tails}, {"reports", sorted}}}}
                  .dump()
           << '\n';
    } else {
        os << "\nsummary (" << reports.size() - failed << " of " << reports.size() << " pass)\n";
        for (const auto& r : reports)
            os << "  " << (r.passed() ? "PASS " : "FAIL ") << r.id << " @" << r.order << '\n';
        for (const auto& [t, f] : engine.resolved_tails()) os << "  tail " << t << ": factor " << f << '\n';
    }
    return failed == 0 ? 0 : 1;
}

struct TableArgs {
    Common common;
    long modulus = 6;
    long max = 25;
};

int cmd_table(const TableArgs& a) {
    if (a.max < 0 || a.max > kMaxTableWeight) throw UsageError("--max must be in [0, 200]");
    auto conv = convention_flags(a.common).value_or(RankConvention{});
    auto table = rank_counts_fast(a.max, conv);
    Output out(a.common.output);
    auto& os = out.os();
    if (a.common.format == "csv") {
        os << "n,s,count\n";
        for (long n = 0; n <= a.max; ++n)
            for (long s = 0; s < a.modulus; ++s) os << n << ',' << s << ',' << residue_counts(table, s, a.modulus, n) << '\n';
    } else {
        json rows = json::array();
        for (long n = 0; n <= a.max; ++n)
            for (long s = 0; s < a.modulus; ++s)
                rows.push_back({{"n", n}, {"s", s}, {"count", residue_counts(table, s, a.modulus, n)}});
        os << json{{"modulus", a.modulus}, {"max", a.max}, {"convention", to_string(conv)}, {"rows", rows}}.dump(1)
           << '\n';
    }
    return 0;
}

struct SeriesArgs {
    Common common;
    std::string name;
    long order = 20;
    long mod = 0;
    long res = 0;
};

void print_series(std::ostream& os, const std::string& format, const std::string& name, const QSeries& s, long order) {
    if (format == "json") {
        os << json{{"name", name}, {"order", order}, {"series", s.to_json()}}.dump() << '\n';
        return;
    }
    os << name << " = " << s.to_text() << '\n';
    os << "coefficients from q^" << s.lo() << ": ";
    for (long e = s.lo(); e < order; ++e) {
        const Rational x = s.coeff(e);
        os << (e == s.lo() ? "" : ",") << (is_integer(x) ? x.get_num().get_str() : to_fraction(x));
    }
    os << '\n';
}

int cmd_series(const SeriesArgs& a, bool dissect) {
    Engine engine(Library::builtin(), convention_flags(a.common).value_or(RankConvention{}));
    if (!engine.library().has_def(a.name)) throw UsageError("unknown series name '" + a.name + "'");
    if (a.order < 0) throw UsageError("--order must be nonnegative");
    QSeries s;
    std::string label = a.name;
    if (dissect) {
        if (a.mod <= 0 || a.res < 0 || a.res >= a.mod) throw UsageError("need --mod > 0 and 0 <= --res < --mod");
        json node = {{"dissect", {{"ref", a.name}}}, {"m", a.mod}, {"r", a.res}};
        s = engine.eval(node, a.order).truncate(a.order);
        label += " [" + std::to_string(a.mod) + "n+" + std::to_string(a.res) + "]";
    } else {
        s = engine.eval_ref(a.name, a.order).truncate(a.order);
    }
    Output out(a.common.output);
    print_series(out.os(), a.common.format, label, s, a.order);
    return 0;
}

struct OracleArgs {
    Common common;
    long max_n = 5;
};

int cmd_oracle(const OracleArgs& a) {
    if (a.max_n < 0 || a.max_n > 20) throw UsageError("--max-n must be in [0, 20] for a full listing");
    auto conv = convention_flags(a.common).value_or(RankConvention{});
    Output out(a.common.output);
    auto& os = out.os();
    json all = json::array();
    if (a.common.format == "csv") os << "n,overpartition,rank\n";
    for (long n = 0; n <= a.max_n; ++n)
        for (const auto& p : enumerate(n)) {
            long r = m2_rank(p, conv);
            if (a.common.format == "json")
                all.push_back({{"n", n}, {"overpartition", to_text(p)}, {"rank", r}});
            else if (a.common.format == "csv")
                os << n << ",\"" << to_text(p) << "\"," << r << '\n';
            else
                os << n << '\t' << (p.empty() ? "()" : to_text(p)) << '\t' << r << '\n';
        }
    if (a.common.format == "json") os << json{{"convention", to_string(conv)}, {"overpartitions", all}}.dump(1) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overpartition M2-rank differences: oracle, series and identity verification"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "verify catalog identities");
    verify->add_option("--suite", va.suite, "all|thm1.1|thm1.2|thm1.3|thm1.4|lemmas|modular|mock");
    verify->add_option("--id", va.ids, "identity id or group (repeatable)");
    verify->add_option("--order", va.order, "order override");
    verify->add_option("--parallel", va.parallel, "worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--calibration-order", va.calibration_order, "largest weight in the calibration step")
        ->check(CLI::Range(1, 25));
    verify->add_option("--format", va.common.format)->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--output", va.common.output, "write to a file instead of stdout");
    add_convention_flags(verify, va.common);

    TableArgs ta;
    ta.common.format = "csv";
    auto* table = app.add_subcommand("table", "rank counts by residue class");
    table->add_option("--modulus", ta.modulus)->check(CLI::IsMember({6, 10}));
    table->add_option("--max", ta.max, "largest weight");
    table->add_option("--format", ta.common.format)->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--output", ta.common.output);
    add_convention_flags(table, ta.common);

    SeriesArgs sa;
    auto* series = app.add_subcommand("series", "expand a named series");
    series->add_option("--name", sa.name)->required();
    series->add_option("--order", sa.order);
    series->add_option("--format", sa.common.format)->check(CLI::IsMember({"text", "json"}));
    series->add_option("--output", sa.common.output);
    add_convention_flags(series, sa.common);

    SeriesArgs da;
    auto* dissect = app.add_subcommand("dissect", "one residue class of a named series");
    dissect->add_option("--name", da.name)->required();
    dissect->add_option("--mod", da.mod)->required();
    dissect->add_option("--res", da.res)->required();
    dissect->add_option("--order", da.order);
    dissect->add_option("--format", da.common.format)->check(CLI::IsMember({"text", "json"}));
    dissect->add_option("--output", da.common.output);
    add_convention_flags(dissect, da.common);

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "list overpartitions with their ranks");
    oracle->add_option("--max-n", oa.max_n);
    oracle->add_option("--format", oa.common.format)->check(CLI::IsMember({"text", "csv", "json"}));
    oracle->add_option("--output", oa.common.output);
    add_convention_flags(oracle, oa.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*verify) return cmd_verify(va);
        if (*table) return cmd_table(ta);
        if (*series) return cmd_series(sa, false);
        if (*dissect) return cmd_series(da, true);
        if (*oracle) return cmd_oracle(oa);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return e.code() == ErrorCode::UnknownTerm || e.code() == ErrorCode::UnknownIdentity ? kUsage : 1;
    }
    return kUsage;
}

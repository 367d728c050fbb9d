#include "catch_amalgamated.hpp"
#include "naive.hpp"
#include "rankforge/rankforge.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace rankforge;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* cli = std::getenv("RANKFORGE_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string("\"") + cli + "\" " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<json> lines(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

}  // namespace

TEST_CASE("verify emits header, one report per identity, then a summary") {
    auto r = run("verify --suite lemmas --format json --order 300");
    CHECK(r.code == 0);
    auto js = lines(r.out);
    REQUIRE(js.size() >= 3);
    REQUIRE(js.front().contains("header"));
    const auto& header = js.front()["header"];
    CHECK(header["calibration"].is_object());
    long count = header["count"].get<long>();
    CHECK(static_cast<long>(js.size()) == count + 2);
    std::vector<std::string> ids;
    for (std::size_t i = 1; i + 1 < js.size(); ++i) {
        REQUIRE(js[i].contains("report"));
        auto rep = Report::from_json(js[i]["report"]);
        CHECK(rep.passed());
        CHECK(rep.to_json() == js[i]["report"]);
        ids.push_back(rep.id);
    }
    REQUIRE(js.back().contains("summary"));
    const auto& sum = js.back()["summary"];
    CHECK(sum["total"] == count);
    CHECK(sum["passed"] == count);
    CHECK(sum["failed"] == 0);
    std::vector<std::string> sorted;
    for (const auto& rep : sum["reports"]) sorted.push_back(rep["id"]);
    CHECK(std::is_sorted(sorted.begin(), sorted.end()));
    std::sort(ids.begin(), ids.end());
    CHECK(ids == sorted);
}

TEST_CASE("failing selection reports the first mismatch") {
    auto r = run("verify --id 'thm1.1-(1.3)-oracle' --chi B --odd-sign minus --format json");
    CHECK(r.code == 1);
    auto js = lines(r.out);
    REQUIRE(js.size() == 3);
    auto rep = Report::from_json(js[1]["report"]);
    CHECK(rep.status == Status::Fail);
    REQUIRE(rep.first_mismatch.has_value());
    CHECK(js[1]["report"]["first_mismatch"]["lhs"].is_string());
}

TEST_CASE("table output in both formats matches the library") {
    auto table = rank_counts_fast(30);
    auto j = run("table --modulus 10 --max 30 --format json");
    CHECK(j.code == 0);
    auto doc = json::parse(j.out);
    CHECK(doc["modulus"] == 10);
    CHECK(doc["rows"].size() == 31 * 10);
    for (const auto& row : doc["rows"])
        CHECK(row["count"].get<std::int64_t>() == residue_counts(table, row["s"], 10, row["n"]));

    auto c = run("table --modulus 6 --max 30 --format csv");
    CHECK(c.code == 0);
    std::istringstream in(c.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,s,count");
    long rows = 0;
    auto pbar = naive::overpartition_counts(30);
    std::vector<std::int64_t> totals(31, 0);
    while (std::getline(in, line)) {
        long n, s;
        long long count;
        REQUIRE(std::sscanf(line.c_str(), "%ld,%ld,%lld", &n, &s, &count) == 3);
        CHECK(count == residue_counts(table, s, 6, n));
        totals[n] += count;
        ++rows;
    }
    CHECK(rows == 31 * 6);
    for (long n = 0; n <= 30; ++n) CHECK(totals[n] == pbar[n]);
}

TEST_CASE("series json round trips through QSeries") {
    auto r = run("series --name overpartition-gf --order 40 --format json");
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    auto s = QSeries::from_json(doc["series"]);
    auto pbar = naive::overpartition_counts(39);
    for (long n = 0; n < 40; ++n) CHECK(s.coeff(n) == pbar[n]);
    CHECK(s.to_json() == doc["series"]);
}

TEST_CASE("dissection matches the library") {
    auto r = run("dissect --name lemma2.1-sum --mod 3 --res 2 --order 30 --format json");
    CHECK(r.code == 0);
    auto s = QSeries::from_json(json::parse(r.out)["series"]);
    Engine engine;
    auto ref = engine.eval_ref("lemma2.1-sum", 3 * 30 + 3).dissect(3, 2);
    CHECK(equal_to_order(s, ref, 30).equal);
}

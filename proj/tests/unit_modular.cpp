#include "catch_amalgamated.hpp"
#include "rankforge/rankforge.hpp"

using namespace rankforge;

TEST_CASE("Robins criterion examples") {
    auto single = robins_check(EtaQuotientSpec::parse("e100,5", 100));
    CHECK_FALSE(single.pass);
    CHECK(single.first_sum == Rational(143, 12));

    auto q = robins_check(EtaQuotientSpec::parse(
        "e100,5 e100,20 e100,30^2 e100,45 / e100,10 e100,15 e100,35 e100,40 e100,50", 100));
    CHECK(q.pass);
    CHECK(q.first_sum == 6);
    CHECK(q.second_sum == 0);

    auto empty = robins_check(EtaQuotientSpec::parse("", 100));
    CHECK(empty.pass);
    CHECK(empty.first_sum == 0);
    CHECK(empty.second_sum == 0);
    CHECK(empty.to_json()["first_sum"] == "0/1");
}

TEST_CASE("every level-100 term satisfies the criterion") {
    for (const auto& which : {"lemma3.5", "lemma3.6"})
        for (bool rhs : {false, true})
            for (const auto& [c, spec] : level100_terms(which, rhs)) {
                CHECK(robins_check(spec).pass);
                CHECK(is_integer(total_prefix(spec)));
            }
    CHECK(level100_terms("lemma3.5", true).size() == 26);
    CHECK(level100_terms("lemma3.6", true).size() == 36);
}

TEST_CASE("level-100 identities at the constant term and to the bound") {
    auto r0 = verify_level100("lemma3.5", 0);
    CHECK(r0.pass);
    CHECK(r0.order() == 601);
    auto r = verify_level100("lemma3.6", 60, 4);
    CHECK(r.pass);
    CHECK(r.order() == 701);
    CHECK(r.robins_failures.empty());
    CHECK_THROWS_AS(verify_level100("lemma9.9", 0), Error);
    CHECK_THROWS_AS(verify_level100("lemma3.5", -1), Error);
}

TEST_CASE("a single altered term is caught") {
    auto data = Library::builtin().level100();
    auto& term = data["lemma3.5"]["rhs"][3];
    term[0] = term[0].is_number() ? nlohmann::json(term[0].get<long>() + 1) : nlohmann::json("1");
    Library lib(nlohmann::json::parse(R"({"defs": {}, "tails": {}, "identities": []})"), nlohmann::json::object(),
                data);
    auto r = verify_level100("lemma3.5", 0, 0, lib);
    CHECK_FALSE(r.pass);
    CHECK(r.first_mismatch.has_value());
}

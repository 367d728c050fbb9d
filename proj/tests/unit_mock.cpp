#include "catch_amalgamated.hpp"
#include "naive.hpp"
#include "rankforge/rankforge.hpp"

using namespace rankforge;

namespace {

// Defining sums evaluated with plain truncated polynomial arithmetic.
// sign = -1 evaluates the sum at -q directly.
naive::Poly defining_sum(const std::string& id, long n, int sign) {
    auto sub = [&](long e) { return (sign < 0 && e % 2 != 0) ? -1 : 1; };
    naive::Poly total(n, 0);
    for (long k = 0;; ++k) {
        long lead = id == "rho3" ? 2 * k * (k + 1) : id == "phi10" ? k * (k + 1) / 2 : (k + 1) * (k + 2) / 2;
        if (lead >= n) break;
        naive::Poly term(n, 0);
        term[lead] = sub(lead);
        if (id == "rho3") {
            for (long i = 0; i <= k; ++i) {  // (q;q^2)_{k+1} / (q^3;q^6)_{k+1}
                naive::Poly f(n, 0), g(n, 0);
                long a = 2 * i + 1, b = 6 * i + 3;
                f[0] = 1;
                if (a < n) f[a] = -sub(a);
                for (long e = 0; e < n; e += b) g[e] = sub(e);
                term = naive::mul(naive::mul(term, f), g);
            }
        } else {
            for (long i = 0; i <= k; ++i) {  // 1 / (q;q^2)_{k+1}
                long a = 2 * i + 1;
                naive::Poly g(n, 0);
                for (long e = 0; e < n; e += a) g[e] = sub(e);
                term = naive::mul(term, g);
            }
        }
        for (long e = 0; e < n; ++e) total[e] += term[e];
    }
    return total;
}

}  // namespace

TEST_CASE("first coefficients") {
    auto rho = mock_series(MockThetaId::Rho3, 8);
    std::vector<long> rho_want = {1, -1, 0, 1, 0, -1, 1, -1};
    for (long k = 0; k < 8; ++k) CHECK(rho.coeff(k) == rho_want[k]);
    auto phi = mock_series(MockThetaId::Phi10, 7);
    std::vector<long> phi_want = {1, 2, 2, 3, 4, 4, 6};
    for (long k = 0; k < 7; ++k) CHECK(phi.coeff(k) == phi_want[k]);
    auto psi = mock_series(MockThetaId::Psi10, 7);
    std::vector<long> psi_want = {0, 1, 1, 2, 2, 2, 4};
    for (long k = 0; k < 7; ++k) CHECK(psi.coeff(k) == psi_want[k]);
}

TEST_CASE("defining sums agree with an independent evaluation, including at -q") {
    for (auto id : {MockThetaId::Rho3, MockThetaId::Phi10, MockThetaId::Psi10}) {
        auto s = mock_series(id, 120);
        auto ref = defining_sum(to_string(id), 120, 1);
        auto ref_flip = defining_sum(to_string(id), 120, -1);
        auto f = s.flip();
        for (long k = 0; k < 120; ++k) {
            CHECK(s.coeff(k) == ref[k]);
            CHECK(is_integer(s.coeff(k)));
            CHECK(f.coeff(k) == ref_flip[k]);
        }
    }
    CHECK(parse_mock_id("phi10") == MockThetaId::Phi10);
    CHECK_THROWS_AS(parse_mock_id("chi3"), Error);
}

TEST_CASE("Appell-Lerch representations and the theorems") {
    Engine engine;
    Catalog cat(engine);
    for (const auto& id : {"rho3", "phi10", "psi10"}) CHECK(hm_representation_check(cat, id, 150).passed());
    for (const auto& which : {"1.5", "1.6-(1.29)", "1.6-(1.30)", "1.6-(1.31)"}) {
        auto r = theorem_5x_check(cat, which, 150);
        CHECK(r.passed());
        CHECK(r.order == 150);
    }
    CHECK(theorem_5x_check(cat, "1.6-(1.31)", 150).status == Status::AmbiguousResolved);
    CHECK_THROWS_AS(hm_representation_check(cat, "chi3", 10), Error);
}

TEST_CASE("z-change with equal arguments vanishes") {
    auto d = appell_change(-1, 1, 6, 1, 1, 1, 1, 50);
    CHECK(equal_to_order(d, QSeries::zero(), 50).equal);
}

#pragma once

#include "rankforge/series.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace rankforge {

// sum over n in Z of (-1)^{n [alt]} q^{A n^2 + B n + C} / (1 + s q^{D n + E})
struct LambertSpec {
    long A = 1, B = 0, C = 0;
    int s = 1;
    long D = 0, E = 0;
    bool alt = true;

    nlohmann::json to_json() const;
    static LambertSpec from_json(const nlohmann::json& j);
};

QSeries lambert_sum(const LambertSpec& spec, long n);

// m(x, q^k, z) with monomial arguments x = sx q^jx, z = sz q^jz.
struct AppellParams {
    int sx = 1;
    long jx = 0;
    long k = 1;
    int sz = 1;
    long jz = 0;
};

// The bilateral sum of m(x, q^k, z) before division by j(z; q^k).
QSeries appell_sum(const AppellParams& p, long n);
QSeries appell_m(const AppellParams& p, long n);

// Closed form of m(x, q^k, z1) - m(x, q^k, z0) for monomials x, z0, z1:
// z0 J_k^3 j(z1/z0; q^k) j(x z0 z1; q^k) / (j(z0) j(z1) j(x z0) j(x z1)).
QSeries appell_change(int sx, long jx, long k, int s0, long j0, int s1, long j1, long n);

// The prefactored Lambert tails of the closed forms. `factor` is 1 or 2 and
// selects the reading of the coefficient in front of the sum.
struct TheoremTail {
    std::string id;
    std::string description;
};
const std::vector<TheoremTail>& theorem_tails();
QSeries lambert_of_theorem(const std::string& id, long n, int factor = 2);

}  // namespace rankforge

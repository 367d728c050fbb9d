#pragma once

#include "rankforge/catalog.hpp"
#include "rankforge/products.hpp"

#include <string>
#include <vector>

namespace rankforge {

struct RobinsResult {
    bool pass = true;
    Rational first_sum;   // sum delta * P(g/delta) * r
    Rational second_sum;  // sum (N/delta) * P(0) * r
    nlohmann::json to_json() const;
};

RobinsResult robins_check(const EtaQuotientSpec& spec);

struct Level100Report {
    std::string which;
    long bound = 0;
    long margin = 0;
    bool pass = true;
    std::optional<Mismatch> first_mismatch;
    std::size_t terms = 0;
    std::vector<std::string> robins_failures;  // term texts
    long millis = 0;

    long order() const { return bound + margin + 1; }
    nlohmann::json to_json() const;
};

// Checks both sides of the level-100 identity for 0 <= n <= bound + margin
// and runs the Robins criterion on every term.
Level100Report verify_level100(const std::string& which, long margin, unsigned threads = 0,
                               const Library& lib = Library::builtin());

// The eta quotient of one term as it appears in the identity (right-hand
// terms include the common prefactor).
std::vector<std::pair<Rational, EtaQuotientSpec>> level100_terms(const std::string& which, bool rhs,
                                                                 const Library& lib = Library::builtin());

}  // namespace rankforge

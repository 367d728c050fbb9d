#include "rankforge/mock.hpp"

#include "rankforge/errors.hpp"

namespace rankforge {

MockThetaId parse_mock_id(const std::string& name) {
    if (name == "rho3") return MockThetaId::Rho3;
    if (name == "phi10") return MockThetaId::Phi10;
    if (name == "psi10") return MockThetaId::Psi10;
    throw Error(ErrorCode::UnknownTerm, "no mock theta function named '" + name + "'");
}

std::string to_string(MockThetaId id) {
    switch (id) {
        case MockThetaId::Rho3: return "rho3";
        case MockThetaId::Phi10: return "phi10";
        case MockThetaId::Psi10: return "psi10";
    }
    return "?";
}

namespace {

// In-place multiplication by (1 - q^k) and division by (1 - q^k) on [0, n).
void times_one_minus(std::vector<Integer>& a, long k) {
    for (long i = static_cast<long>(a.size()) - 1; i >= k; --i) a[i] -= a[i - k];
}

void over_one_minus(std::vector<Integer>& a, long k) {
    for (long i = k; i < static_cast<long>(a.size()); ++i) a[i] += a[i - k];
}

}  // namespace

QSeries mock_series(MockThetaId id, long n) {
    if (n <= 0) return QSeries::zero_to(n);
    std::vector<Integer> total(static_cast<std::size_t>(n));
    // ratio holds the Pochhammer quotient of the current summand.
    std::vector<Integer> ratio(static_cast<std::size_t>(n));
    ratio[0] = 1;
    for (long k = 0;; ++k) {
        long lead = 0;
        switch (id) {
            case MockThetaId::Rho3:
                // q^{2k(k+1)} (q;q^2)_{k+1} / (q^3;q^6)_{k+1}
                lead = 2 * k * (k + 1);
                if (lead >= n) break;
                times_one_minus(ratio, 2 * k + 1);
                over_one_minus(ratio, 6 * k + 3);
                break;
            case MockThetaId::Phi10:
                // q^{(k+1)k/2} / (q;q^2)_{k+1}
                lead = k * (k + 1) / 2;
                if (lead >= n) break;
                over_one_minus(ratio, 2 * k + 1);
                break;
            case MockThetaId::Psi10:
                // q^{(k+2)(k+1)/2} / (q;q^2)_{k+1}
                lead = (k + 1) * (k + 2) / 2;
                if (lead >= n) break;
                over_one_minus(ratio, 2 * k + 1);
                break;
        }
        if (lead >= n) break;
        for (long i = lead; i < n; ++i) total[i] += ratio[i - lead];
    }
    std::vector<Rational> v(total.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(total[i]);
    return QSeries::from_coeffs(0, std::move(v), n);
}

}  // namespace rankforge

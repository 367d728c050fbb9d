#pragma once

#include "rankforge/series.hpp"

#include <string>
#include <vector>

namespace rankforge {

enum class MockThetaId { Rho3, Phi10, Psi10 };

MockThetaId parse_mock_id(const std::string& name);
std::string to_string(MockThetaId id);

// Truncated evaluation of the defining q-hypergeometric sum.
QSeries mock_series(MockThetaId id, long n);

}  // namespace rankforge

#pragma once

#include <vector>

#include "sehgalkit/rational.hpp"

namespace sehgalkit {

enum class Rel { le, ge, eq };

struct LpRow {
  std::vector<Rational> a;
  Rel rel = Rel::ge;
  Rational b;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  Rational value;            // objective at optimum (when status == optimal)
  std::vector<Rational> x;   // an optimal point (when status == optimal)
};

// Exact rational simplex (dense tableau, two phases, Bland's rule so it always
// terminates). All variables are constrained x >= 0; shift beforehand for
// other lower bounds. Throws arithmetic_overflow if 128-bit rationals overflow.
LpOutcome lp_minimize(int nvars, const std::vector<LpRow>& rows, const std::vector<Rational>& objective);
LpOutcome lp_maximize(int nvars, const std::vector<LpRow>& rows, const std::vector<Rational>& objective);
bool lp_feasible(int nvars, const std::vector<LpRow>& rows);

}  // namespace sehgalkit

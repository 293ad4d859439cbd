#include "sehgalkit/lp.hpp"

#include <algorithm>
#include <stdexcept>

namespace sehgalkit {

namespace {

// Dense tableau: one row per constraint plus an objective row. Columns are the
// structural variables, then one slack/surplus per inequality, then artificials,
// then the right-hand side.
struct Tableau {
  int n = 0;             // structural variables
  int total = 0;         // structural + slack + artificial
  int first_artificial = 0;
  std::vector<std::vector<Rational>> rows;  // m x (total+1), last col = rhs
  std::vector<int> basis;                   // basic column per row

  Rational& rhs(int i) { return rows[static_cast<size_t>(i)].back(); }
};

Tableau build_tableau(int nvars, const std::vector<LpRow>& input) {
  int slacks = 0;
  for (const auto& r : input)
    if (r.rel != Rel::eq) ++slacks;
  // Every row gets an artificial; simple and uniformly safe for Phase 1.
  int m = static_cast<int>(input.size());
  Tableau t;
  t.n = nvars;
  t.first_artificial = nvars + slacks;
  t.total = nvars + slacks + m;
  t.rows.assign(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(t.total) + 1));
  t.basis.assign(static_cast<size_t>(m), -1);
  int slack_at = nvars;
  for (int i = 0; i < m; ++i) {
    const LpRow& r = input[static_cast<size_t>(i)];
    if (static_cast<int>(r.a.size()) != nvars) throw std::invalid_argument("LP row width mismatch");
    bool flip = r.b < Rational(0);
    for (int j = 0; j < nvars; ++j) t.rows[i][static_cast<size_t>(j)] = flip ? -r.a[static_cast<size_t>(j)] : r.a[static_cast<size_t>(j)];
    t.rhs(i) = flip ? -r.b : r.b;
    Rel rel = r.rel;
    if (flip && rel != Rel::eq) rel = rel == Rel::le ? Rel::ge : Rel::le;
    if (rel != Rel::eq) {
      t.rows[i][static_cast<size_t>(slack_at)] = rel == Rel::le ? Rational(1) : Rational(-1);
      ++slack_at;
    }
    t.rows[i][static_cast<size_t>(t.first_artificial + i)] = Rational(1);
    t.basis[static_cast<size_t>(i)] = t.first_artificial + i;
  }
  return t;
}

void pivot(Tableau& t, int row, int col) {
  auto& r = t.rows[static_cast<size_t>(row)];
  Rational p = r[static_cast<size_t>(col)];
  for (auto& v : r) v /= p;
  for (int i = 0; i < static_cast<int>(t.rows.size()); ++i) {
    if (i == row) continue;
    Rational f = t.rows[static_cast<size_t>(i)][static_cast<size_t>(col)];
    if (f.is_zero()) continue;
    auto& ri = t.rows[static_cast<size_t>(i)];
    for (size_t j = 0; j < ri.size(); ++j) ri[j] -= f * r[j];
  }
  t.basis[static_cast<size_t>(row)] = col;
}

// Minimize obj (length total) over the tableau via Bland's rule.
// allow(col) filters which columns may enter. Returns false if unbounded.
bool run_simplex(Tableau& t, std::vector<Rational>& z, const std::vector<char>& allow) {
  const int m = static_cast<int>(t.rows.size());
  while (true) {
    // Bland: entering column = least index with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < t.total && enter < 0; ++j)
      if (allow[static_cast<size_t>(j)] && z[static_cast<size_t>(j)].is_negative()) enter = j;
    if (enter < 0) return true;  // optimal
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      const Rational& aij = t.rows[static_cast<size_t>(i)][static_cast<size_t>(enter)];
      if (!(aij > Rational(0))) continue;
      Rational ratio = t.rhs(i) / aij;
      if (leave < 0 || ratio < best ||
          (ratio == best && t.basis[static_cast<size_t>(i)] < t.basis[static_cast<size_t>(leave)]))
        leave = i, best = ratio;
    }
    if (leave < 0) return false;  // unbounded in the entering direction
    pivot(t, leave, enter);
    // Update reduced-cost row just like a tableau row.
    Rational f = z[static_cast<size_t>(enter)];
    const auto& r = t.rows[static_cast<size_t>(leave)];
    for (int j = 0; j <= t.total; ++j) {
      Rational& zj = j == t.total ? z.back() : z[static_cast<size_t>(j)];
      zj -= f * r[static_cast<size_t>(j)];
    }
  }
}

std::vector<Rational> reduced_costs(const Tableau& t, const std::vector<Rational>& cost) {
  // z_j = c_j - sum over rows of c_basis(i) * a_ij, plus objective constant in back.
  std::vector<Rational> z(static_cast<size_t>(t.total) + 1);
  for (int j = 0; j < t.total; ++j) z[static_cast<size_t>(j)] = cost[static_cast<size_t>(j)];
  for (size_t i = 0; i < t.rows.size(); ++i) {
    Rational cb = cost[static_cast<size_t>(t.basis[i])];
    if (cb.is_zero()) continue;
    for (int j = 0; j <= t.total; ++j) z[static_cast<size_t>(j)] -= cb * t.rows[i][static_cast<size_t>(j)];
  }
  return z;
}

}  // namespace

LpOutcome lp_minimize(int nvars, const std::vector<LpRow>& rows, const std::vector<Rational>& objective) {
  if (static_cast<int>(objective.size()) != nvars) throw std::invalid_argument("objective width mismatch");
  Tableau t = build_tableau(nvars, rows);
  const int m = static_cast<int>(t.rows.size());

  // Phase 1: minimize the sum of artificials.
  std::vector<Rational> phase1_cost(static_cast<size_t>(t.total), Rational(0));
  for (int j = t.first_artificial; j < t.total; ++j) phase1_cost[static_cast<size_t>(j)] = Rational(1);
  std::vector<Rational> z = reduced_costs(t, phase1_cost);
  std::vector<char> allow(static_cast<size_t>(t.total), 1);
  if (!run_simplex(t, z, allow)) throw std::logic_error("phase 1 cannot be unbounded");
  // Objective value is -z.back(); infeasible iff positive.
  if (!(-z.back() == Rational(0))) return {LpStatus::infeasible, Rational(0), {}};
  // Drive surviving artificials out of the basis (or recognize redundant rows).
  for (int i = 0; i < m; ++i) {
    if (t.basis[static_cast<size_t>(i)] < t.first_artificial) continue;
    int col = -1;
    for (int j = 0; j < t.first_artificial && col < 0; ++j)
      if (!t.rows[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) col = j;
    if (col >= 0) pivot(t, i, col);
    // else: the row is all-zero over real columns (redundant); its artificial
    // stays basic at value 0 and is barred from re-entering below.
  }

  // Phase 2: original objective, artificials barred.
  std::vector<Rational> cost(static_cast<size_t>(t.total), Rational(0));
  for (int j = 0; j < nvars; ++j) cost[static_cast<size_t>(j)] = objective[static_cast<size_t>(j)];
  z = reduced_costs(t, cost);
  for (int j = t.first_artificial; j < t.total; ++j) allow[static_cast<size_t>(j)] = 0;
  if (!run_simplex(t, z, allow)) return {LpStatus::unbounded, Rational(0), {}};

  LpOutcome out;
  out.status = LpStatus::optimal;
  out.x.assign(static_cast<size_t>(nvars), Rational(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[static_cast<size_t>(i)] < nvars) out.x[static_cast<size_t>(t.basis[i])] = t.rhs(i);
  out.value = -z.back();
  return out;
}

LpOutcome lp_maximize(int nvars, const std::vector<LpRow>& rows, const std::vector<Rational>& objective) {
  std::vector<Rational> neg(objective.size());
  for (size_t i = 0; i < objective.size(); ++i) neg[i] = -objective[i];
  LpOutcome out = lp_minimize(nvars, rows, neg);
  if (out.status == LpStatus::optimal) out.value = -out.value;
  return out;
}

bool lp_feasible(int nvars, const std::vector<LpRow>& rows) {
  std::vector<Rational> zero(static_cast<size_t>(nvars), Rational(0));
  return lp_minimize(nvars, rows, zero).status != LpStatus::infeasible;
}

}  // namespace sehgalkit

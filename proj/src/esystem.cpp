#include "sehgalkit/esystem.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "sehgalkit/lp.hpp"

namespace sehgalkit {

i64 ClassFunction::value_at(const Element& a) const { return dense[static_cast<size_t>(pack(domain, a))]; }

i64 ClassFunction::min_value() const { return *std::min_element(dense.begin(), dense.end()); }

i64 ClassFunction::class_sum() const { return std::accumulate(class_values.begin(), class_values.end(), i64{0}); }

std::vector<i64> EConstraintSystem::upper_bounds() const {
  i64 total = std::accumulate(lower_bounds.begin(), lower_bounds.end(), i64{0});
  std::vector<i64> ub(lower_bounds.size());
  for (size_t i = 0; i < lower_bounds.size(); ++i) ub[i] = 1 - (total - lower_bounds[i]);
  return ub;
}

namespace {

i64 intersection_size(const std::vector<i64>& a, const std::vector<i64>& b) {
  i64 n = 0;
  auto it = a.begin();
  for (i64 x : b) {
    it = std::lower_bound(it, a.end(), x);
    if (it == a.end()) break;
    if (*it == x) ++n;
  }
  return n;
}

void normalize_rows(std::vector<std::vector<i64>>& rows) {
  std::set<std::vector<i64>> seen;
  std::vector<std::vector<i64>> out;
  for (auto& r : rows) {
    i64 g = 0;
    for (i64 c : r) g = std::gcd(g, c);
    if (g == 0) continue;  // all-zero row
    for (i64& c : r) c /= g;
    // A row with every coefficient equal (and positive) is implied by the sum
    // row, so it carries no information.
    if (std::all_of(r.begin(), r.end(), [&](i64 c) { return c == r.front(); })) continue;
    if (seen.insert(r).second) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  rows = std::move(out);
}

}  // namespace

std::vector<ESolution> package_solutions(const EConstraintSystem& sys, std::vector<std::vector<i64>> tuples) {
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  std::vector<ESolution> out;
  for (auto& t : tuples) {
    ESolution s;
    s.tuple = t;
    s.canonical_tuple = canonical_cyclic(t);
    s.function.domain = sys.A;
    s.function.acting_label = sys.acting_label;
    s.function.dense.assign(static_cast<size_t>(sys.A.order), 0);
    for (size_t j = 0; j < sys.vars.size(); ++j) {
      s.function.class_reps.push_back(sys.vars[j].rep);
      s.function.class_values.push_back(t[j]);
      for (i64 m : sys.vars[j].members) s.function.dense[static_cast<size_t>(m)] = t[j];
    }
    out.push_back(std::move(s));
  }
  return out;
}


EConstraintSystem build_system(const AutGroup& Gact, const AutGroup& H, const AbelianGroup& A,
                               const std::vector<i64>& local_cls, WeightMode mode,
                               const std::vector<CocyclicCoset>* cosets) {
  if (Gact.ambient.moduli != A.moduli || H.ambient.moduli != A.moduli)
    throw std::invalid_argument("acting groups must act on A");
  if (local_cls.empty()) throw std::invalid_argument("empty local class");
  // Validate that the input is a genuine local class of the ambient group.
  std::vector<i64> recomputed = local_class(Gact, unpack(A, local_cls.front()));
  if (recomputed != local_cls) throw std::invalid_argument("input is not a local class of the ambient group");

  EConstraintSystem sys;
  sys.A = A;
  sys.acting_label = H.label;
  sys.mode = mode;
  sys.local_cls = local_cls;
  sys.vars = orbits(H, local_cls);
  size_t covered = 0;
  for (const auto& v : sys.vars) covered += v.members.size();
  if (covered != local_cls.size()) throw std::invalid_argument("inner group does not preserve the local class");
  for (const auto& v : sys.vars) sys.inner_orders.push_back(v.stabilizer_order);

  // Cone rows: one per minimal cocyclic coset C, coefficient of X either
  // |C_H(a_X)| * |X cap C| (inner) or |X cap C| (count).
  std::vector<CocyclicCoset> own;
  if (!cosets) {
    own = minimal_cocyclic_cosets(A);
    cosets = &own;
  }
  for (const auto& c : *cosets) {
    std::vector<i64> row(sys.vars.size(), 0);
    for (size_t j = 0; j < sys.vars.size(); ++j) {
      i64 n = intersection_size(sys.vars[j].members, c.members);
      row[j] = mode == WeightMode::inner ? n * sys.inner_orders[j] : n;
    }
    sys.cone_rows.push_back(std::move(row));
  }
  normalize_rows(sys.cone_rows);

  // Lower bounds, with pi the primes at which the primary part is cyclic.
  std::vector<i64> pi;
  for (const auto& comp : A.components)
    if (comp.exponents.size() == 1) pi.push_back(comp.prime);
  Rational h = h_invariant(A);
  std::map<i64, i64> part_stab;  // packed pi-part -> |C_H(part)|
  for (const auto& v : sys.vars) {
    Element ap = part(A, v.rep, pi);
    i64 key = pack(A, ap);
    auto it = part_stab.find(key);
    if (it == part_stab.end()) it = part_stab.emplace(key, orbit_of(H, ap).stabilizer_order).first;
    if (it->second % v.stabilizer_order != 0)
      throw std::logic_error("centralizer of a is not inside centralizer of its part");
    i64 index = it->second / v.stabilizer_order;
    sys.lower_bounds.push_back(static_cast<i64>((-(h * Rational(index))).ceil()));
  }

  if (A.cyclic()) {
    sys.provably_empty = true;
    sys.empty_note = "domain is cyclic: no class function can be negative anywhere";
  }
  return sys;
}

void apply_pruning(EConstraintSystem& sys, const AutGroup& H,
                   const std::vector<CocyclicCoset>* cosets) {
  const AbelianGroup& A = sys.A;
  // Coset-inside-one-class rule: if a cocyclic coset meets the local class in a
  // nonempty subset of a single H-class X, then f(a_X) >= 0 for solutions.
  std::vector<CocyclicCoset> own;
  if (!cosets) {
    own = minimal_cocyclic_cosets(A);
    cosets = &own;
  }
  for (const auto& c : *cosets) {
    std::vector<i64> hit;
    std::set_intersection(c.members.begin(), c.members.end(), sys.local_cls.begin(), sys.local_cls.end(),
                          std::back_inserter(hit));
    if (hit.empty()) continue;
    for (size_t j = 0; j < sys.vars.size(); ++j)
      if (std::includes(sys.vars[j].members.begin(), sys.vars[j].members.end(), hit.begin(), hit.end())) {
        sys.lower_bounds[j] = std::max<i64>(sys.lower_bounds[j], 0);
        break;
      }
  }

  // Cyclic-complement rules, applied for each prime q where they are in scope.
  for (const auto& comp : A.components) {
    i64 q = comp.prime;
    std::vector<i64> qprime;
    for (i64 p : primes_of(A))
      if (p != q) qprime.push_back(p);
    if (!restricted_group(A, qprime).cyclic()) continue;  // hypothesis unmet: skip
    bool q_square = comp.exponents == std::vector<int>{1, 1};

    // Index rules: negativity needs [C_H(a_{q'}):C_H(a)] >= q, and (for A_q = C_q^2)
    // an index not divisible by q.
    for (size_t j = 0; j < sys.vars.size(); ++j) {
      Element aq = part(A, sys.vars[j].rep, qprime);
      i64 stab_part = orbit_of(H, aq).stabilizer_order;
      i64 index = stab_part / sys.vars[j].stabilizer_order;
      if (index < q || (q_square && index % q == 0))
        sys.lower_bounds[j] = std::max<i64>(sys.lower_bounds[j], 0);
    }

    // Scalar rule: if every scalar automorphism of the C_q^2 component (identity
    // elsewhere) lies in H, the system has no solution at all.
    if (q_square) {
      bool all_in = true;
      for (i64 lambda = 2; lambda < q && all_in; ++lambda) {
        std::vector<std::vector<i64>> blocks;
        for (const auto& c2 : A.components) {
          if (c2.prime == q)
            blocks.push_back({lambda, 0, 0, lambda});
          else if (c2.exponents.size() == 1)
            blocks.push_back({1});
          else
            blocks.push_back({1, 0, 0, 1});
        }
        all_in = H.contains(make_aut(A, blocks));
      }
      if (all_in) {
        sys.provably_empty = true;
        sys.empty_note = "scalar automorphisms of the rank-2 component lie in the acting group";
      }
    }
  }
}

namespace {

struct Box {
  std::vector<i64> lb, ub;
};

// Exact-LP per-variable projection of {sum = 1, cone rows >= 0, x >= lb}.
// Returns false (leaving the box untouched) if the relaxation is infeasible;
// silently keeps the input box if the rationals overflow.
bool tighten_box(const EConstraintSystem& sys, Box& box, bool& infeasible) {
  infeasible = false;
  const int n = sys.nvars();
  try {
    std::vector<LpRow> rows;
    Rational lbsum(0);
    for (i64 b : box.lb) lbsum += Rational(b);
    LpRow sum_row;
    sum_row.a.assign(static_cast<size_t>(n), Rational(1));
    sum_row.rel = Rel::eq;
    sum_row.b = Rational(1) - lbsum;
    rows.push_back(sum_row);
    for (const auto& r : sys.cone_rows) {
      LpRow row;
      Rational shift(0);
      for (int j = 0; j < n; ++j) {
        row.a.push_back(Rational(r[static_cast<size_t>(j)]));
        shift += Rational(r[static_cast<size_t>(j)]) * Rational(box.lb[static_cast<size_t>(j)]);
      }
      row.rel = Rel::ge;
      row.b = -shift;
      rows.push_back(row);
    }
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> obj(static_cast<size_t>(n), Rational(0));
      obj[static_cast<size_t>(i)] = Rational(1);
      LpOutcome mn = lp_minimize(n, rows, obj);
      if (mn.status == LpStatus::infeasible) {
        infeasible = true;
        return true;
      }
      LpOutcome mx = lp_maximize(n, rows, obj);
      if (mn.status == LpStatus::optimal)
        box.lb[static_cast<size_t>(i)] += static_cast<i64>(mn.value.ceil());
      if (mx.status == LpStatus::optimal) {
        i64 cap = box.lb[static_cast<size_t>(i)] - static_cast<i64>(mn.value.ceil()) +
                  static_cast<i64>(mx.value.floor());
        box.ub[static_cast<size_t>(i)] = std::min(box.ub[static_cast<size_t>(i)], cap);
      }
    }
    return true;
  } catch (const arithmetic_overflow&) {
    return false;
  }
}

bool accept_tuple(const EConstraintSystem& sys, const std::vector<i64>& x) {
  if (std::accumulate(x.begin(), x.end(), i64{0}) != 1) return false;
  for (const auto& r : sys.cone_rows) {
    i64 v = 0;
    for (size_t j = 0; j < x.size(); ++j) v += r[j] * x[j];
    if (v < 0) return false;
  }
  for (size_t j = 0; j < x.size(); ++j)
    if (x[j] < sys.lower_bounds[j]) return false;
  if (sys.require_negative && std::all_of(x.begin(), x.end(), [](i64 v) { return v >= 0; })) return false;
  return true;
}

}  // namespace

std::vector<ESolution> enumerate_solutions(const EConstraintSystem& sys) {
  if (sys.provably_empty) return {};
  const int n = sys.nvars();
  Box box{sys.lower_bounds, sys.upper_bounds()};
  bool lp_infeasible = false;
  tighten_box(sys, box, lp_infeasible);
  if (lp_infeasible) return {};
  for (int i = 0; i < n; ++i)
    if (box.lb[static_cast<size_t>(i)] > box.ub[static_cast<size_t>(i)]) return {};

  // Static branch order: tightest box first.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return box.ub[static_cast<size_t>(a)] - box.lb[static_cast<size_t>(a)] <
           box.ub[static_cast<size_t>(b)] - box.lb[static_cast<size_t>(b)];
  });

  // Suffix bounds over the branch order for partial-sum feasibility.
  std::vector<i64> suf_lb(static_cast<size_t>(n) + 1, 0), suf_ub(static_cast<size_t>(n) + 1, 0);
  for (int d = n - 1; d >= 0; --d) {
    suf_lb[static_cast<size_t>(d)] = suf_lb[static_cast<size_t>(d) + 1] + box.lb[static_cast<size_t>(order[static_cast<size_t>(d)])];
    suf_ub[static_cast<size_t>(d)] = suf_ub[static_cast<size_t>(d) + 1] + box.ub[static_cast<size_t>(order[static_cast<size_t>(d)])];
  }

  // Per cone row: positions (in branch order) sorted by descending coefficient,
  // for the greedy sum-coupled upper bound.
  const int m = static_cast<int>(sys.cone_rows.size());
  std::vector<std::vector<std::pair<i64, int>>> desc(static_cast<size_t>(m));
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) desc[static_cast<size_t>(r)].push_back({sys.cone_rows[static_cast<size_t>(r)][static_cast<size_t>(j)], j});
    std::stable_sort(desc[static_cast<size_t>(r)].begin(), desc[static_cast<size_t>(r)].end(),
                     [](auto& a, auto& b) { return a.first > b.first; });
  }

  std::vector<i64> x(static_cast<size_t>(n), 0);
  std::vector<char> assigned(static_cast<size_t>(n), 0);
  std::vector<i64> row_partial(static_cast<size_t>(m), 0);
  // row_lb_rem[r] = sum of coef * lb over unassigned variables.
  std::vector<i64> row_lb_rem(static_cast<size_t>(m), 0);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < n; ++j)
      row_lb_rem[static_cast<size_t>(r)] += sys.cone_rows[static_cast<size_t>(r)][static_cast<size_t>(j)] * box.lb[static_cast<size_t>(j)];

  std::vector<std::vector<i64>> found;

  auto row_bound_ok = [&](i64 t_rem, int depth) {
    // For each row: max of partial + sum over unassigned of coef*x within the
    // box and with the unassigned values summing to t_rem.
    for (int r = 0; r < m; ++r) {
      i64 budget = t_rem - (suf_lb[static_cast<size_t>(depth)]);
      i64 best = row_partial[static_cast<size_t>(r)] + row_lb_rem[static_cast<size_t>(r)];
      if (best >= 0) continue;
      for (const auto& [coef, j] : desc[static_cast<size_t>(r)]) {
        if (budget <= 0 || best >= 0) break;
        if (assigned[static_cast<size_t>(j)]) continue;
        i64 take = std::min(budget, box.ub[static_cast<size_t>(j)] - box.lb[static_cast<size_t>(j)]);
        best += coef * take;
        budget -= take;
      }
      if (best < 0) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int depth, i64 t_rem) -> void {
    if (depth == n) {
      if (t_rem == 0) found.push_back(x);
      return;
    }
    int j = order[static_cast<size_t>(depth)];
    if (depth == n - 1) {
      // Last variable is forced by the sum.
      i64 v = t_rem;
      if (v < box.lb[static_cast<size_t>(j)] || v > box.ub[static_cast<size_t>(j)]) return;
      bool ok = true;
      for (int r = 0; r < m && ok; ++r)
        ok = row_partial[static_cast<size_t>(r)] + sys.cone_rows[static_cast<size_t>(r)][static_cast<size_t>(j)] * v >= 0;
      if (!ok) return;
      x[static_cast<size_t>(j)] = v;
      found.push_back(x);
      return;
    }
    for (i64 v = box.lb[static_cast<size_t>(j)]; v <= box.ub[static_cast<size_t>(j)]; ++v) {
      i64 rem = t_rem - v;
      if (rem < suf_lb[static_cast<size_t>(depth) + 1] || rem > suf_ub[static_cast<size_t>(depth) + 1]) continue;
      x[static_cast<size_t>(j)] = v;
      assigned[static_cast<size_t>(j)] = 1;
      for (int r = 0; r < m; ++r) {
        i64 c = sys.cone_rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
        row_partial[static_cast<size_t>(r)] += c * v;
        row_lb_rem[static_cast<size_t>(r)] -= c * box.lb[static_cast<size_t>(j)];
      }
      if (row_bound_ok(rem, depth + 1)) self(self, depth + 1, rem);
      for (int r = 0; r < m; ++r) {
        i64 c = sys.cone_rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
        row_partial[static_cast<size_t>(r)] -= c * v;
        row_lb_rem[static_cast<size_t>(r)] += c * box.lb[static_cast<size_t>(j)];
      }
      assigned[static_cast<size_t>(j)] = 0;
    }
  };
  dfs(dfs, 0, 1);

  // Safety net plus the negativity post-filter.
  std::vector<std::vector<i64>> kept;
  for (auto& t : found)
    if (accept_tuple(sys, t)) kept.push_back(t);
  return package_solutions(sys, std::move(kept));
}

std::vector<ESolution> brute_force_solutions(const EConstraintSystem& sys) {
  if (sys.provably_empty) return {};
  const int n = sys.nvars();
  std::vector<i64> lb = sys.lower_bounds, ub = sys.upper_bounds();
  i64 volume = 1;
  for (int i = 0; i < n; ++i) {
    if (ub[static_cast<size_t>(i)] < lb[static_cast<size_t>(i)]) return {};
    i64 w = ub[static_cast<size_t>(i)] - lb[static_cast<size_t>(i)] + 1;
    if (volume > 10000000 / w) throw scope_error("brute-force box exceeds 10^7 points");
    volume *= w;
  }
  std::vector<std::vector<i64>> kept;
  std::vector<i64> x = lb;
  while (true) {
    if (accept_tuple(sys, x)) kept.push_back(x);
    int i = 0;
    while (i < n && ++x[static_cast<size_t>(i)] > ub[static_cast<size_t>(i)]) {
      x[static_cast<size_t>(i)] = lb[static_cast<size_t>(i)];
      ++i;
    }
    if (i == n) break;
  }
  return package_solutions(sys, std::move(kept));
}

std::vector<i64> canonical_cyclic(const std::vector<i64>& tuple) {
  std::vector<i64> best = tuple;
  std::vector<i64> cur = tuple;
  for (size_t k = 1; k < tuple.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

std::string system_text(const EConstraintSystem& sys) {
  std::ostringstream out;
  out << "vars: " << sys.nvars() << " classes on " << group_name(sys.A);
  if (!sys.acting_label.empty()) out << " under " << sys.acting_label;
  out << " [" << (sys.mode == WeightMode::inner ? "centralizer-weighted" : "count-weighted") << "]\n";
  for (int j = 0; j < sys.nvars(); ++j) {
    out << "  x" << j + 1 << ": rep (";
    const Element& r = sys.vars[static_cast<size_t>(j)].rep;
    for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << ") size " << sys.vars[static_cast<size_t>(j)].members.size() << "\n";
  }
  auto term = [](std::ostringstream& o, i64 c, int j, bool& first) {
    if (c == 0) return;
    if (!first) o << " + ";
    first = false;
    if (c != 1) o << c;
    o << "x" << j + 1;
  };
  {
    bool first = true;
    std::ostringstream row;
    for (int j = 0; j < sys.nvars(); ++j) term(row, 1, j, first);
    out << row.str() << " = 1\n";
  }
  for (const auto& r : sys.cone_rows) {
    bool first = true;
    std::ostringstream row;
    for (int j = 0; j < sys.nvars(); ++j) term(row, r[static_cast<size_t>(j)], j, first);
    out << row.str() << " >= 0\n";
  }
  for (int j = 0; j < sys.nvars(); ++j) out << "x" << j + 1 << " >= " << sys.lower_bounds[static_cast<size_t>(j)] << "\n";
  if (sys.require_negative) out << "min x < 0\n";
  if (sys.provably_empty) out << "provably empty: " << sys.empty_note << "\n";
  return out.str();
}

}  // namespace sehgalkit
